"""Grading two answers end to end, with the full per-word audit.

Run: python demos/04_grading.py
"""

from arascore.scoring import grade
from arascore.stemming import StemMode

scenarios = [
    # (student answer, model answer) — one model word missing
    ("يقر بعيني ان سهيل بدا", "يقر بعيني أن سهيل بدا ليا"),
    # one extra student word and one model word missing
    ("دائما الإيمان يوجب العمل", "الإيمان لا يوجب العمل"),
]

for student, model in scenarios:
    print("model:  ", model)
    print("student:", student)
    result = grade(student, model, StemMode.HEAVY)
    print(f"word weight = {result.word_weight:g}, mark sum = {result.mark_sum:g}, "
          f"classification = {result.classification.value}")
    for m in result.matches:
        matched = m.student_stem.content if m.student_stem else "—"
        print(f"  {m.correct_stem.content:>6} <- {matched:>6}  "
              f"sim={m.similarity:.2f} tier={m.tier.value:<10} credit={m.credit:g}")
    print()

# an answer equal to the model answer always earns the full mark
result = grade(scenarios[0][1], scenarios[0][1], StemMode.HEAVY)
print("self-grade of the model answer:", result.mark_sum, result.classification.value)
