"""Light vs heavy stemming on the same sentences.

Run: python demos/02_stemming.py
"""

from arascore.stemming import StemMode, stem_answer, stem_stages

sentences = [
    "يقر بعيني أن سهيل بدا ليا",
    "الإيمان لا يوجب العمل",
    "دائما الإيمان يوجب العمل",
]

for sentence in sentences:
    print(sentence)
    for mode in (StemMode.LIGHT, StemMode.HEAVY):
        stems = [s.content for s in stem_answer(sentence, mode)]
        print(f"  {mode.value:>5}: {stems}")
    print()

# a single word traced through every heavy stage
print("stage trace for الإيمان (heavy):")
for stage, value in stem_stages("الإيمان", StemMode.HEAVY):
    print(f"  {stage:>9}: {value}")

print("\nstage trace for بعيني (heavy):")
for stage, value in stem_stages("بعيني", StemMode.HEAVY):
    print(f"  {stage:>9}: {value}")
