"""Shared inputs: the two golden grading scenarios used across the suite."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# scenario 1: one model word missing from the student answer
EX1_MODEL = "يقر بعيني أن سهيل بدا ليا"
EX1_STUDENT = "يقر بعيني ان سهيل بدا"
EX1_MODEL_STEMS_HEAVY = ["يقر", "عين", "هيل", "بدا", "ليا"]
EX1_STUDENT_STEMS_HEAVY = ["يقر", "عين", "هيل", "بدا"]

# scenario 2: one extra student word, one model word missing
EX2_MODEL = "الإيمان لا يوجب العمل"
EX2_STUDENT = "دائما الإيمان يوجب العمل"
EX2_MODEL_STEMS_HEAVY = ["ايم", "لا", "يوجب", "عمل"]
EX2_STUDENT_STEMS_HEAVY = ["دائما", "ايم", "يوجب", "عمل"]

ARABIC_LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"
