"""Character cleanup and tokenization, step by step.

Run: python demos/01_cleanup_and_tokens.py
"""

from arascore.textnorm import (
    normalize_letters,
    remove_stop_words,
    strip_diacritics,
    strip_foreign_letters,
    strip_numbers,
    tokenize,
)
from arascore.stemming import DEFAULT_STOP_WORDS

messy = "درس 12 طالب drills يَومَ الأحد!"
print("raw input:      ", messy)

no_numbers = strip_numbers(messy)
print("numbers removed:", no_numbers)

no_marks = strip_diacritics(no_numbers)
print("marks removed:  ", no_marks)

arabic_only = strip_foreign_letters(no_marks)
print("foreign removed:", arabic_only)

tokens = tokenize(arabic_only)
print("tokens:         ", [t.content for t in tokens])

# stop words are matched after letter normalization, so أن and ان both hit
sentence = tokenize("يقر بعيني أن سهيل بدا ليا")
kept = remove_stop_words(sentence, DEFAULT_STOP_WORDS)
print("\nwith stop words:   ", [t.content for t in sentence])
print("without stop words:", [t.content for t in kept])

print("\nletter normalization:", "الإيمان", "->", normalize_letters("الإيمان"))
print("letter normalization:", "مدرسة", "->", normalize_letters("مدرسة"))
