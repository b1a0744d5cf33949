"""Edit distance and the normalized similarity score.

Run: python demos/03_similarity.py
"""

from arascore.similarity import edit_distance, similarity

pairs = [
    ("يقر", "يقر"),      # identical
    ("كتب", "كتاب"),     # one insertion
    ("كتابه", "كتابت"),  # one substitution in a longer word
    ("دائما", "لا"),     # nearly nothing in common
    ("", "كتب"),         # empty vs word
]

print(f"{'s1':>8} {'s2':>8} {'D':>3} {'S':>6}")
for a, b in pairs:
    print(f"{a:>8} {b:>8} {edit_distance(a, b):>3} {similarity(a, b):>6.3f}")

# similarity of 1 - 1/5 = 0.80 is exactly the half-credit line:
# a five-letter word may differ in one letter and still earn half weight
print()
print("half-credit boundary:", similarity("كتابه", "كتابت"))
