"""Levenshtein edit distance and normalized similarity between stems."""

from __future__ import annotations


def edit_distance(s1: str, s2: str) -> int:
    """Minimum number of unit-cost insertions, deletions and substitutions
    turning ``s1`` into ``s2``, computed over Unicode code points.
    """
    if s1 == s2:
        return 0
    if not s1:
        return len(s2)
    if not s2:
        return len(s1)
    if len(s2) < len(s1):
        s1, s2 = s2, s1
    previous = list(range(len(s1) + 1))
    for j, ch2 in enumerate(s2, start=1):
        current = [j]
        for i, ch1 in enumerate(s1, start=1):
            cost = 0 if ch1 == ch2 else 1
            current.append(min(previous[i] + 1, current[i - 1] + 1, previous[i - 1] + cost))
        previous = current
    return previous[-1]


def similarity(s1: str, s2: str) -> float:
    """1 - distance / length of the longer string, in [0, 1].

    Two empty strings are equal, so their similarity is 1.
    """
    longest = max(len(s1), len(s2))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(s1, s2) / longest
