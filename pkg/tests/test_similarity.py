from hypothesis import given
from hypothesis import strategies as st

from arascore.similarity import edit_distance, similarity

from levenshtein_oracle import bfs_edit_distance

short_strings = st.text(alphabet="ابج", max_size=5)


class TestEditDistance:
    def test_equal_strings(self):
        assert edit_distance("يقر", "يقر") == 0

    def test_distance_to_empty(self):
        assert edit_distance("", "كتب") == 3
        assert edit_distance("كتب", "") == 3

    def test_one_insertion(self):
        # frozen from the brute-force oracle
        assert bfs_edit_distance("كتب", "كتاب") == 1
        assert edit_distance("كتب", "كتاب") == 1

    def test_substitution_and_mixed(self):
        assert edit_distance("كتب", "ذهب") == 2
        assert edit_distance("sitting", "kitten") == 3


class TestSimilarity:
    def test_identical(self):
        assert similarity("يقر", "يقر") == 1.0

    def test_both_empty(self):
        assert similarity("", "") == 1.0

    def test_insertion_ratio(self):
        assert similarity("كتب", "كتاب") == 0.75

    def test_one_empty(self):
        assert similarity("", "كتب") == 0.0

    def test_range_examples(self):
        assert 0.0 <= similarity("كتب", "مكتبة") <= 1.0


# -- properties --------------------------------------------------------------


@given(a=short_strings, b=short_strings)
def test_dp_matches_bruteforce(a, b):
    assert edit_distance(a, b) == bfs_edit_distance(a, b)


@given(a=short_strings, b=short_strings)
def test_symmetry_and_bounds(a, b):
    d = edit_distance(a, b)
    assert d == edit_distance(b, a)
    assert abs(len(a) - len(b)) <= d <= max(len(a), len(b))


@given(a=short_strings)
def test_self_distance_zero(a):
    assert edit_distance(a, a) == 0


@given(a=short_strings, b=short_strings, c=short_strings)
def test_triangle_inequality(a, b, c):
    assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)


@given(a=short_strings, b=short_strings)
def test_similarity_symmetric_and_bounded(a, b):
    s = similarity(a, b)
    assert s == similarity(b, a)
    assert 0.0 <= s <= 1.0


@given(a=short_strings, b=short_strings)
def test_similarity_one_iff_equal(a, b):
    assert (similarity(a, b) == 1.0) == (a == b)
