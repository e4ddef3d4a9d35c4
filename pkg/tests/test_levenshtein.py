import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uppslag.errors import EmptyReference
from uppslag.segmenter import levenshtein, relative_levenshtein


def levenshtein_oracle(a: str, b: str) -> int:
    """Plain recursive-with-memo edit distance, independent of the library DP."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if a[i - 1] == b[j - 1] else 1
        return min(rec(i - 1, j) + 1, rec(i, j - 1) + 1, rec(i - 1, j - 1) + cost)

    return rec(len(a), len(b))


words = st.text(alphabet="abcdefåäöq", max_size=12)


def test_identical_strings():
    assert relative_levenshtein("abc", "abc") == 0.0


def test_single_substitution_examples():
    assert relative_levenshtein("Bajasid", "Bajesid") == pytest.approx(1 / 7)
    assert relative_levenshtein("Qvenneberga", "Kvenneberga") == pytest.approx(1 / 11)


def test_threshold_semantics():
    assert relative_levenshtein("Bajasid", "Bajesid") <= 0.15
    assert relative_levenshtein("Bergen", "Borgen") > 0.15  # 1/6 just misses


def test_empty_reference_raises():
    with pytest.raises(EmptyReference):
        relative_levenshtein("", "x")


def test_unicode_scalar_lengths():
    # precomposed vs decomposed form differ as scalars, intentionally
    assert relative_levenshtein("Å", "Å") == 0.0
    assert levenshtein("Åker", "Aker") == 1


@given(words, words)
@settings(max_examples=300, deadline=None)
def test_matches_oracle(a, b):
    assert levenshtein(a, b) == levenshtein_oracle(a, b)


@given(words, words)
@settings(max_examples=200, deadline=None)
def test_symmetry(a, b):
    assert levenshtein(a, b) == levenshtein(b, a)


@given(words, words, words)
@settings(max_examples=200, deadline=None)
def test_triangle_inequality(a, b, c):
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


def test_nonnegative_and_relative_bounds():
    rng = random.Random(7)
    alphabet = "abcdefgå"
    for _ in range(200):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 10)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 10)))
        score = relative_levenshtein(a, b)
        assert score >= 0.0
        assert levenshtein(a, b) <= max(len(a), len(b))
