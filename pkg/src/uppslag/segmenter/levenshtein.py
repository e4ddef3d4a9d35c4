"""Edit distance, absolute and relative to the reference word length.

Proofread index words and OCR text rarely agree character for character,
so index matching works on a length-relative distance instead of the raw
count of edits.
"""

from __future__ import annotations

from ..errors import EmptyReference


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert, delete, substitute all cost 1)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost))
        prev = cur
    return prev[-1]


def relative_levenshtein(a: str, b: str) -> float:
    """Edit distance between reference ``a`` and candidate ``b``, divided by len(a).

    Lengths count Unicode scalar values. The result is 0 for equal strings
    and can exceed 1 when ``b`` is much longer than ``a``.
    """
    if not a:
        raise EmptyReference("reference word must be non-empty")
    return levenshtein(a, b) / len(a)
