"""First two steps of the segmentation cascade: bold matching and index matching."""

from __future__ import annotations

from typing import Iterable, Optional

from ..corpus.model import Paragraph
from .entries import clean_headword
from .levenshtein import relative_levenshtein

INDEX_MATCH_THRESHOLD = 0.15


def match_bold(paragraph: Paragraph) -> Optional[str]:
    """Headword if the paragraph starts with a bold span, else None."""
    if paragraph.bold_spans and paragraph.bold_spans[0][0] == 0:
        headword = clean_headword(paragraph.span_text(paragraph.bold_spans[0]))
        return headword or None
    return None


def match_index(
    paragraph: Paragraph,
    index_words: Iterable[str],
    threshold: float = INDEX_MATCH_THRESHOLD,
) -> Optional[str]:
    """Match the paragraph prefix against the page's index words.

    Words are tried longest first (lexicographic tie-break) against the
    paragraph prefix of the same character length; the first word within
    ``threshold`` relative edit distance wins and becomes the headword.
    """
    text = paragraph.text
    for word in sorted(set(index_words), key=lambda w: (-len(w), w)):
        if not word:
            continue
        prefix = text[: len(word)]
        if relative_levenshtein(word, prefix) <= threshold:
            headword = clean_headword(word)
            if headword:
                return headword
    return None
