"""Character and whitespace normalization for scraped page text.

The replacement table is a versioned data file (``data/replacements.tsv``)
rather than code: the set of characters worth canonicalizing in old OCR
is a judgement call, and keeping it as data makes the choice auditable.
"""

from __future__ import annotations

import html
import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

_TAG_RE = re.compile(r"<[^>]*>")

# Bounds the entity-decoding fixpoint loop; nesting deeper than this is noise.
_MAX_UNESCAPE_ROUNDS = 10


def _parse_table(lines: list[str]) -> dict[str, str]:
    table: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"replacement table line {lineno}: missing TAB")
        code, replacement = line.split("\t", 1)
        table[chr(int(code, 16))] = replacement
    return table


@lru_cache(maxsize=8)
def _load_table_cached(path: str | None) -> dict[str, str]:
    if path is None:
        text = (
            resources.files("uppslag.corpus")
            .joinpath("data/replacements.tsv")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    return _parse_table(text.split("\n"))


def load_replacement_table(path: str | Path | None = None) -> dict[str, str]:
    """Load the character replacement table (the packaged one by default)."""
    return dict(_load_table_cached(str(path) if path is not None else None))


def unescape_fixpoint(s: str) -> str:
    """Decode HTML entities until the text stops changing.

    Plain ``html.unescape`` is not idempotent on doubly escaped input
    ("&amp;amp;"); iterating to a fixpoint makes the whole normalization
    idempotent.
    """
    for _ in range(_MAX_UNESCAPE_ROUNDS):
        decoded = html.unescape(s)
        if decoded == s:
            return s
        s = decoded
    return s


def apply_table(s: str, table: dict[str, str]) -> str:
    if not any(ch in table for ch in s):
        return s
    return "".join(table.get(ch, ch) for ch in s)


def collapse_whitespace(s: str) -> str:
    return re.sub(r"\s+", " ", s).strip()


def normalize_text(raw: str, table: dict[str, str] | None = None) -> str:
    """Normalize a raw text fragment to canonical plain text.

    Markup tags are removed, entities decoded, uncommon characters mapped
    through the replacement table, and whitespace runs collapsed to single
    spaces. Total and idempotent.
    """
    if table is None:
        table = _load_table_cached(None)
    s = _TAG_RE.sub("", raw)
    s = unescape_fixpoint(s)
    s = apply_table(s, table)
    return collapse_whitespace(s)
