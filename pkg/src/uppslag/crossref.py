"""Cross-reference detection and resolution.

A short entry whose body just says "Se <headword>" redirects the reader to
another entry. Detection is the paper-simple length + substring rule;
resolution picks the first entry with an exactly equal headword, which is
deliberately naive and can hit a same-named cross-reference first.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .segmenter.entries import Entry

logger = logging.getLogger(__name__)

CROSSREF_MAX_LEN = 60
CROSSREF_MARKER = " Se"


@dataclass(frozen=True)
class CrossReference:
    source_id: str
    source_headword: str
    target_word: str
    resolved_entry_id: Optional[str] = None

    def to_record(self) -> dict:
        return {
            "source_id": self.source_id,
            "target_word": self.target_word,
            "resolved_id": self.resolved_entry_id,
        }


def _target_after_marker(text: str, marker_end: int) -> Optional[str]:
    # One mandatory space, then a maximal run of letters and hyphens.
    if marker_end >= len(text) or text[marker_end] != " ":
        return None
    i = marker_end + 1
    chars = []
    while i < len(text) and (text[i].isalpha() or text[i] == "-"):
        chars.append(text[i])
        i += 1
    word = "".join(chars).strip("-").rstrip(".")
    return word or None


def detect_crossref(entry: Entry, max_len: int = CROSSREF_MAX_LEN) -> Optional[str]:
    """Target word if the entry is a cross-reference, else None.

    Fires when the text is shorter than ``max_len`` characters and contains
    the marker " Se"; the target is the word after the marker plus one space.
    """
    text = entry.text
    if len(text) >= max_len:
        return None
    pos = text.find(CROSSREF_MARKER)
    while pos != -1:
        target = _target_after_marker(text, pos + len(CROSSREF_MARKER))
        if target is not None:
            if " och " in text[pos:]:
                logger.info(
                    "multi-target cross-reference %r resolved to first target only",
                    entry.entry_id,
                )
            return target
        pos = text.find(CROSSREF_MARKER, pos + 1)
    return None


def resolve_crossref(target_word: str, entries: list[Entry]) -> Optional[str]:
    """Id of the first entry (in edition order) whose headword equals the target."""
    for entry in entries:
        if entry.headword == target_word:
            return entry.entry_id
    return None


def annotate_crossrefs(entries: list[Entry], max_len: int = CROSSREF_MAX_LEN) -> list[CrossReference]:
    """Flag cross-reference entries in place and build the reference table."""
    table: list[CrossReference] = []
    for entry in entries:
        target = detect_crossref(entry, max_len=max_len)
        if target is None:
            continue
        entry.is_crossref = True
        entry.crossref_target = target
        table.append(
            CrossReference(
                source_id=entry.entry_id,
                source_headword=entry.headword,
                target_word=target,
                resolved_entry_id=resolve_crossref(target, entries),
            )
        )
    return table


def write_crossrefs_jsonl(table: Iterable[CrossReference], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for ref in table:
            fh.write(json.dumps(ref.to_record(), ensure_ascii=False) + "\n")
