"""Entry model and JSONL serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable

from ..corpus.model import EditionId

TRUNCATED_LEN = 200
TRAILING_PUNCT = ".,:;"


class Strategy(str, Enum):
    BOLD = "bold"
    INDEX = "index"
    CLASSIFIER = "classifier"


def clean_headword(raw: str) -> str:
    """Trim a candidate headword and strip trailing punctuation."""
    return raw.strip().rstrip(TRAILING_PUNCT + " ")


@dataclass
class Entry:
    """One segmented encyclopedia entry.

    ``text`` grows as continuation paragraphs are attached;
    ``truncated_text`` always reflects the first TRUNCATED_LEN characters.
    """

    entry_id: str
    edition_id: EditionId
    volume_id: str
    page_id: str
    ordinal: int
    headword: str
    text: str
    strategy: Strategy
    is_crossref: bool = False
    crossref_target: str | None = None
    is_location: bool = False
    truncate_limit: int = field(default=TRUNCATED_LEN, repr=False)

    def __post_init__(self) -> None:
        if not self.headword:
            raise ValueError("headword must be non-empty")
        if self.headword[-1] in TRAILING_PUNCT:
            raise ValueError(f"headword {self.headword!r} has trailing punctuation")

    @property
    def truncated_text(self) -> str:
        return self.text[: self.truncate_limit]

    def append_text(self, more: str) -> None:
        self.text = f"{self.text} {more}" if self.text else more

    def to_record(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "edition": self.edition_id.value,
            "volume": self.volume_id,
            "page": self.page_id,
            "ordinal": self.ordinal,
            "headword": self.headword,
            "text": self.text,
            "truncated_text": self.truncated_text,
            "strategy": self.strategy.value,
            "is_crossref": self.is_crossref,
            "crossref_target": self.crossref_target,
            "is_location": self.is_location,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Entry":
        return cls(
            entry_id=rec["entry_id"],
            edition_id=EditionId(rec["edition"]),
            volume_id=rec["volume"],
            page_id=rec["page"],
            ordinal=rec["ordinal"],
            headword=rec["headword"],
            text=rec["text"],
            strategy=Strategy(rec["strategy"]),
            is_crossref=rec.get("is_crossref", False),
            crossref_target=rec.get("crossref_target"),
            is_location=rec.get("is_location", False),
        )


@dataclass
class SegmentationStats:
    edition_id: EditionId | None
    total_entries: int
    bold_count: int
    index_count: int
    classifier_count: int
    continuation_paragraphs: int = 0
    subentry_markers: int = 0
    dropped_leading: int = 0

    def __post_init__(self) -> None:
        if self.bold_count + self.index_count + self.classifier_count != self.total_entries:
            raise ValueError("strategy counts do not sum to total_entries")

    @property
    def proportions(self) -> dict[str, float]:
        if self.total_entries == 0:
            return {s.value: 0.0 for s in Strategy}
        return {
            Strategy.BOLD.value: self.bold_count / self.total_entries,
            Strategy.INDEX.value: self.index_count / self.total_entries,
            Strategy.CLASSIFIER.value: self.classifier_count / self.total_entries,
        }

    def to_record(self) -> dict:
        return {
            "edition": self.edition_id.value if self.edition_id else None,
            "total_entries": self.total_entries,
            "bold_count": self.bold_count,
            "index_count": self.index_count,
            "classifier_count": self.classifier_count,
            "continuation_paragraphs": self.continuation_paragraphs,
            "subentry_markers": self.subentry_markers,
            "dropped_leading": self.dropped_leading,
            "proportions": self.proportions,
        }


def write_entries_jsonl(entries: Iterable[Entry], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_record(), ensure_ascii=False) + "\n")


def read_entries_jsonl(path: str | Path) -> list[Entry]:
    out = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(Entry.from_record(json.loads(line)))
    return out
