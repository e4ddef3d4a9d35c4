"""Page model exposed to the segmenter."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class EditionId(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class Paragraph:
    """One normalized paragraph with bold character spans.

    Offsets are in Unicode scalar values into ``text``. Spans are sorted,
    non-overlapping and never empty.
    """

    text: str
    bold_spans: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev_end = 0
        for start, end in self.bold_spans:
            if not (0 <= start < end <= len(self.text)):
                raise ValueError(f"bold span ({start}, {end}) out of range")
            if start < prev_end:
                raise ValueError("bold spans overlap or are unsorted")
            prev_end = end

    def span_text(self, span: tuple[int, int]) -> str:
        return self.text[span[0] : span[1]]


@dataclass(frozen=True)
class Page:
    """One facsimile page: paragraphs in source order plus its index words."""

    edition_id: EditionId
    volume_id: str
    page_id: str
    paragraphs: tuple[Paragraph, ...] = ()
    index_words: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if any(not w for w in self.index_words):
            raise ValueError("index_words must not contain empty strings")
