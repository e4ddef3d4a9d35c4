"""Parse archive-layout page documents into the Page model.

Expected layout (see README for a full example):

    <div class="index"><a>Headword</a> ...</div>   optional
    <div class="text"><p>...</p> ...</div>         required

Paragraphs live in ``<p>`` elements inside the text region; headwords are
marked with ``<b>`` (``<strong>`` is accepted too). Everything else is
treated as plain markup and dropped.
"""

from __future__ import annotations

from html.parser import HTMLParser

from ..errors import MalformedPage
from .model import EditionId, Page, Paragraph
from .normalize import (
    _load_table_cached,
    apply_table,
    collapse_whitespace,
    unescape_fixpoint,
)

_BOLD_TAGS = {"b", "strong"}


class _PageHtmlParser(HTMLParser):
    """Collects index words and per-paragraph (text, bold) runs."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=False)
        self.index_words: list[str] = []
        self.paragraph_runs: list[list[tuple[str, bool]]] = []
        self.saw_text_region = False
        self._in_index = False
        self._in_text = False
        self._in_anchor = False
        self._bold_depth = 0
        self._runs: list[tuple[str, bool]] | None = None
        self._anchor_parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        attrs = dict(attrs)
        if tag == "div":
            cls = attrs.get("class", "")
            if cls == "index":
                self._in_index = True
            elif cls == "text":
                self._in_text = True
                self.saw_text_region = True
        elif tag == "p" and self._in_text:
            self._runs = []
            self._bold_depth = 0
        elif tag in _BOLD_TAGS and self._runs is not None:
            self._bold_depth += 1
        elif tag == "a" and self._in_index:
            self._in_anchor = True
            self._anchor_parts = []

    def handle_endtag(self, tag):
        if tag == "div":
            # Our layout does not nest divs; closing one leaves whichever
            # region we were in.
            self._in_index = False
            self._in_text = False
        elif tag == "p" and self._runs is not None:
            self.paragraph_runs.append(self._runs)
            self._runs = None
        elif tag in _BOLD_TAGS and self._runs is not None:
            self._bold_depth = max(0, self._bold_depth - 1)
        elif tag == "a" and self._in_anchor:
            self.index_words.append("".join(self._anchor_parts))
            self._in_anchor = False

    def _emit(self, data: str) -> None:
        if self._in_anchor:
            self._anchor_parts.append(data)
        elif self._runs is not None:
            self._runs.append((data, self._bold_depth > 0))

    def handle_data(self, data):
        self._emit(data)

    def handle_entityref(self, name):
        self._emit(f"&{name};")

    def handle_charref(self, name):
        self._emit(f"&#{name};")


def _build_paragraph(runs: list[tuple[str, bool]], table: dict[str, str]) -> Paragraph | None:
    """Normalize runs into a Paragraph, remapping bold flags through every step."""
    chars: list[tuple[str, bool]] = []
    for text, bold in runs:
        text = apply_table(unescape_fixpoint(text), table)
        chars.extend((ch, bold) for ch in text)

    # Whitespace collapse over the tagged sequence: a run of whitespace
    # becomes one space, bold only if the run and both neighbours are bold.
    collapsed: list[tuple[str, bool]] = []
    pending_space = False
    space_bold = False
    for ch, bold in chars:
        if ch.isspace():
            space_bold = space_bold and bold if pending_space else bold
            pending_space = True
            continue
        if pending_space and collapsed:
            collapsed.append((" ", collapsed[-1][1] and space_bold and bold))
        pending_space = False
        collapsed.append((ch, bold))

    if not collapsed:
        return None
    text = "".join(ch for ch, _ in collapsed)
    spans: list[tuple[int, int]] = []
    start = None
    for i, (ch, bold) in enumerate(collapsed):
        if bold and start is None:
            start = i
        elif not bold and start is not None:
            spans.append((start, i))
            start = None
    if start is not None:
        spans.append((start, len(collapsed)))
    return Paragraph(text=text, bold_spans=tuple(spans))


def parse_page(
    raw_html: str,
    edition_id: EditionId,
    volume_id: str,
    page_id: str,
    table: dict[str, str] | None = None,
) -> Page:
    """Parse one page document into a Page.

    Raises MalformedPage if the text region (``<div class="text">``) is absent.
    """
    if table is None:
        table = _load_table_cached(None)
    parser = _PageHtmlParser()
    parser.feed(raw_html)
    parser.close()
    if not parser.saw_text_region:
        raise MalformedPage(f"{edition_id.value}/{volume_id}/{page_id}: no text region")

    paragraphs = []
    for runs in parser.paragraph_runs:
        para = _build_paragraph(runs, table)
        if para is not None:
            paragraphs.append(para)

    index_words = []
    for word in parser.index_words:
        normalized = collapse_whitespace(apply_table(unescape_fixpoint(word), table))
        if normalized:
            index_words.append(normalized)

    return Page(
        edition_id=EditionId(edition_id),
        volume_id=volume_id,
        page_id=page_id,
        paragraphs=tuple(paragraphs),
        index_words=tuple(index_words),
    )
