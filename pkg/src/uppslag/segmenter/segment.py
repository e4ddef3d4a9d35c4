"""Segmentation cascade over parsed pages.

Each paragraph runs through bold matching, index matching and the entry
classifier in that order; the first success starts a new entry and the
rest are continuations of the previous one. Entries span page breaks, so
pages of one edition must be processed in source order.
"""

from __future__ import annotations

import logging
import re
from typing import Iterable, Optional

from ..corpus.model import Page
from .classifier import EntryClassifier, classifier_headword, predict_entry
from .entries import TRUNCATED_LEN, Entry, SegmentationStats, Strategy
from .strategies import INDEX_MATCH_THRESHOLD, match_bold, match_index

logger = logging.getLogger(__name__)

# Numbered subentries share the parent headword; we keep them inline.
SUBENTRY_RE = re.compile(r"^\d+\.")


def segment(
    pages: Iterable[Page],
    classifier: Optional[EntryClassifier] = None,
    index_threshold: float = INDEX_MATCH_THRESHOLD,
    truncate_limit: int = TRUNCATED_LEN,
) -> tuple[list[Entry], SegmentationStats]:
    """Segment one edition's pages into entries plus per-strategy stats.

    Without a classifier the cascade stops after index matching and
    unmatched paragraphs become continuations.
    """
    pages = list(pages)
    editions = {page.edition_id for page in pages}
    if len(editions) > 1:
        raise ValueError(f"pages span multiple editions: {sorted(e.value for e in editions)}")

    entries: list[Entry] = []
    counts = {Strategy.BOLD: 0, Strategy.INDEX: 0, Strategy.CLASSIFIER: 0}
    continuations = 0
    subentries = 0
    dropped_leading = 0

    for page in pages:
        for para in page.paragraphs:
            headword = None
            strategy = None
            if SUBENTRY_RE.match(para.text):
                subentries += 1
                logger.debug(
                    "subentry marker on %s/%s kept inline: %.40r",
                    page.volume_id,
                    page.page_id,
                    para.text,
                )
            else:
                headword = match_bold(para)
                if headword is not None:
                    strategy = Strategy.BOLD
                else:
                    headword = match_index(para, page.index_words, index_threshold)
                    if headword is not None:
                        strategy = Strategy.INDEX
                    elif classifier is not None:
                        is_entry, _ = predict_entry(classifier, para)
                        if is_entry:
                            headword = classifier_headword(para.text)
                            if headword is not None:
                                strategy = Strategy.CLASSIFIER

            if strategy is None:
                if entries:
                    entries[-1].append_text(para.text)
                    continuations += 1
                else:
                    dropped_leading += 1
                    logger.warning(
                        "continuation before any entry on %s/%s dropped",
                        page.volume_id,
                        page.page_id,
                    )
                continue

            counts[strategy] += 1
            ordinal = len(entries) + 1
            entries.append(
                Entry(
                    entry_id=f"{page.edition_id.value}:{ordinal:05d}",
                    edition_id=page.edition_id,
                    volume_id=page.volume_id,
                    page_id=page.page_id,
                    ordinal=ordinal,
                    headword=headword,
                    text=para.text,
                    strategy=strategy,
                    truncate_limit=truncate_limit,
                )
            )

    stats = SegmentationStats(
        edition_id=pages[0].edition_id if pages else None,
        total_entries=len(entries),
        bold_count=counts[Strategy.BOLD],
        index_count=counts[Strategy.INDEX],
        classifier_count=counts[Strategy.CLASSIFIER],
        continuation_paragraphs=continuations,
        subentry_markers=subentries,
        dropped_leading=dropped_leading,
    )
    return entries, stats
