"""Entity linking of location entries and its evaluation."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from ..embedder.base import Embedder
from ..embedder.vectors import cosine_similarity
from ..errors import GoldIdUnknown
from ..metrics import Metrics, precision_recall_f1
from ..segmenter.entries import Entry
from .api import DescriptionSource, KgCandidate, search_candidates
from .client import ApiClient
from .geo import haversine_km

logger = logging.getLogger(__name__)

LINK_THRESHOLD = 0.6
WITHIN_RADIUS_KM = 25.0


@dataclass(frozen=True)
class LinkedLocation:
    entry_id: str
    qid: str
    lat: float
    lon: float
    similarity: float
    description_source: DescriptionSource

    def to_record(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "qid": self.qid,
            "lat": self.lat,
            "lon": self.lon,
            "similarity": self.similarity,
            "source": self.description_source.value,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "LinkedLocation":
        return cls(
            entry_id=rec["entry_id"],
            qid=rec["qid"],
            lat=rec["lat"],
            lon=rec["lon"],
            similarity=rec["similarity"],
            description_source=DescriptionSource(rec["source"]),
        )


def link_entry(
    entry: Entry,
    candidates: list[KgCandidate],
    embedder: Embedder,
    threshold: float = LINK_THRESHOLD,
) -> Optional[LinkedLocation]:
    """Best candidate by description similarity, if good enough and located.

    Candidates with empty descriptions are skipped. The argmax is taken over
    all described candidates; it is then accepted only when the similarity
    reaches the threshold and the candidate carries coordinates. Ties go to
    the lowest candidate index.
    """
    described = [c for c in candidates if c.description_text]
    if not described:
        return None
    vectors = embedder.embed([entry.truncated_text] + [c.description_text for c in described])
    best: Optional[tuple[float, KgCandidate]] = None
    for candidate, vec in zip(described, vectors[1:]):
        sim = cosine_similarity(vectors[0], vec)
        if best is None or sim > best[0]:
            best = (sim, candidate)
    sim, candidate = best
    if sim < threshold or candidate.coordinates is None:
        return None
    lat, lon = candidate.coordinates
    return LinkedLocation(
        entry_id=entry.entry_id,
        qid=candidate.qid,
        lat=lat,
        lon=lon,
        similarity=sim,
        description_source=candidate.description_source,
    )


def link_entries(
    entries: Iterable[Entry],
    client: ApiClient,
    embedder: Embedder,
    threshold: float = LINK_THRESHOLD,
    k: int = 5,
    expand_spelling: bool = False,
) -> list[LinkedLocation]:
    """Link every location entry (cross-references never qualify)."""
    links: list[LinkedLocation] = []
    for entry in entries:
        if not entry.is_location or entry.is_crossref:
            continue
        candidates = search_candidates(entry.headword, client, k=k, expand_spelling=expand_spelling)
        link = link_entry(entry, candidates, embedder, threshold=threshold)
        if link is not None:
            links.append(link)
        else:
            logger.debug("no link for %s (%s)", entry.entry_id, entry.headword)
    return links


def evaluate_linking(
    predicted: list[LinkedLocation],
    gold: list[tuple[str, str, float, float]],
    radius_km: float = WITHIN_RADIUS_KM,
    entry_ids: Optional[set[str]] = None,
) -> dict[str, Metrics]:
    """{"qid_match": …, "within_radius": …} against gold (entry_id, qid, lat, lon).

    Precision counts predicted links inside the gold sample; recall counts
    gold entries. ``entry_ids``, when given, is the universe of evaluated
    entries and unknown gold ids raise GoldIdUnknown.
    """
    gold_map: dict[str, tuple[str, float, float]] = {}
    for entry_id, qid, lat, lon in gold:
        if entry_ids is not None and entry_id not in entry_ids:
            raise GoldIdUnknown(f"gold references unknown entry {entry_id!r}")
        gold_map[entry_id] = (qid, lat, lon)

    in_sample = [p for p in predicted if p.entry_id in gold_map]
    qid_correct = 0
    radius_correct = 0
    for link in in_sample:
        gold_qid, gold_lat, gold_lon = gold_map[link.entry_id]
        if link.qid == gold_qid:
            qid_correct += 1
        if haversine_km((link.lat, link.lon), (gold_lat, gold_lon)) <= radius_km:
            radius_correct += 1
    return {
        "qid_match": precision_recall_f1(qid_correct, len(in_sample), len(gold_map)),
        "within_radius": precision_recall_f1(radius_correct, len(in_sample), len(gold_map)),
    }


def write_links_jsonl(links: Iterable[LinkedLocation], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for link in links:
            fh.write(json.dumps(link.to_record(), ensure_ascii=False) + "\n")


def read_links_jsonl(path: str | Path) -> list[LinkedLocation]:
    out = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(LinkedLocation.from_record(json.loads(line)))
    return out
