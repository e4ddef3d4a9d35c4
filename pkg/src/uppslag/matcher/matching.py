"""Greedy inter-edition alignment, the headword baseline, and their evaluation.

First-edition entries are visited in edition order; each claims the best
still-unclaimed candidate above the similarity threshold. No second-edition
entry can be claimed twice, so pairs plus removed partition edition one and
pairs plus added partition edition two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..embedder.base import Embedder
from ..errors import GoldIdUnknown
from ..metrics import Metrics, precision_recall_f1
from ..segmenter.entries import Entry
from .index import VectorIndex

MATCH_THRESHOLD = 0.9
CANDIDATES_PER_QUERY = 10


@dataclass
class MatchResult:
    pairs: list[tuple[str, str, float]] = field(default_factory=list)
    removed: list[str] = field(default_factory=list)
    added: list[str] = field(default_factory=list)
    threshold: float = MATCH_THRESHOLD

    def pair_map(self) -> dict[str, str]:
        return {e1: e2 for e1, e2, _ in self.pairs}

    def check_partition(self, e1_ids: list[str], e2_ids: list[str]) -> None:
        """Assert the partition and injectivity invariants; raises on violation."""
        paired_e1 = [e1 for e1, _, _ in self.pairs]
        paired_e2 = [e2 for _, e2, _ in self.pairs]
        if len(set(paired_e2)) != len(paired_e2):
            raise AssertionError("an edition-2 entry is claimed twice")
        if len(set(paired_e1)) != len(paired_e1):
            raise AssertionError("an edition-1 entry is paired twice")
        if sorted(paired_e1 + self.removed) != sorted(e1_ids):
            raise AssertionError("pairs + removed do not partition edition 1")
        if sorted(paired_e2 + self.added) != sorted(e2_ids):
            raise AssertionError("pairs + added do not partition edition 2")
        if any(sim < self.threshold for _, _, sim in self.pairs):
            raise AssertionError("pair below threshold")


def match_editions(
    e1_locations: list[Entry],
    e2_index: VectorIndex,
    embedder: Embedder,
    threshold: float = MATCH_THRESHOLD,
    k: int = CANDIDATES_PER_QUERY,
) -> MatchResult:
    """Align edition-1 location entries against an edition-2 index."""
    result = MatchResult(threshold=threshold)
    claimed: set[str] = set()
    if e1_locations:
        vectors = embedder.embed([e.truncated_text for e in e1_locations])
    for i, entry in enumerate(e1_locations):
        chosen: Optional[tuple[str, float]] = None
        for candidate_id, sim in e2_index.query(vectors[i], k):
            if sim < threshold:
                break  # ranked descending; nothing below can qualify
            if candidate_id in claimed:
                continue
            chosen = (candidate_id, sim)
            break
        if chosen is None:
            result.removed.append(entry.entry_id)
        else:
            claimed.add(chosen[0])
            result.pairs.append((entry.entry_id, chosen[0], chosen[1]))
    result.added = [e2_id for e2_id in e2_index.ids if e2_id not in claimed]
    return result


def baseline_headword_match(e1_locations: list[Entry], e2_locations: list[Entry]) -> MatchResult:
    """Exact headword equality; first unclaimed match in edition order wins."""
    result = MatchResult(threshold=1.0)
    claimed: set[int] = set()
    by_headword: dict[str, list[int]] = {}
    for j, entry in enumerate(e2_locations):
        by_headword.setdefault(entry.headword, []).append(j)
    for entry in e1_locations:
        match = None
        for j in by_headword.get(entry.headword, []):
            if j not in claimed:
                match = j
                break
        if match is None:
            result.removed.append(entry.entry_id)
        else:
            claimed.add(match)
            result.pairs.append((entry.entry_id, e2_locations[match].entry_id, 1.0))
    result.added = [e.entry_id for j, e in enumerate(e2_locations) if j not in claimed]
    return result


def evaluate_matching(predicted: MatchResult, gold: list[tuple[str, Optional[str]]]) -> Metrics:
    """Score predicted pairs against a gold sample of e1 -> e2-or-None."""
    known = {e1 for e1, _, _ in predicted.pairs} | set(predicted.removed)
    gold_map: dict[str, Optional[str]] = {}
    for e1_id, e2_id in gold:
        if e1_id not in known:
            raise GoldIdUnknown(f"gold references unknown entry {e1_id!r}")
        gold_map[e1_id] = e2_id
    predicted_in_sample = [(e1, e2) for e1, e2, _ in predicted.pairs if e1 in gold_map]
    correct = sum(1 for e1, e2 in predicted_in_sample if gold_map[e1] == e2)
    gold_positive = sum(1 for target in gold_map.values() if target is not None)
    return precision_recall_f1(correct, len(predicted_in_sample), gold_positive)


def write_match_jsonl(result: MatchResult, matches_path: str | Path, added_path: str | Path) -> None:
    with Path(matches_path).open("w", encoding="utf-8") as fh:
        for e1_id, e2_id, sim in result.pairs:
            fh.write(
                json.dumps(
                    {"e1_id": e1_id, "e2_id": e2_id, "similarity": sim, "status": "paired"},
                    ensure_ascii=False,
                )
                + "\n"
            )
        for e1_id in result.removed:
            fh.write(
                json.dumps(
                    {"e1_id": e1_id, "e2_id": None, "similarity": None, "status": "removed"},
                    ensure_ascii=False,
                )
                + "\n"
            )
    with Path(added_path).open("w", encoding="utf-8") as fh:
        for e2_id in result.added:
            fh.write(json.dumps({"e2_id": e2_id, "status": "added"}, ensure_ascii=False) + "\n")


def read_match_jsonl(matches_path: str | Path, added_path: str | Path, threshold: float) -> MatchResult:
    result = MatchResult(threshold=threshold)
    with Path(matches_path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec["status"] == "paired":
                result.pairs.append((rec["e1_id"], rec["e2_id"], rec["similarity"]))
            else:
                result.removed.append(rec["e1_id"])
    with Path(added_path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                result.added.append(json.loads(line)["e2_id"])
    return result
