"""Gold-based evaluation of pipeline stages.

Each evaluable stage has a small JSONL gold schema (see README). Reports
are written as CSV plus a human-readable text table with one row per
metric, mirroring how the stage scores are usually presented.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from ..corpus.model import EditionId
from ..errors import GoldIdUnknown, SchemaMismatch
from ..matcher import evaluate_matching, read_match_jsonl
from ..metrics import Metrics, precision_recall_f1
from ..segmenter import read_entries_jsonl
from ..wikilinker import evaluate_linking, read_links_jsonl
from .config import PipelineConfig
from .manifest import atomic_write_text

EVALUABLE = ("segment", "crossref", "classify-locations", "match", "link")


def _read_gold(path: Path, required: set[str], stage: str) -> list[dict]:
    if not path.exists():
        raise SchemaMismatch(f"gold file {path} not found")
    rows = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            missing = required - set(row)
            if missing:
                raise SchemaMismatch(f"{stage} gold line {lineno}: missing keys {sorted(missing)}")
            rows.append(row)
    if not rows:
        raise SchemaMismatch(f"{stage} gold file {path} is empty")
    return rows


def _eval_segment(gold: list[dict], workdir: Path) -> dict[str, Metrics]:
    entries = read_entries_jsonl(workdir / "entries_segmented.jsonl")
    gold_keys = {(r["edition"], r["page"], r["headword"]) for r in gold}
    gold_pages = {(r["edition"], r["page"]) for r in gold}
    predicted = [
        e for e in entries if (e.edition_id.value, e.page_id) in gold_pages
    ]
    correct = sum(
        1 for e in predicted if (e.edition_id.value, e.page_id, e.headword) in gold_keys
    )
    return {"segment": precision_recall_f1(correct, len(predicted), len(gold_keys))}


def _eval_crossref(gold: list[dict], workdir: Path) -> dict[str, Metrics]:
    predicted = {}
    with (workdir / "crossrefs.jsonl").open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rec = json.loads(line)
                predicted[rec["source_id"]] = (rec["target_word"], rec["resolved_id"])
    gold_map = {r["entry_id"]: (r.get("target_word"), r.get("resolved_id")) for r in gold}
    gold_positive = [eid for eid, (target, _) in gold_map.items() if target is not None]
    in_sample = [eid for eid in predicted if eid in gold_map]
    correct = 0
    for eid in in_sample:
        gold_target, gold_resolved = gold_map[eid]
        target, resolved = predicted[eid]
        if gold_target == target and (gold_resolved is None or gold_resolved == resolved):
            correct += 1
    return {"crossref": precision_recall_f1(correct, len(in_sample), len(gold_positive))}


def _eval_locations(gold: list[dict], workdir: Path) -> dict[str, Metrics]:
    entries = {e.entry_id: e for e in read_entries_jsonl(workdir / "entries_final.jsonl")}
    tp = fp = 0
    gold_positive = 0
    for row in gold:
        entry = entries.get(row["entry_id"])
        if entry is None:
            raise GoldIdUnknown(f"gold references unknown entry {row['entry_id']!r}")
        if row["is_location"]:
            gold_positive += 1
            tp += entry.is_location
        elif entry.is_location:
            fp += 1
    return {"location": precision_recall_f1(tp, tp + fp, gold_positive)}


def _eval_match(gold: list[dict], workdir: Path, config: PipelineConfig) -> dict[str, Metrics]:
    result = read_match_jsonl(
        workdir / "matches.jsonl", workdir / "added.jsonl", config.matching.threshold
    )
    pairs = [(r["e1_id"], r.get("e2_id")) for r in gold]
    return {"match": evaluate_matching(result, pairs)}


def _eval_link(gold: list[dict], workdir: Path, config: PipelineConfig) -> dict[str, Metrics]:
    entries = read_entries_jsonl(workdir / "entries_final.jsonl")
    by_edition: dict[EditionId, set[str]] = {}
    for e in entries:
        by_edition.setdefault(e.edition_id, set()).add(e.entry_id)
    links = read_links_jsonl(workdir / "links_first.jsonl") + read_links_jsonl(
        workdir / "links_second.jsonl"
    )
    tuples = [(r["entry_id"], r["qid"], r["lat"], r["lon"]) for r in gold]
    universe = set().union(*by_edition.values()) if by_edition else set()
    metrics = evaluate_linking(
        links, tuples, radius_km=config.evaluation.within_radius_km, entry_ids=universe
    )
    return {"link_qid": metrics["qid_match"], "link_within_radius": metrics["within_radius"]}


_SCHEMAS = {
    "segment": {"edition", "page", "headword"},
    "crossref": {"entry_id"},
    "classify-locations": {"entry_id", "is_location"},
    "match": {"e1_id"},
    "link": {"entry_id", "qid", "lat", "lon"},
}


def evaluate(
    stage: str,
    gold_path: str | Path,
    config: PipelineConfig,
    workdir: str | Path,
) -> dict[str, Metrics]:
    """Score one stage against its gold file and write the report files."""
    if stage not in EVALUABLE:
        raise SchemaMismatch(f"stage {stage!r} is not evaluable; choose from {EVALUABLE}")
    workdir = Path(workdir)
    gold = _read_gold(Path(gold_path), _SCHEMAS[stage], stage)
    if stage == "segment":
        metrics = _eval_segment(gold, workdir)
    elif stage == "crossref":
        metrics = _eval_crossref(gold, workdir)
    elif stage == "classify-locations":
        metrics = _eval_locations(gold, workdir)
    elif stage == "match":
        metrics = _eval_match(gold, workdir, config)
    else:
        metrics = _eval_link(gold, workdir, config)

    eval_dir = workdir / "eval"
    eval_dir.mkdir(parents=True, exist_ok=True)
    csv_path = eval_dir / f"{stage}_metrics.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric", "precision", "recall", "f1"])
        for name, m in metrics.items():
            writer.writerow([name, repr(m.precision), repr(m.recall), repr(m.f1)])
    lines = [f"{'metric':24} {'P':>8} {'R':>8} {'F1':>8}"]
    for name, m in metrics.items():
        lines.append(f"{name:24} {m.precision:8.3f} {m.recall:8.3f} {m.f1:8.3f}")
    atomic_write_text(eval_dir / f"{stage}_metrics.txt", "\n".join(lines) + "\n")
    return metrics
