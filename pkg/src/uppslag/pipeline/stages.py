"""Stage implementations and the stage DAG.

Seven stages: ingest -> segment -> crossref -> classify-locations ->
match -> link -> stats. Each reads only the artifacts it declares, writes
its outputs atomically and records their checksums in the run manifest.
All artifacts are JSONL/CSV/GeoJSON and byte-deterministic for fixed
config and inputs (the manifest itself carries timestamps and is not).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from ..corpus.model import EditionId, Page, Paragraph
from ..corpus.store import PageStore
from ..crossref import annotate_crossrefs, write_crossrefs_jsonl
from ..embedder.base import EmbeddingProviderSpec, make_embedder
from ..errors import ConfigError, MissingUpstream
from ..geostats import (
    country_deltas,
    emit_map_data,
    load_boundaries,
    summarize,
    write_continent_shares_csv,
    write_country_deltas_csv,
)
from ..locations import annotate_locations, save_location_model, train_location_model
from ..matcher import build_index, match_editions, write_match_jsonl
from ..segmenter import (
    build_entry_training_set,
    read_entries_jsonl,
    save_entry_classifier,
    segment,
    train_entry_classifier,
    write_entries_jsonl,
)
from ..segmenter.entries import Entry
from ..wikilinker import ApiClient, link_entries, write_links_jsonl
from .config import PipelineConfig
from .manifest import RunManifest, atomic_write_text

logger = logging.getLogger(__name__)

STAGE_ORDER = ["ingest", "segment", "crossref", "classify-locations", "match", "link", "stats"]

# stage -> artifacts that must exist before it runs
STAGE_INPUTS = {
    "ingest": [],
    "segment": ["pages.jsonl", "volume_letters.json"],
    "crossref": ["entries_segmented.jsonl"],
    "classify-locations": ["entries_crossref.jsonl"],
    "match": ["entries_final.jsonl"],
    "link": ["entries_final.jsonl"],
    "stats": ["entries_final.jsonl", "links_first.jsonl", "links_second.jsonl"],
}


def _resolve(path: str, workdir: Path) -> Path:
    p = Path(path)
    return p if p.is_absolute() else workdir / p


def _require_inputs(stage: str, workdir: Path) -> None:
    missing = [name for name in STAGE_INPUTS[stage] if not (workdir / name).exists()]
    if missing:
        raise MissingUpstream(f"stage {stage!r} needs artifacts {missing}; run earlier stages first")


def _embedder(config: PipelineConfig, workdir: Path):
    path = config.embedder.endpoint_or_path
    if config.embedder.kind == "file" and path:
        path = str(_resolve(path, workdir))
    spec = EmbeddingProviderSpec(
        kind=config.embedder.kind,
        dim=config.embedder.dim,
        endpoint_or_path=path,
        seed=config.seed,
        batch_size=config.embedder.batch_size,
    )
    return make_embedder(spec)


def _write_jsonl(path: Path, records: list[dict]) -> None:
    atomic_write_text(path, "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records))


def _editions_in_order(entries: list[Entry]) -> dict[EditionId, list[Entry]]:
    grouped: dict[EditionId, list[Entry]] = {}
    for entry in entries:
        grouped.setdefault(entry.edition_id, []).append(entry)
    return grouped


def _locations_of(entries: list[Entry]) -> list[Entry]:
    return [e for e in entries if e.is_location and not e.is_crossref]


def run_ingest(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    store = PageStore(_resolve(config.corpus.store, workdir))
    records = store.records()
    if not records:
        raise MissingUpstream(f"page store at {store.root} is empty or missing its manifest")
    rows = []
    for page in store.iter_pages():
        rows.append(
            {
                "edition": page.edition_id.value,
                "volume": page.volume_id,
                "page": page.page_id,
                "paragraphs": [
                    {"text": p.text, "bold_spans": [list(s) for s in p.bold_spans]}
                    for p in page.paragraphs
                ],
                "index_words": list(page.index_words),
            }
        )
    pages_path = workdir / "pages.jsonl"
    _write_jsonl(pages_path, rows)
    letters = {
        edition: {vol: "".join(sorted(chars)) for vol, chars in vols.items()}
        for edition, vols in store.volume_letters().items()
    }
    letters_path = workdir / "volume_letters.json"
    atomic_write_text(letters_path, json.dumps(letters, ensure_ascii=False, sort_keys=True, indent=1) + "\n")
    return [pages_path, letters_path]


def _load_pages(workdir: Path) -> list[Page]:
    pages = []
    with (workdir / "pages.jsonl").open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            pages.append(
                Page(
                    edition_id=EditionId(rec["edition"]),
                    volume_id=rec["volume"],
                    page_id=rec["page"],
                    paragraphs=tuple(
                        Paragraph(text=p["text"], bold_spans=tuple(tuple(s) for s in p["bold_spans"]))
                        for p in rec["paragraphs"]
                    ),
                    index_words=tuple(rec["index_words"]),
                )
            )
    return pages


def _derive_volume_letters(pages: list[Page]) -> set[str]:
    letters = set()
    for page in pages:
        for para in page.paragraphs:
            if para.bold_spans and para.bold_spans[0][0] == 0 and para.text:
                letters.add(para.text[0].upper())
    return letters


def run_segment(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("segment", workdir)
    pages = _load_pages(workdir)
    letters_cfg = json.loads((workdir / "volume_letters.json").read_text(encoding="utf-8"))

    by_edition: dict[EditionId, list[Page]] = {}
    for page in pages:
        by_edition.setdefault(page.edition_id, []).append(page)

    artifacts: list[Path] = []
    all_entries: list[Entry] = []
    stats_out: dict[str, dict] = {}
    seg = config.segmenter
    for edition in sorted(by_edition, key=lambda e: e.value):
        ed_pages = by_edition[edition]
        labeled = []
        volumes: dict[str, list[Page]] = {}
        for page in ed_pages:
            volumes.setdefault(page.volume_id, []).append(page)
        for volume_id, vol_pages in volumes.items():
            letters = set(letters_cfg.get(edition.value, {}).get(volume_id, ""))
            if not letters:
                letters = _derive_volume_letters(vol_pages)
                logger.info(
                    "volume %s/%s has no configured letters; derived %s",
                    edition.value,
                    volume_id,
                    sorted(letters),
                )
            labeled.extend(build_entry_training_set(vol_pages, letters))

        classifier = None
        if len({label for _, label in labeled}) == 2:
            classifier = train_entry_classifier(
                labeled,
                dims=seg.ngram_dims,
                orders=tuple(seg.ngram_orders),
                hash_seed=seg.hash_seed,
                l2=seg.l2,
                max_epochs=seg.max_epochs,
                tol=seg.tol,
                threshold=seg.decision_threshold,
            )
            models_dir = workdir / "models"
            models_dir.mkdir(parents=True, exist_ok=True)
            model_path = models_dir / f"entry_classifier_{edition.value}.bin"
            save_entry_classifier(classifier, model_path)
            artifacts.append(model_path)
        else:
            logger.warning(
                "edition %s: training set has a single class; cascade runs without classifier",
                edition.value,
            )

        entries, stats = segment(
            ed_pages,
            classifier,
            index_threshold=seg.index_match_threshold,
            truncate_limit=seg.truncate_chars,
        )
        all_entries.extend(entries)
        stats_out[edition.value] = stats.to_record()

    entries_path = workdir / "entries_segmented.jsonl"
    write_entries_jsonl(all_entries, entries_path)
    stats_path = workdir / "segmentation_stats.json"
    atomic_write_text(stats_path, json.dumps(stats_out, ensure_ascii=False, sort_keys=True, indent=1) + "\n")
    return [entries_path, stats_path, *artifacts]


def run_crossref(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("crossref", workdir)
    entries = read_entries_jsonl(workdir / "entries_segmented.jsonl")
    table = []
    for edition_entries in _editions_in_order(entries).values():
        table.extend(annotate_crossrefs(edition_entries, max_len=config.crossref.max_length))
    entries_path = workdir / "entries_crossref.jsonl"
    write_entries_jsonl(entries, entries_path)
    refs_path = workdir / "crossrefs.jsonl"
    write_crossrefs_jsonl(table, refs_path)
    return [entries_path, refs_path]


def _load_location_labels(path: Path) -> list[dict]:
    if not path.exists():
        raise ConfigError(f"location labels file {path} not found")
    rows = []
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


def run_classify_locations(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("classify-locations", workdir)
    entries = read_entries_jsonl(workdir / "entries_crossref.jsonl")
    labels = _load_location_labels(_resolve(config.locations.labels, workdir))
    by_key: dict[tuple[str, str], bool] = {
        (row["edition"], row["headword"]): bool(row["is_location"]) for row in labels
    }
    labeled = [
        (entry, by_key[(entry.edition_id.value, entry.headword)])
        for entry in entries
        if not entry.is_crossref and (entry.edition_id.value, entry.headword) in by_key
    ]
    embedder = _embedder(config, workdir)
    model = train_location_model(labeled, embedder, threshold=config.locations.threshold)
    annotate_locations(entries, model, embedder)
    manifest.set_provider_tag("embedder", embedder.provider_tag)

    entries_path = workdir / "entries_final.jsonl"
    write_entries_jsonl(entries, entries_path)
    model_path = workdir / "location_model.json"
    save_location_model(model, model_path)
    return [entries_path, model_path]


def run_match(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("match", workdir)
    entries = read_entries_jsonl(workdir / "entries_final.jsonl")
    grouped = _editions_in_order(entries)
    e1 = _locations_of(grouped.get(EditionId.FIRST, []))
    e2 = _locations_of(grouped.get(EditionId.SECOND, []))
    embedder = _embedder(config, workdir)
    index = build_index(e2, embedder, method=config.matching.index_method, seed=config.seed)
    result = match_editions(
        e1,
        index,
        embedder,
        threshold=config.matching.threshold,
        k=config.matching.candidates,
    )
    matches_path = workdir / "matches.jsonl"
    added_path = workdir / "added.jsonl"
    write_match_jsonl(result, matches_path, added_path)
    return [matches_path, added_path]


def run_link(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("link", workdir)
    entries = read_entries_jsonl(workdir / "entries_final.jsonl")
    grouped = _editions_in_order(entries)
    client = ApiClient(
        mode=config.linking.api_mode,
        fixture_dir=_resolve(config.linking.fixture_dir, workdir)
        if config.linking.api_mode in ("record", "replay")
        else None,
        requests_per_second=config.linking.rate_limit,
    )
    embedder = _embedder(config, workdir)
    artifacts = []
    for edition, name in ((EditionId.FIRST, "links_first.jsonl"), (EditionId.SECOND, "links_second.jsonl")):
        links = link_entries(
            grouped.get(edition, []),
            client,
            embedder,
            threshold=config.linking.threshold,
            k=config.linking.search_k,
            expand_spelling=config.linking.expand_spelling,
        )
        path = workdir / name
        write_links_jsonl(links, path)
        artifacts.append(path)
    return artifacts


def run_stats(config: PipelineConfig, workdir: Path, manifest: RunManifest) -> list[Path]:
    _require_inputs("stats", workdir)
    from ..wikilinker import read_links_jsonl

    entries = read_entries_jsonl(workdir / "entries_final.jsonl")
    entries_by_id = {e.entry_id: e for e in entries}
    links = {
        EditionId.FIRST: read_links_jsonl(workdir / "links_first.jsonl"),
        EditionId.SECOND: read_links_jsonl(workdir / "links_second.jsonl"),
    }
    boundaries = load_boundaries()
    s1 = summarize(links[EditionId.FIRST], boundaries, EditionId.FIRST)
    s2 = summarize(links[EditionId.SECOND], boundaries, EditionId.SECOND)
    increases, decreases = country_deltas(s1, s2)

    out_dir = workdir / "geostats"
    out_dir.mkdir(parents=True, exist_ok=True)
    summaries_path = out_dir / "summaries.json"
    atomic_write_text(
        summaries_path,
        json.dumps(
            {
                "first": s1.to_record(),
                "second": s2.to_record(),
                "top_increases": [
                    {"country": d.country_code, "delta_pp": d.delta_pp} for d in increases
                ],
                "top_decreases": [
                    {"country": d.country_code, "delta_pp": d.delta_pp} for d in decreases
                ],
            },
            ensure_ascii=False,
            sort_keys=True,
            indent=1,
        )
        + "\n",
    )
    shares_path = out_dir / "continent_shares.csv"
    write_continent_shares_csv([s1, s2], shares_path)
    deltas_path = out_dir / "country_deltas.csv"
    write_country_deltas_csv(s1, s2, deltas_path)
    map_path = out_dir / "map.geojson"
    emit_map_data(links, entries_by_id, map_path)
    return [summaries_path, shares_path, deltas_path, map_path]


STAGE_RUNNERS = {
    "ingest": run_ingest,
    "segment": run_segment,
    "crossref": run_crossref,
    "classify-locations": run_classify_locations,
    "match": run_match,
    "link": run_link,
    "stats": run_stats,
}


def run_stage(stage: str, config: PipelineConfig, workdir: str | Path) -> list[Path]:
    """Run one stage; returns the artifact paths it wrote."""
    if stage not in STAGE_RUNNERS:
        raise ConfigError(f"unknown stage {stage!r}; expected one of {STAGE_ORDER}")
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(workdir)
    manifest.set_config(config.snapshot())
    artifacts = STAGE_RUNNERS[stage](config, workdir, manifest)
    manifest.record_stage(stage, artifacts)
    logger.info("stage %s wrote %d artifacts", stage, len(artifacts))
    return artifacts


def run_all(config: PipelineConfig, workdir: str | Path) -> dict[str, list[Path]]:
    return {stage: run_stage(stage, config, workdir) for stage in STAGE_ORDER}
