"""Aggregation of linked locations into distribution tables and map data."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..corpus.model import EditionId
from ..errors import IoError
from ..segmenter.entries import Entry
from ..wikilinker.linking import LinkedLocation
from .countries import BoundarySet, assign_country


@dataclass
class GeoSummary:
    edition_id: EditionId
    country_counts: dict[str, int] = field(default_factory=dict)
    continent_counts: dict[str, int] = field(default_factory=dict)
    total_linked: int = 0  # links with an assigned country
    unassigned: int = 0

    @property
    def continent_shares(self) -> dict[str, float]:
        if self.total_linked == 0:
            return {}
        return {c: n / self.total_linked for c, n in sorted(self.continent_counts.items())}

    @property
    def country_shares(self) -> dict[str, float]:
        if self.total_linked == 0:
            return {}
        return {c: n / self.total_linked for c, n in sorted(self.country_counts.items())}

    def to_record(self) -> dict:
        return {
            "edition": self.edition_id.value,
            "country_counts": dict(sorted(self.country_counts.items())),
            "continent_counts": dict(sorted(self.continent_counts.items())),
            "continent_shares": self.continent_shares,
            "total_linked": self.total_linked,
            "unassigned": self.unassigned,
        }


@dataclass(frozen=True)
class CountryDelta:
    country_code: str
    share_ed1: float
    share_ed2: float

    @property
    def delta_pp(self) -> float:
        return self.share_ed2 - self.share_ed1


def summarize(links: Iterable[LinkedLocation], boundaries: BoundarySet, edition_id: EditionId) -> GeoSummary:
    """Tally one edition's links by country and continent.

    Links that land in no country (open ocean under the coarse boundaries)
    are tracked in ``unassigned`` and excluded from the shares.
    """
    summary = GeoSummary(edition_id=edition_id)
    for link in links:
        code = assign_country(link.lat, link.lon, boundaries)
        if code is None:
            summary.unassigned += 1
            continue
        summary.total_linked += 1
        summary.country_counts[code] = summary.country_counts.get(code, 0) + 1
        continent = boundaries.continent_of(code)
        summary.continent_counts[continent] = summary.continent_counts.get(continent, 0) + 1
    return summary


def country_deltas(
    s1: GeoSummary,
    s2: GeoSummary,
    top_n: int = 5,
) -> tuple[list[CountryDelta], list[CountryDelta]]:
    """(top increases, top decreases) of per-country share between editions.

    Deltas are exact share differences; ties order by country code, so the
    ranking is a stable total order.
    """
    shares1 = s1.country_shares
    shares2 = s2.country_shares
    deltas = [
        CountryDelta(code, shares1.get(code, 0.0), shares2.get(code, 0.0))
        for code in sorted(set(shares1) | set(shares2))
    ]
    increases = sorted(deltas, key=lambda d: (-d.delta_pp, d.country_code))[:top_n]
    decreases = sorted(deltas, key=lambda d: (d.delta_pp, d.country_code))[:top_n]
    return increases, decreases


def emit_map_data(
    links_by_edition: dict[EditionId, list[LinkedLocation]],
    entries_by_id: dict[str, Entry],
    path: str | Path,
) -> None:
    """Write a GeoJSON point-feature file, one feature per link.

    Output is a deterministic function of the inputs: features are ordered
    by (edition, entry id) and floats serialize via repr.
    """
    features = []
    for edition in sorted(links_by_edition, key=lambda e: e.value):
        for link in sorted(links_by_edition[edition], key=lambda l: l.entry_id):
            entry = entries_by_id.get(link.entry_id)
            features.append(
                {
                    "type": "Feature",
                    "geometry": {"type": "Point", "coordinates": [link.lon, link.lat]},
                    "properties": {
                        "entry_id": link.entry_id,
                        "edition": edition.value,
                        "headword": entry.headword if entry else None,
                        "qid": link.qid,
                    },
                }
            )
    collection = {"type": "FeatureCollection", "features": features}
    try:
        with Path(path).open("w", encoding="utf-8") as fh:
            json.dump(collection, fh, ensure_ascii=False, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise IoError(f"cannot write map data to {path}: {exc}") from exc


def write_continent_shares_csv(summaries: list[GeoSummary], path: str | Path) -> None:
    try:
        with Path(path).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["edition", "continent", "count", "share"])
            for summary in summaries:
                shares = summary.continent_shares
                for continent in sorted(summary.continent_counts):
                    writer.writerow(
                        [
                            summary.edition_id.value,
                            continent,
                            summary.continent_counts[continent],
                            repr(shares[continent]),
                        ]
                    )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_country_deltas_csv(s1: GeoSummary, s2: GeoSummary, path: str | Path) -> None:
    shares1 = s1.country_shares
    shares2 = s2.country_shares
    deltas = [
        CountryDelta(code, shares1.get(code, 0.0), shares2.get(code, 0.0))
        for code in sorted(set(shares1) | set(shares2))
    ]
    deltas.sort(key=lambda d: (-d.delta_pp, d.country_code))
    try:
        with Path(path).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["country", "share_ed1", "share_ed2", "delta_pp"])
            for d in deltas:
                writer.writerow([d.country_code, repr(d.share_ed1), repr(d.share_ed2), repr(d.delta_pp)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
