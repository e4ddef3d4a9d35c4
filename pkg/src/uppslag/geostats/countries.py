"""Country assignment from coordinates.

Backed by the bundled low-resolution boundary file (``data/countries.json``,
hand-simplified from public-domain reference maps). Point-in-polygon runs in
dataset order and the first hit wins; points outside every polygon fall back
to the nearest country centroid within 100 km, else stay unassigned (open
ocean). Modern borders only; this is an explicit, documented approximation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from ..wikilinker.geo import check_coords, haversine_km

CENTROID_FALLBACK_KM = 100.0


@dataclass(frozen=True)
class Country:
    code: str
    name: str
    continent: str
    centroid: tuple[float, float]  # (lat, lon)
    polygons: tuple[tuple[tuple[float, float], ...], ...]  # rings of (lon, lat)


@dataclass(frozen=True)
class BoundarySet:
    countries: tuple[Country, ...]

    def continent_of(self, code: str) -> Optional[str]:
        for country in self.countries:
            if country.code == code:
                return country.continent
        return None


def _point_in_ring(lon: float, lat: float, ring: tuple[tuple[float, float], ...]) -> bool:
    inside = False
    j = len(ring) - 1
    for i in range(len(ring)):
        xi, yi = ring[i]
        xj, yj = ring[j]
        if (yi > lat) != (yj > lat):
            cross = (xj - xi) * (lat - yi) / (yj - yi) + xi
            if lon < cross:
                inside = not inside
        j = i
    return inside


@lru_cache(maxsize=4)
def _load_boundaries(path: str | None) -> BoundarySet:
    if path is None:
        text = (
            resources.files("uppslag.geostats")
            .joinpath("data/countries.json")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text)
    countries = tuple(
        Country(
            code=c["code"],
            name=c["name"],
            continent=c["continent"],
            centroid=(c["centroid"][0], c["centroid"][1]),
            polygons=tuple(tuple((p[0], p[1]) for p in ring) for ring in c["polygons"]),
        )
        for c in raw["countries"]
    )
    return BoundarySet(countries=countries)


def load_boundaries(path: str | Path | None = None) -> BoundarySet:
    return _load_boundaries(str(path) if path is not None else None)


def assign_country(lat: float, lon: float, boundaries: BoundarySet) -> Optional[str]:
    """ISO-style code for the point, or None on open ocean."""
    check_coords(lat, lon)
    for country in boundaries.countries:
        for ring in country.polygons:
            if _point_in_ring(lon, lat, ring):
                return country.code
    nearest: Optional[tuple[float, str]] = None
    for country in boundaries.countries:
        dist = haversine_km((lat, lon), country.centroid)
        if nearest is None or dist < nearest[0]:
            nearest = (dist, country.code)
    if nearest is not None and nearest[0] <= CENTROID_FALLBACK_KM:
        return nearest[1]
    return None
