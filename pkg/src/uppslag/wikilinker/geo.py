"""Great-circle distance on the mean-radius sphere."""

from __future__ import annotations

import math

from ..errors import RangeError

EARTH_RADIUS_KM = 6371.0


def check_coords(lat: float, lon: float) -> None:
    if not (-90.0 <= lat <= 90.0):
        raise RangeError(f"latitude {lat} out of range")
    if not (-180.0 <= lon <= 180.0):
        raise RangeError(f"longitude {lon} out of range")


def haversine_km(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Distance in km between (lat, lon) points, haversine formulation."""
    check_coords(*a)
    check_coords(*b)
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return EARTH_RADIUS_KM * 2.0 * math.asin(min(1.0, math.sqrt(h)))
