from .countries import BoundarySet, Country, assign_country, load_boundaries
from .summary import (
    CountryDelta,
    GeoSummary,
    country_deltas,
    emit_map_data,
    summarize,
    write_continent_shares_csv,
    write_country_deltas_csv,
)

__all__ = [
    "BoundarySet",
    "Country",
    "CountryDelta",
    "GeoSummary",
    "assign_country",
    "country_deltas",
    "emit_map_data",
    "load_boundaries",
    "summarize",
    "write_continent_shares_csv",
    "write_country_deltas_csv",
]
