from .api import (
    DescriptionSource,
    KgCandidate,
    fetch_description,
    get_entity,
    parse_p625,
    search_candidates,
)
from .client import ApiClient, request_key
from .geo import EARTH_RADIUS_KM, haversine_km
from .linking import (
    LINK_THRESHOLD,
    WITHIN_RADIUS_KM,
    LinkedLocation,
    evaluate_linking,
    link_entries,
    link_entry,
    read_links_jsonl,
    write_links_jsonl,
)

__all__ = [
    "ApiClient",
    "DescriptionSource",
    "EARTH_RADIUS_KM",
    "KgCandidate",
    "LINK_THRESHOLD",
    "LinkedLocation",
    "WITHIN_RADIUS_KM",
    "evaluate_linking",
    "fetch_description",
    "get_entity",
    "haversine_km",
    "link_entries",
    "link_entry",
    "parse_p625",
    "read_links_jsonl",
    "request_key",
    "search_candidates",
    "write_links_jsonl",
]
