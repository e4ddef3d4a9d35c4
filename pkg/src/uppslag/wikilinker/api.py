"""Candidate retrieval against the knowledge-graph and article APIs.

Response shapes follow the public action APIs:

    search  -> {"search": [{"id": "Q…", "label": "…"}, …]}
    entity  -> {"entities": {"Q…": {"claims": …, "descriptions": …, "sitelinks": …}}}
    article -> {"query": {"pages": {"<id>": {"extract": "…"}}}}
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..errors import MalformedClaim
from .client import ApiClient

logger = logging.getLogger(__name__)

QID_RE = re.compile(r"^Q[0-9]+$")
DESCRIPTION_LEN = 200
SEARCH_LIMIT = 5
EARTH_GLOBE_QID = "Q2"
ARTICLE_LANG = "sv"


class DescriptionSource(str, Enum):
    WIKIPEDIA = "wikipedia"
    WIKIDATA_DESCRIPTION = "wikidata_description"


@dataclass(frozen=True)
class KgCandidate:
    qid: str
    label: str
    description_text: str
    description_source: DescriptionSource
    coordinates: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not QID_RE.match(self.qid):
            raise ValueError(f"malformed qid {self.qid!r}")
        if len(self.description_text) > DESCRIPTION_LEN:
            raise ValueError("description_text longer than the cap")
        if self.coordinates is not None:
            lat, lon = self.coordinates
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"coordinates {self.coordinates} out of range")


def parse_p625(claims: dict) -> Optional[tuple[float, float]]:
    """Coordinates from a claims mapping; None when absent or off-Earth.

    Raises MalformedClaim when the P625 structure is present but broken
    (missing values, wrong types, out-of-range degrees).
    """
    statements = claims.get("P625")
    if not statements:
        return None
    try:
        value = statements[0]["mainsnak"]["datavalue"]["value"]
        lat = float(value["latitude"])
        lon = float(value["longitude"])
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise MalformedClaim(f"unreadable coordinate claim: {exc}") from exc
    globe = value.get("globe", "")
    if globe and not globe.rstrip("/").endswith(EARTH_GLOBE_QID):
        return None
    if not (-90.0 <= lat <= 90.0) or not (-180.0 <= lon <= 180.0):
        raise MalformedClaim(f"coordinates ({lat}, {lon}) out of range")
    return lat, lon


def get_entity(qid: str, client: ApiClient) -> dict:
    body = client.get(
        "entity",
        {
            "action": "wbgetentities",
            "ids": qid,
            "props": "claims|descriptions|sitelinks",
            "format": "json",
        },
    )
    entity = body.get("entities", {}).get(qid)
    if entity is None:
        raise MalformedClaim(f"entity response missing {qid}")
    return entity


def _article_extract(title: str, client: ApiClient) -> Optional[str]:
    body = client.get(
        "article",
        {
            "action": "query",
            "titles": title,
            "prop": "extracts",
            "explaintext": 1,
            "exintro": 1,
            "format": "json",
        },
    )
    pages = body.get("query", {}).get("pages", {})
    for page in pages.values():
        extract = page.get("extract")
        if extract:
            return extract
    return None


def describe_entity(qid: str, entity: dict, client: ApiClient) -> tuple[str, DescriptionSource]:
    """Description text (capped) preferring the encyclopedia article intro."""
    sitelink = entity.get("sitelinks", {}).get(f"{ARTICLE_LANG}wiki", {}).get("title")
    if sitelink:
        extract = _article_extract(sitelink, client)
        if extract:
            return extract[:DESCRIPTION_LEN], DescriptionSource.WIKIPEDIA
    description = entity.get("descriptions", {}).get(ARTICLE_LANG, {}).get("value", "")
    return description[:DESCRIPTION_LEN], DescriptionSource.WIKIDATA_DESCRIPTION


def fetch_description(qid: str, client: ApiClient) -> tuple[str, DescriptionSource]:
    if not QID_RE.match(qid):
        raise ValueError(f"malformed qid {qid!r}")
    return describe_entity(qid, get_entity(qid, client), client)


def search_candidates(
    headword: str,
    client: ApiClient,
    k: int = SEARCH_LIMIT,
    expand_spelling: bool = False,
) -> list[KgCandidate]:
    """At most k candidates in API order, enriched with description and coords.

    ``expand_spelling`` retries a q->k spelling-reform variant when the
    verbatim headword yields nothing. Off by default.
    """
    if k <= 0:
        return []
    queries = [headword]
    if expand_spelling:
        variant = headword.replace("q", "k").replace("Q", "K")
        if variant != headword:
            queries.append(variant)

    hits: list[dict] = []
    for query in queries:
        body = client.get(
            "search",
            {
                "action": "wbsearchentities",
                "search": query,
                "language": ARTICLE_LANG,
                "limit": k,
                "format": "json",
            },
        )
        hits = body.get("search", [])[:k]
        if hits:
            break

    candidates: list[KgCandidate] = []
    for hit in hits:
        qid = hit["id"]
        entity = get_entity(qid, client)
        text, source = describe_entity(qid, entity, client)
        try:
            coords = parse_p625(entity.get("claims", {}))
        except MalformedClaim as exc:
            logger.warning("dropping coordinates of %s: %s", qid, exc)
            coords = None
        candidates.append(
            KgCandidate(
                qid=qid,
                label=hit.get("label", ""),
                description_text=text,
                description_source=source,
                coordinates=coords,
            )
        )
    return candidates
