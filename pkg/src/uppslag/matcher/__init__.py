from .hnsw import HnswGraph
from .index import VectorIndex, build_index
from .matching import (
    CANDIDATES_PER_QUERY,
    MATCH_THRESHOLD,
    MatchResult,
    baseline_headword_match,
    evaluate_matching,
    match_editions,
    read_match_jsonl,
    write_match_jsonl,
)

__all__ = [
    "CANDIDATES_PER_QUERY",
    "HnswGraph",
    "MATCH_THRESHOLD",
    "MatchResult",
    "VectorIndex",
    "baseline_headword_match",
    "build_index",
    "evaluate_matching",
    "match_editions",
    "read_match_jsonl",
    "write_match_jsonl",
]
