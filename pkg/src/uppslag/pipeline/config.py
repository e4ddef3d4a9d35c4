"""Pipeline configuration.

One YAML file; every threshold the pipeline depends on is a named key with
its default here, so a run manifest's config snapshot fully determines
behavior. Unknown keys are rejected rather than ignored.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import yaml

from ..errors import ConfigError


def _from_mapping(cls, data: dict, context: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{context}: expected a mapping, got {type(data).__name__}")
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{context}: unknown keys {sorted(unknown)}")
    return cls(**data)


@dataclass
class CorpusConfig:
    store: str = "corpus"


@dataclass
class SegmenterConfig:
    index_match_threshold: float = 0.15
    truncate_chars: int = 200
    ngram_dims: int = 2**16
    ngram_orders: list[int] = field(default_factory=lambda: [1, 2, 3])
    hash_seed: int = 0
    l2: float = 1e-4
    max_epochs: int = 500
    tol: float = 1e-6
    decision_threshold: float = 0.5


@dataclass
class CrossrefConfig:
    max_length: int = 60


@dataclass
class LocationsConfig:
    labels: str = "gold/location_labels.jsonl"
    threshold: float = 0.5


@dataclass
class EmbedderConfig:
    kind: str = "mock"
    dim: int = 256
    endpoint_or_path: str = ""
    batch_size: int = 64


@dataclass
class MatchingConfig:
    threshold: float = 0.9
    candidates: int = 10
    index_method: str = "exact"


@dataclass
class LinkingConfig:
    api_mode: str = "replay"
    fixture_dir: str = "fixtures/api"
    rate_limit: float = 2.0
    threshold: float = 0.6
    search_k: int = 5
    expand_spelling: bool = False


@dataclass
class EvaluationConfig:
    within_radius_km: float = 25.0


@dataclass
class PipelineConfig:
    seed: int = 0
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    segmenter: SegmenterConfig = field(default_factory=SegmenterConfig)
    crossref: CrossrefConfig = field(default_factory=CrossrefConfig)
    locations: LocationsConfig = field(default_factory=LocationsConfig)
    embedder: EmbedderConfig = field(default_factory=EmbedderConfig)
    matching: MatchingConfig = field(default_factory=MatchingConfig)
    linking: LinkingConfig = field(default_factory=LinkingConfig)
    evaluation: EvaluationConfig = field(default_factory=EvaluationConfig)

    def snapshot(self) -> dict:
        return asdict(self)


_SECTIONS = {
    "corpus": CorpusConfig,
    "segmenter": SegmenterConfig,
    "crossref": CrossrefConfig,
    "locations": LocationsConfig,
    "embedder": EmbedderConfig,
    "matching": MatchingConfig,
    "linking": LinkingConfig,
    "evaluation": EvaluationConfig,
}


def config_from_dict(data: dict) -> PipelineConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(data) - set(_SECTIONS) - {"seed"}
    if unknown:
        raise ConfigError(f"unknown config sections {sorted(unknown)}")
    kwargs = {}
    if "seed" in data:
        if not isinstance(data["seed"], int):
            raise ConfigError("seed must be an integer")
        kwargs["seed"] = data["seed"]
    for name, cls in _SECTIONS.items():
        if name in data:
            kwargs[name] = _from_mapping(cls, data[name], name)
    config = PipelineConfig(**kwargs)
    _validate(config)
    return config


def _validate(config: PipelineConfig) -> None:
    if not 0.0 <= config.matching.threshold <= 1.0:
        raise ConfigError("matching.threshold must be in [0, 1]")
    if not 0.0 <= config.linking.threshold <= 1.0:
        raise ConfigError("linking.threshold must be in [0, 1]")
    if config.segmenter.index_match_threshold < 0:
        raise ConfigError("segmenter.index_match_threshold must be non-negative")
    if config.segmenter.truncate_chars <= 0:
        raise ConfigError("segmenter.truncate_chars must be positive")
    if config.crossref.max_length <= 0:
        raise ConfigError("crossref.max_length must be positive")
    if config.embedder.dim <= 0:
        raise ConfigError("embedder.dim must be positive")
    if config.evaluation.within_radius_km <= 0:
        raise ConfigError("evaluation.within_radius_km must be positive")
    if config.linking.api_mode not in ("live", "record", "replay"):
        raise ConfigError("linking.api_mode must be live, record or replay")
    if config.matching.index_method not in ("exact", "hnsw"):
        raise ConfigError("matching.index_method must be exact or hnsw")


def load_config(path: str | Path | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    raw = Path(path).read_text(encoding="utf-8")
    data = yaml.safe_load(raw)
    if data is None:
        data = {}
    return config_from_dict(data)
