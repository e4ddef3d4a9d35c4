"""Provider spec and factory for the three embedder implementations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from ..errors import ConfigError
from .filestore import FileEmbedder
from .mock import DEFAULT_MOCK_DIM, MockEmbedder


@runtime_checkable
class Embedder(Protocol):
    kind: str
    dim: int
    provider_tag: str

    def embed(self, texts: list[str]) -> np.ndarray: ...


@dataclass(frozen=True)
class EmbeddingProviderSpec:
    kind: str  # "mock" | "file" | "external"
    dim: int = DEFAULT_MOCK_DIM
    endpoint_or_path: str = ""
    seed: int = 0
    batch_size: int = 64

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ConfigError("embedder dim must be positive")
        if self.kind not in ("mock", "file", "external"):
            raise ConfigError(f"unknown embedder kind {self.kind!r}")


def make_embedder(spec: EmbeddingProviderSpec) -> Embedder:
    if spec.kind == "mock":
        return MockEmbedder(dim=spec.dim, seed=spec.seed)
    if spec.kind == "file":
        if not spec.endpoint_or_path:
            raise ConfigError("file embedder needs a store path")
        embedder = FileEmbedder(spec.endpoint_or_path)
        if embedder.dim != spec.dim:
            raise ConfigError(f"store dim {embedder.dim} != configured dim {spec.dim}")
        return embedder
    # external: an HTTP endpoint or a command line to spawn
    from .external import HttpEmbedder, StdioEmbedder

    if not spec.endpoint_or_path:
        raise ConfigError("external embedder needs an endpoint or command")
    if spec.endpoint_or_path.startswith(("http://", "https://")):
        return HttpEmbedder(spec.endpoint_or_path, dim=spec.dim, batch_size=spec.batch_size)
    return StdioEmbedder(spec.endpoint_or_path.split(), dim=spec.dim, batch_size=spec.batch_size)
