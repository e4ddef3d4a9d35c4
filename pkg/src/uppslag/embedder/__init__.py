from .base import Embedder, EmbeddingProviderSpec, make_embedder
from .filestore import FileEmbedder, read_store, text_key, write_store, write_store_jsonl
from .mock import DEFAULT_MOCK_DIM, MockEmbedder
from .vectors import cosine_similarity, l2_normalize

__all__ = [
    "DEFAULT_MOCK_DIM",
    "Embedder",
    "EmbeddingProviderSpec",
    "FileEmbedder",
    "MockEmbedder",
    "cosine_similarity",
    "l2_normalize",
    "make_embedder",
    "read_store",
    "text_key",
    "write_store",
    "write_store_jsonl",
]
