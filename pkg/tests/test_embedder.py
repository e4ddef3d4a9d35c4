import json
import sys

import numpy as np
import pytest

from uppslag.embedder import (
    EmbeddingProviderSpec,
    FileEmbedder,
    MockEmbedder,
    cosine_similarity,
    l2_normalize,
    make_embedder,
    read_store,
    text_key,
    write_store,
    write_store_jsonl,
)
from uppslag.embedder.external import StdioEmbedder
from uppslag.errors import (
    ConfigError,
    DimMismatch,
    EmptyText,
    MissingEmbedding,
    ProviderUnavailable,
    ZeroVector,
)

# Minimal conforming provider used to exercise the stdio client without the
# real service: echoes ids and returns a deterministic unit vector per text.
FAKE_PROVIDER = r"""
import json, sys, hashlib
for line in sys.stdin:
    line = line.strip()
    if not line:
        continue
    req = json.loads(line)
    h = hashlib.sha256(req["text"].encode()).digest()
    vec = [((b / 255.0) - 0.5) for b in h[:8]]
    norm = sum(v * v for v in vec) ** 0.5
    vec = [v / norm for v in vec]
    print(json.dumps({"id": req["id"], "vector": vec, "dim": 8}))
    sys.stdout.flush()
"""


class TestMock:
    def test_identical_texts_identical_vectors(self, mock_embedder):
        a, b = mock_embedder.embed(["x", "x"])
        assert np.array_equal(a, b)

    def test_self_similarity_is_one(self, mock_embedder):
        a = mock_embedder.embed(["abc"])[0]
        b = mock_embedder.embed(["abc"])[0]
        assert cosine_similarity(a, b) == pytest.approx(1.0)

    def test_confusable_texts_closer_than_noise(self, mock_embedder):
        v = mock_embedder.embed(
            ["Åker socken Jönköping", "Åsenhöga socken Jönköping", "zzzz qqqq"]
        )
        close = cosine_similarity(v[0], v[1])
        far = cosine_similarity(v[0], v[2])
        assert close > far

    def test_pure_function_of_text_dim_seed(self):
        a = MockEmbedder(dim=64, seed=3).embed(["Åker"])
        b = MockEmbedder(dim=64, seed=3).embed(["Åker"])
        c = MockEmbedder(dim=64, seed=4).embed(["Åker"])
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_rows_unit_norm(self, mock_embedder):
        vecs = mock_embedder.embed(["a", "ab", "abc socken"])
        norms = np.linalg.norm(vecs, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-6)

    def test_empty_text_raises(self, mock_embedder):
        with pytest.raises(EmptyText):
            mock_embedder.embed([""])


class TestCosine:
    def test_self(self):
        v = np.array([0.3, 0.4, 0.5])
        assert cosine_similarity(v, v) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert cosine_similarity(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0

    def test_hand_value(self):
        a = np.array([1.0, 1.0]) / np.sqrt(2)
        b = np.array([1.0, 0.0])
        assert cosine_similarity(a, b) == pytest.approx(0.7071, abs=1e-4)

    def test_symmetry_and_bound(self, mock_embedder):
        vs = mock_embedder.embed(["en text", "annan text", "tredje text"])
        for i in range(3):
            for j in range(3):
                s = cosine_similarity(vs[i], vs[j])
                assert s == cosine_similarity(vs[j], vs[i])
                assert abs(s) <= 1 + 1e-12

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            cosine_similarity(np.zeros(3), np.ones(3))

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            cosine_similarity(np.ones(3), np.ones(4))


class TestFileStore:
    def test_round_trip_bitwise(self, tmp_path, mock_embedder):
        texts = ["Abo. stad i Finland.", "Öved. socken i Malmöhus län."]
        vectors = mock_embedder.embed(texts)
        store_path = tmp_path / "store.embf"
        write_store(store_path, 256, mock_embedder.provider_tag, dict(zip(texts, vectors)))
        dim, tag, records = read_store(store_path)
        assert dim == 256 and tag == mock_embedder.provider_tag
        for text, vec in zip(texts, vectors):
            assert np.array_equal(records[text_key(text)], vec.astype(np.float32))

    def test_writer_is_order_independent(self, tmp_path, mock_embedder):
        texts = ["a", "b", "c"]
        vecs = mock_embedder.embed(texts)
        items = dict(zip(texts, vecs))
        p1, p2 = tmp_path / "s1", tmp_path / "s2"
        write_store(p1, 256, "t", items)
        write_store(p2, 256, "t", dict(reversed(list(items.items()))))
        assert p1.read_bytes() == p2.read_bytes()

    def test_file_embedder_lookup_and_miss(self, tmp_path, mock_embedder):
        texts = ["känd text"]
        write_store(tmp_path / "s.embf", 256, "tag", dict(zip(texts, mock_embedder.embed(texts))))
        fe = FileEmbedder(tmp_path / "s.embf")
        assert fe.embed(["känd text"]).shape == (1, 256)
        with pytest.raises(MissingEmbedding):
            fe.embed(["okänd text"])

    def test_jsonl_debug_form(self, tmp_path, mock_embedder):
        texts = ["x"]
        vecs = dict(zip(texts, mock_embedder.embed(texts)))
        write_store(tmp_path / "s.embf", 256, "tag", vecs)
        _, _, records = read_store(tmp_path / "s.embf")
        write_store_jsonl(tmp_path / "s.jsonl", 256, "tag", records)
        lines = (tmp_path / "s.jsonl").read_text().splitlines()
        assert json.loads(lines[0]) == {"dim": 256, "provider_tag": "tag"}
        row = json.loads(lines[1])
        assert row["sha256"] == text_key("x").hex()
        assert len(row["vector"]) == 256


class TestExternal:
    def test_stdio_round_trip_normalized_and_deterministic(self):
        with StdioEmbedder([sys.executable, "-c", FAKE_PROVIDER], dim=8, batch_size=2) as emb:
            out1 = emb.embed(["alpha", "beta", "gamma"])
            out2 = emb.embed(["alpha", "beta", "gamma"])
        assert out1.shape == (3, 8)
        assert np.allclose(np.linalg.norm(out1, axis=1), 1.0, atol=1e-6)
        assert np.array_equal(out1, out2)

    def test_unavailable_provider(self):
        emb = StdioEmbedder(["/nonexistent/provider"], dim=8)
        with pytest.raises(ProviderUnavailable):
            emb.embed(["x"])

    def test_dim_mismatch_from_provider(self):
        with StdioEmbedder([sys.executable, "-c", FAKE_PROVIDER], dim=16) as emb:
            with pytest.raises(DimMismatch):
                emb.embed(["x"])


class TestFactory:
    def test_mock_spec(self):
        emb = make_embedder(EmbeddingProviderSpec(kind="mock", dim=32, seed=1))
        assert emb.dim == 32 and emb.provider_tag == "mock:32:1"

    def test_file_spec_dim_check(self, tmp_path, mock_embedder):
        path = tmp_path / "s.embf"
        write_store(path, 256, "tag", {"t": mock_embedder.embed(["t"])[0]})
        with pytest.raises(ConfigError):
            make_embedder(EmbeddingProviderSpec(kind="file", dim=64, endpoint_or_path=str(path)))

    def test_invalid_kind(self):
        with pytest.raises(ConfigError):
            EmbeddingProviderSpec(kind="magic", dim=8)

    def test_normalize_helper_keeps_zero_rows(self):
        out = l2_normalize(np.zeros((2, 4)))
        assert np.array_equal(out, np.zeros((2, 4), dtype=np.float32))
