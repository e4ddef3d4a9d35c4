import io
import json
import subprocess
import sys
import threading

import numpy as np
import pytest

from embed_service import (
    HashedNgramBackend,
    ModelLoadError,
    load_backend,
    precompute,
    run_http_in_thread,
    serve_stdio,
)

BACKEND_SPEC = "hash:128:0"


def run_stdio(lines: list[str], batch_size: int = 64) -> list[dict]:
    backend = load_backend(BACKEND_SPEC)
    stdout = io.StringIO()
    serve_stdio(backend, io.StringIO("".join(l + "\n" for l in lines)), stdout, batch_size)
    return [json.loads(l) for l in stdout.getvalue().splitlines()]


class TestBackends:
    def test_unknown_spec(self):
        with pytest.raises(ModelLoadError):
            load_backend("magic:7")

    def test_bad_hash_spec(self):
        with pytest.raises(ModelLoadError):
            load_backend("hash:notanumber")

    def test_unit_norm_and_determinism(self):
        backend = HashedNgramBackend(dim=64, seed=1)
        a = backend.encode(["Åbo är en stad i Finland."])
        b = backend.encode(["Åbo är en stad i Finland."])
        assert np.array_equal(a, b)
        assert abs(float(np.linalg.norm(a[0])) - 1.0) <= 1e-6


class TestStdioProtocol:
    def test_ids_echoed_in_order(self):
        requests = [json.dumps({"id": f"r{i}", "text": f"text nummer {i}"}) for i in range(7)]
        responses = run_stdio(requests, batch_size=3)
        assert [r["id"] for r in responses] == [f"r{i}" for i in range(7)]
        assert all(r["dim"] == 128 for r in responses)

    def test_vectors_unit_norm(self):
        responses = run_stdio([json.dumps({"id": "1", "text": "en svensk mening"})])
        norm = float(np.linalg.norm(responses[0]["vector"]))
        assert abs(norm - 1.0) <= 1e-6

    def test_identical_texts_identical_vectors(self):
        responses = run_stdio(
            [json.dumps({"id": "a", "text": "x"}), json.dumps({"id": "b", "text": "x"})]
        )
        assert responses[0]["vector"] == responses[1]["vector"]

    def test_malformed_line_reports_number_and_stream_continues(self):
        responses = run_stdio(
            [
                json.dumps({"id": "1", "text": "före"}),
                "this is not json",
                json.dumps({"id": "2", "text": "efter"}),
            ]
        )
        assert responses[0]["id"] == "1"
        assert "error" in responses[1] and responses[1]["line"] == 2
        assert responses[2]["id"] == "2"

    def test_missing_fields_is_an_error(self):
        responses = run_stdio([json.dumps({"id": "1"})])
        assert "error" in responses[0] and responses[0]["line"] == 1

    def test_batch_vs_single_request_agree(self):
        texts = [f"mening nummer {i} om orter och socknar" for i in range(25)]
        requests = [json.dumps({"id": str(i), "text": t}) for i, t in enumerate(texts)]
        batched = run_stdio(requests, batch_size=64)
        singles = run_stdio(requests, batch_size=1)
        for a, b in zip(batched, singles):
            assert np.allclose(a["vector"], b["vector"], atol=1e-6)

    def test_subprocess_end_to_end(self):
        proc = subprocess.run(
            [sys.executable, "-m", "embed_service.cli", "serve", "--model", BACKEND_SPEC],
            input="\n".join(
                json.dumps({"id": str(i), "text": f"rad {i}"}) for i in range(3)
            )
            + "\n",
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0, proc.stderr
        responses = [json.loads(l) for l in proc.stdout.splitlines()]
        assert [r["id"] for r in responses] == ["0", "1", "2"]

    def test_dim_check_flag(self):
        proc = subprocess.run(
            [sys.executable, "-m", "embed_service.cli", "serve", "--model", BACKEND_SPEC, "--dim-check", "999"],
            input="",
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 2
        assert "dimension" in proc.stderr


class TestHttp:
    def test_array_and_single_shapes(self):
        import requests as rq

        backend = load_backend(BACKEND_SPEC)
        server, port = run_http_in_thread(backend)
        try:
            url = f"http://127.0.0.1:{port}/embed"
            single = rq.post(url, json={"id": "a", "text": "ensam"}, timeout=10).json()
            assert single["id"] == "a" and single["dim"] == 128
            batch = rq.post(
                url,
                json=[{"id": "x", "text": "ett"}, {"id": "y", "text": "två"}],
                timeout=10,
            ).json()
            assert [r["id"] for r in batch] == ["x", "y"]
            bad = rq.post(url, data=b"not json", timeout=10)
            assert bad.status_code == 400
        finally:
            server.shutdown()

    def test_concurrent_clients(self):
        import requests as rq

        backend = load_backend(BACKEND_SPEC)
        server, port = run_http_in_thread(backend)
        url = f"http://127.0.0.1:{port}/embed"
        results = {}

        def worker(tag):
            payload = [{"id": f"{tag}-{i}", "text": f"{tag} text {i}"} for i in range(10)]
            results[tag] = rq.post(url, json=payload, timeout=20).json()

        try:
            threads = [threading.Thread(target=worker, args=(f"t{k}",)) for k in range(4)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        finally:
            server.shutdown()
        for tag, responses in results.items():
            assert [r["id"] for r in responses] == [f"{tag}-{i}" for i in range(10)]


class TestPrecompute:
    def test_empty_input_header_only(self, tmp_path):
        backend = load_backend(BACKEND_SPEC)
        out = tmp_path / "empty.embf"
        stored = precompute(backend, [], out)
        assert stored == 0
        raw = out.read_bytes()
        assert raw[:4] == b"EMBF"
        # header only: magic + 3 u32 + tag
        assert len(raw) == 4 + 12 + len(backend.tag.encode())

    def test_duplicates_stored_once(self, tmp_path):
        backend = load_backend(BACKEND_SPEC)
        out = tmp_path / "dup.embf"
        stored = precompute(backend, ["samma text", "samma text", "annan text"], out)
        assert stored == 2

    def test_cli_precompute(self, tmp_path):
        inp = tmp_path / "texts.jsonl"
        inp.write_text(
            "".join(json.dumps({"id": str(i), "text": f"text {i}"}) + "\n" for i in range(3))
        )
        out = tmp_path / "out.embf"
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "embed_service.cli",
                "precompute",
                str(inp),
                str(out),
                "--model",
                BACKEND_SPEC,
            ],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists() and "stored 3 vectors" in proc.stderr


class TestAcceptance:
    """The cross-component criterion: the service must interoperate with the
    pipeline package purely through the documented wire and file formats."""

    def test_protocol_conformance_and_file_round_trip(self, tmp_path):
        uppslag = pytest.importorskip("uppslag.embedder")

        texts = [f"Ort nummer {i}, socken i {chr(65 + i)}-län med kyrka." for i in range(10)]
        backend = load_backend("hash:256:0")

        requests = [json.dumps({"id": f"n{i}", "text": t}) for i, t in enumerate(texts)]
        stdout = io.StringIO()
        serve_stdio(backend, io.StringIO("".join(r + "\n" for r in requests)), stdout, 4)
        responses = [json.loads(l) for l in stdout.getvalue().splitlines()]
        ids_ok = [r["id"] for r in responses] == [f"n{i}" for i in range(10)]
        norms_ok = all(
            abs(float(np.linalg.norm(r["vector"])) - 1.0) <= 1e-6 for r in responses
        )

        store_path = tmp_path / "vectors.embf"
        precompute(backend, texts, store_path)
        file_embedder = uppslag.FileEmbedder(store_path)
        recovered = file_embedder.embed(texts)
        round_trip_ok = all(
            np.allclose(recovered[i], np.asarray(responses[i]["vector"], dtype=np.float32), atol=1e-6)
            for i in range(10)
        )

        singles = []
        for i, t in enumerate(texts):
            out = io.StringIO()
            serve_stdio(backend, io.StringIO(json.dumps({"id": str(i), "text": t}) + "\n"), out, 1)
            singles.append(json.loads(out.getvalue())["vector"])
        batch_vs_single_ok = all(
            np.allclose(singles[i], responses[i]["vector"], atol=1e-6) for i in range(10)
        )

        status = ids_ok and norms_ok and round_trip_ok and batch_vs_single_ok
        print(f"ACCEPTANCE embed-service-protocol: {'PASS' if status else 'FAIL'}")
        assert status
