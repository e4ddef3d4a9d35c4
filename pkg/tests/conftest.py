import json
from pathlib import Path

import pytest

from uppslag.embedder import MockEmbedder
from uppslag.pipeline import config_from_dict

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mock_embedder() -> MockEmbedder:
    return MockEmbedder(dim=256, seed=0)


@pytest.fixture()
def fixture_config(tmp_path):
    return config_from_dict(
        {
            "corpus": {"store": str(FIXTURES / "corpus")},
            "locations": {"labels": str(FIXTURES / "gold" / "location_labels.jsonl")},
            "linking": {"api_mode": "replay", "fixture_dir": str(FIXTURES / "api")},
        }
    )


def read_jsonl(path: Path) -> list[dict]:
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
