"""Knowledge-graph API client with live, record and replay modes.

Every request is identified by the sha256 of its canonical form (service
name plus sorted params). Replay mode resolves requests purely against a
fixture directory of ``<key>.json`` response bodies; record mode performs
live requests and persists them in that layout, so a recorded session can
be committed and replayed in tests. Live requests are rate limited and
retried with exponential backoff.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from pathlib import Path

from ..errors import ApiUnavailable, ConfigError, FixtureMiss

logger = logging.getLogger(__name__)

KG_API_ENDPOINT = "https://www.wikidata.org/w/api.php"
ARTICLE_API_ENDPOINT = "https://sv.wikipedia.org/w/api.php"
USER_AGENT = "uppslag/0.1 (encyclopedia location linking)"

MODES = ("live", "record", "replay")


def request_key(service: str, params: dict) -> str:
    canonical = json.dumps({"service": service, "params": params}, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ApiClient:
    def __init__(
        self,
        mode: str = "replay",
        fixture_dir: str | Path | None = None,
        requests_per_second: float = 2.0,
        max_retries: int = 4,
        timeout: float = 30.0,
        search_endpoint: str = KG_API_ENDPOINT,
        article_endpoint: str = ARTICLE_API_ENDPOINT,
    ):
        if mode not in MODES:
            raise ConfigError(f"api mode must be one of {MODES}, got {mode!r}")
        if mode in ("record", "replay") and fixture_dir is None:
            raise ConfigError(f"{mode} mode needs a fixture directory")
        self.mode = mode
        self.fixture_dir = Path(fixture_dir) if fixture_dir is not None else None
        self.min_interval = 1.0 / requests_per_second if requests_per_second > 0 else 0.0
        self.max_retries = max_retries
        self.timeout = timeout
        self.endpoints = {"search": search_endpoint, "entity": search_endpoint, "article": article_endpoint}
        self._memo: dict[str, dict] = {}
        self._last_request = 0.0

    def _fixture_path(self, key: str) -> Path:
        return self.fixture_dir / f"{key}.json"

    def _record(self, key: str, service: str, params: dict, body: dict) -> None:
        self.fixture_dir.mkdir(parents=True, exist_ok=True)
        self._fixture_path(key).write_text(
            json.dumps(body, ensure_ascii=False, sort_keys=True, indent=1) + "\n", encoding="utf-8"
        )
        with (self.fixture_dir / "index.jsonl").open("a", encoding="utf-8") as fh:
            fh.write(json.dumps({"key": key, "service": service, "params": params}, ensure_ascii=False) + "\n")

    def _live_get(self, service: str, params: dict) -> dict:
        import requests

        delay = 1.0
        last_error: Exception | None = None
        for attempt in range(self.max_retries):
            wait = self.min_interval - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            try:
                resp = requests.get(
                    self.endpoints[service],
                    params=params,
                    headers={"User-Agent": USER_AGENT},
                    timeout=self.timeout,
                )
                self._last_request = time.monotonic()
                if resp.status_code == 429 or resp.status_code >= 500:
                    raise ApiUnavailable(f"status {resp.status_code}")
                resp.raise_for_status()
                return resp.json()
            except Exception as exc:  # noqa: BLE001 - every failure is retryable here
                last_error = exc
                logger.warning("%s request failed (attempt %d): %s", service, attempt + 1, exc)
                time.sleep(delay)
                delay *= 2.0
        raise ApiUnavailable(f"{service} request failed after {self.max_retries} attempts: {last_error}")

    def get(self, service: str, params: dict) -> dict:
        if service not in self.endpoints:
            raise ConfigError(f"unknown service {service!r}")
        key = request_key(service, params)
        if key in self._memo:
            return self._memo[key]

        body: dict | None = None
        if self.mode in ("replay", "record") and self._fixture_path(key).exists():
            body = json.loads(self._fixture_path(key).read_text(encoding="utf-8"))
        elif self.mode == "replay":
            raise FixtureMiss(f"no fixture for {service} request {params!r} (key {key})")
        else:
            body = self._live_get(service, params)
            if self.mode == "record":
                self._record(key, service, params, body)

        self._memo[key] = body
        return body
