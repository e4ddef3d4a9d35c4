"""File-based page store.

Layout: ``<root>/<edition>/<volume>/<page>.html`` plus a ``manifest.jsonl``
at the root with one record per page: {"edition", "volume", "page", "path"}.
An optional ``volumes.json`` maps edition -> volume -> string of initial
letters valid for that volume (used to build classifier training sets).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .model import EditionId, Page
from .parse import parse_page

MANIFEST_NAME = "manifest.jsonl"
VOLUMES_NAME = "volumes.json"


@dataclass(frozen=True)
class StoreRecord:
    edition: str
    volume: str
    page: str
    path: str


class PageStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST_NAME

    def add_page(self, edition: str, volume: str, page: str, raw_html: str) -> StoreRecord:
        rel = Path(edition) / volume / f"{page}.html"
        target = self.root / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(raw_html, encoding="utf-8")
        record = StoreRecord(edition=edition, volume=volume, page=page, path=str(rel))
        with self.manifest_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.__dict__, ensure_ascii=False) + "\n")
        return record

    def records(self) -> list[StoreRecord]:
        if not self.manifest_path.exists():
            return []
        out = []
        with self.manifest_path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(StoreRecord(**json.loads(line)))
        return out

    def read_raw(self, record: StoreRecord) -> str:
        return (self.root / record.path).read_text(encoding="utf-8")

    def iter_pages(self, edition: str | None = None) -> Iterator[Page]:
        """Parse pages in manifest order, optionally restricted to one edition."""
        for record in self.records():
            if edition is not None and record.edition != edition:
                continue
            yield parse_page(
                self.read_raw(record),
                EditionId(record.edition),
                record.volume,
                record.page,
            )

    def volume_letters(self) -> dict[str, dict[str, set[str]]]:
        path = self.root / VOLUMES_NAME
        if not path.exists():
            return {}
        raw = json.loads(path.read_text(encoding="utf-8"))
        return {ed: {vol: set(letters) for vol, letters in vols.items()} for ed, vols in raw.items()}

    def write_volume_letters(self, letters: dict[str, dict[str, str]]) -> None:
        path = self.root / VOLUMES_NAME
        path.write_text(json.dumps(letters, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def download_into_store(
    store: PageStore,
    items: Iterable[tuple[str, str, str, str]],
    fetch,
    requests_per_second: float = 1.0,
) -> list[StoreRecord]:
    """Fill a store from a sequence of (edition, volume, page, url).

    ``fetch`` is any callable url -> html string (e.g. a requests wrapper).
    Kept out of the test path on purpose: the pipeline itself only ever
    reads from the store.
    """
    min_interval = 1.0 / requests_per_second if requests_per_second > 0 else 0.0
    records = []
    last = 0.0
    for edition, volume, page, url in items:
        wait = min_interval - (time.monotonic() - last)
        if wait > 0:
            time.sleep(wait)
        raw = fetch(url)
        last = time.monotonic()
        records.append(store.add_page(edition, volume, page, raw))
    return records
