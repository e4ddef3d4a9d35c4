"""Run manifest: the audit record tying artifacts to the config that made them."""

from __future__ import annotations

import hashlib
import json
import os
from datetime import datetime, timezone
from pathlib import Path

MANIFEST_NAME = "run_manifest.json"


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class RunManifest:
    def __init__(self, workdir: str | Path):
        self.workdir = Path(workdir)
        self.path = self.workdir / MANIFEST_NAME
        if self.path.exists():
            self.data = json.loads(self.path.read_text(encoding="utf-8"))
        else:
            self.data = {"config": None, "stages": {}, "provider_tags": {}}

    def set_config(self, snapshot: dict) -> None:
        self.data["config"] = snapshot

    def set_provider_tag(self, name: str, tag: str) -> None:
        self.data["provider_tags"][name] = tag

    def record_stage(self, stage: str, artifacts: list[Path]) -> None:
        self.data["stages"][stage] = {
            "artifacts": {
                str(p.relative_to(self.workdir)): file_sha256(p) for p in sorted(artifacts)
            },
            "completed_at": datetime.now(timezone.utc).isoformat(),
        }
        self.save()

    def stage_done(self, stage: str) -> bool:
        return stage in self.data["stages"]

    def checksums(self, stage: str) -> dict[str, str]:
        return dict(self.data["stages"].get(stage, {}).get("artifacts", {}))

    def save(self) -> None:
        self.workdir.mkdir(parents=True, exist_ok=True)
        atomic_write_text(self.path, json.dumps(self.data, indent=1, sort_keys=True) + "\n")
