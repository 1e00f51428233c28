"""Run manifests, JSONL result records, and CSV tables.

Every JSONL file starts with its manifest record; result records carry no
timestamps, so identical configurations produce byte-identical payload
lines regardless of worker count. Floats round-trip: JSON uses Python's
shortest-repr serialization and CSV uses 17 significant digits.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

RECORD_KINDS = ("witness", "coverage", "gap", "bound", "eval")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, no whitespace, no NaN."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      allow_nan=False)


def config_digest(cfg: dict) -> str:
    """SHA-256 hex digest of the canonicalized configuration."""
    return hashlib.sha256(canonical_json(cfg).encode("utf-8")).hexdigest()


def fmt17(x: float) -> str:
    """17-significant-digit decimal form (lossless for binary64)."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass
class RunManifest:
    command: str
    config_digest: str
    started: str
    finished: str
    tool_version: str
    seed: int
    chunk_size: int | None = None

    def to_record(self) -> dict:
        rec = {
            "kind": "manifest",
            "command": self.command,
            "config_digest": self.config_digest,
            "started": self.started,
            "finished": self.finished,
            "tool_version": self.tool_version,
            "seed": self.seed,
        }
        if self.chunk_size is not None:
            rec["chunk_size"] = self.chunk_size
        return rec


@dataclass
class ResultLog:
    """Accumulates result records; the manifest is written first at flush."""

    command: str
    config: dict
    tool_version: str
    seed: int = 0
    chunk_size: int | None = None
    records: list = field(default_factory=list)
    started: str = field(default_factory=lambda: _now())

    def add(self, kind: str, payload: dict):
        if kind not in RECORD_KINDS:
            raise ValueError(f"unknown record kind {kind!r}")
        self.records.append({"kind": kind, "payload": payload})

    @property
    def digest(self) -> str:
        return config_digest(self.config)

    def write(self, path):
        manifest = RunManifest(
            command=self.command,
            config_digest=self.digest,
            started=self.started,
            finished=_now(),
            tool_version=self.tool_version,
            seed=self.seed,
            chunk_size=self.chunk_size,
        )
        lines = [canonical_json(manifest.to_record())]
        lines += [canonical_json(r) for r in self.records]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def read_jsonl(path) -> list[dict]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(json.loads(line))
    return out


def payload_lines(path) -> list[str]:
    """The non-manifest lines of a JSONL file, for byte comparisons."""
    return [ln for ln in Path(path).read_text(encoding="utf-8").splitlines()
            if ln.strip() and json.loads(ln).get("kind") != "manifest"]


def write_csv(path, header, rows):
    """Plain CSV with 17-significant-digit floats."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt17(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
