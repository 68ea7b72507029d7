"""Content-addressed on-disk cache of serialized tables."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__

ENV_CACHE_DIR = "SUBDUCTION_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "subduction"


def job_key(spec: dict) -> str:
    """SHA-256 of the canonical JSON of ``spec`` plus the engine version."""
    payload = json.dumps({"engine": __version__, **spec}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class CacheEntry:
    key: str
    engine: str
    created: float
    spec: dict
    document: str


class Cache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, spec: dict) -> CacheEntry | None:
        key = job_key(spec)
        p = self._path(key)
        try:
            raw = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if raw.get("key") != key or raw.get("engine") != __version__:
            return None
        return CacheEntry(key, raw["engine"], raw["created"], raw["spec"], raw["document"])

    def put(self, spec: dict, document: str) -> CacheEntry:
        key = job_key(spec)
        entry = CacheEntry(key, __version__, time.time(), spec, document)
        p = self._path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry.__dict__, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return entry

    def entries(self) -> list[CacheEntry]:
        out = []
        if not self.root.is_dir():
            return out
        for p in sorted(self.root.glob("??/*.json")):
            try:
                raw = json.loads(p.read_text())
                out.append(CacheEntry(raw["key"], raw["engine"], raw["created"], raw["spec"], raw["document"]))
            except (OSError, ValueError, KeyError):
                continue
        return out

    def clear(self) -> int:
        n = 0
        if not self.root.is_dir():
            return n
        for p in self.root.glob("??/*.json"):
            p.unlink(missing_ok=True)
            n += 1
        for d in self.root.glob("??"):
            if d.is_dir() and not any(d.iterdir()):
                d.rmdir()
        return n
