"""Content-addressed cache of command results.

Entries live at ``<root>/<command>/<digest>.json``.  The digest hashes the
command name, the canonical graph text, the parameters and the engine
version, so bumping the version orphans every old entry.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from pebblelab import __version__ as ENGINE_VERSION


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def input_digest(command: str, graph_text: str, params: dict, engine: str | None = None) -> str:
    engine = engine or ENGINE_VERSION
    payload = json.dumps(
        {"command": command, "graph": graph_text, "params": params, "engine": engine},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class RunRecord:
    command: str
    digest: str
    engine_version: str
    wall_time: float
    result: dict


class ResultCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def _path(self, command: str, digest: str) -> Path:
        return self.root / command / f"{digest}.json"

    def get(self, command: str, digest: str) -> RunRecord | None:
        path = self._path(command, digest)
        try:
            data = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if data.get("engine_version") != ENGINE_VERSION:
            return None
        return RunRecord(**data)

    def put(self, record: RunRecord) -> None:
        path = self._path(record.command, record.digest)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(asdict(record)))
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise

    def run(self, command: str, graph_text: str, params: dict, compute) -> dict:
        """Return the cached result for these inputs, computing and storing it on a miss."""
        digest = input_digest(command, graph_text, params)
        hit = self.get(command, digest)
        if hit is not None:
            return hit.result
        start = time.perf_counter()
        result = compute()
        self.put(RunRecord(command, digest, ENGINE_VERSION, time.perf_counter() - start, result))
        return result

    def gc(self, everything: bool = False) -> int:
        """Delete stale entries (or all of them); returns the number removed."""
        removed = 0
        if not self.root.exists():
            return 0
        for path in sorted(self.root.glob("*/*.json")):
            stale = everything
            if not stale:
                try:
                    stale = json.loads(path.read_text()).get("engine_version") != ENGINE_VERSION
                except json.JSONDecodeError:
                    stale = True
            if stale:
                path.unlink()
                removed += 1
        for path in self.root.glob("*/*.tmp"):
            path.unlink()
        return removed
