"""On-disk cache for expensive intermediates.

Entries are keyed by (operation, canonical input hash, seed, code version)
and written by atomic rename, so concurrent writers never leave partial files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .. import __version__

ENV_VAR = "TORSION6_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "torsion6"


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix="." + path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class DiskCache:
    def __init__(self, directory, version: str = __version__):
        self.directory = Path(directory)
        self.version = version
        self.hits = 0
        self.misses = 0

    def _path(self, key) -> Path:
        op = str(key[0])
        canon = json.dumps([list(key), self.version], sort_keys=True, default=str)
        digest = hashlib.sha256(canon.encode()).hexdigest()[:32]
        return self.directory / op / ("%s.json" % digest)

    def get(self, key):
        p = self._path(key)
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            self.misses += 1
            return None
        if data.get("key") != json.loads(json.dumps(list(key), default=str)) or data.get("version") != self.version:
            self.misses += 1
            return None
        self.hits += 1
        return data["value"]

    def put(self, key, value) -> None:
        record = {"key": list(key), "version": self.version, "value": value}
        atomic_write(self._path(key), json.dumps(record, default=str))
