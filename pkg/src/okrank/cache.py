"""On-disk cache for rank tables.

Each entry is one file named by the sha256 of its key.  Layout::

    b"OKRK1"
    u32 length, key JSON
    u32 length, table JSON
    u32 length, sha256 digest of the two preceding records

Entries that fail to parse or whose digest does not match are treated as
misses and overwritten.
"""
from __future__ import annotations

import hashlib
import json
import os
import struct
import tempfile
import warnings
from pathlib import Path
from typing import Callable

from . import __version__
from .counting import RankTable

__all__ = ["CacheWarning", "MAGIC", "TableCache", "cache_key", "resolve_cache_dir"]

MAGIC = b"OKRK1"
ENV_VAR = "OKRANK_CACHE"
_LEN = struct.Struct(">I")


class CacheWarning(UserWarning):
    pass


def cache_key(stat: str, method: str, k: int | None, max_n: int,
              version: str = __version__) -> dict:
    return {"stat": stat, "method": method, "k": k, "max_n": max_n, "version": version}


def _key_bytes(key: dict) -> bytes:
    return json.dumps(key, sort_keys=True, separators=(",", ":")).encode()


def resolve_cache_dir(flag: str | os.PathLike | None) -> Path | None:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def encode_entry(key: dict, table: RankTable) -> bytes:
    kb = _key_bytes(key)
    pb = table.to_json().encode()
    digest = hashlib.sha256(kb + pb).digest()
    out = [MAGIC]
    for rec in (kb, pb, digest):
        out.append(_LEN.pack(len(rec)))
        out.append(rec)
    return b"".join(out)


def decode_entry(blob: bytes) -> tuple[dict, RankTable]:
    """Inverse of :func:`encode_entry`; raises ValueError on any defect."""
    if not blob.startswith(MAGIC):
        raise ValueError("bad magic")
    pos = len(MAGIC)
    recs = []
    for _ in range(3):
        if pos + _LEN.size > len(blob):
            raise ValueError("truncated length field")
        (n,) = _LEN.unpack_from(blob, pos)
        pos += _LEN.size
        if pos + n > len(blob):
            raise ValueError("truncated record")
        recs.append(blob[pos: pos + n])
        pos += n
    if pos != len(blob):
        raise ValueError("trailing bytes")
    kb, pb, digest = recs
    if hashlib.sha256(kb + pb).digest() != digest:
        raise ValueError("digest mismatch")
    try:
        return json.loads(kb), RankTable.from_json(pb.decode())
    except (KeyError, TypeError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"bad payload: {exc}") from None


class TableCache:
    """Content-addressed store for :class:`RankTable`; disabled when ``directory`` is None."""

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory is not None else None
        self.events: list[str] = []
        if self.directory is not None and not self._usable():
            warnings.warn(f"cache directory {self.directory} is not writable; caching disabled",
                          CacheWarning, stacklevel=2)
            self.directory = None

    def _usable(self) -> bool:
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with tempfile.NamedTemporaryFile(dir=self.directory):
                pass
        except OSError:
            return False
        return True

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def path_for(self, key: dict) -> Path:
        return self.directory / (hashlib.sha256(_key_bytes(key)).hexdigest() + ".okrk")

    def load(self, key: dict) -> RankTable | None:
        if not self.enabled:
            return None
        path = self.path_for(key)
        try:
            blob = path.read_bytes()
        except OSError:
            self.events.append("miss")
            return None
        try:
            stored_key, table = decode_entry(blob)
        except ValueError:
            self.events.append("corrupt")
            return None
        if stored_key != key:
            self.events.append("corrupt")
            return None
        self.events.append("hit")
        return table

    def store(self, key: dict, table: RankTable) -> None:
        if not self.enabled:
            return
        path = self.path_for(key)
        try:
            # write then rename so readers never see a partial entry
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "wb") as fh:
                fh.write(encode_entry(key, table))
            os.replace(tmp, path)
        except OSError as exc:
            warnings.warn(f"could not write cache entry {path}: {exc}", CacheWarning, stacklevel=2)

    def get_or_compute(self, key: dict, compute: Callable[[], RankTable]) -> tuple[RankTable, bool]:
        table = self.load(key)
        if table is not None:
            return table, True
        table = compute()
        self.store(key, table)
        return table, False
