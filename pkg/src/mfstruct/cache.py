"""Binary cache for sieved tables.

File layout (little-endian)::

    b"MFS1" | version u32 | N u64 | D u32 | label length u16 | label (UTF-8)
    | N pairs of float64 (re, im) for f(1..N)

Files are keyed by (label, N).  The directory defaults to
``~/.cache/mfstruct`` and can be moved with the ``MFSTRUCT_CACHE``
environment variable.
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path
from typing import Callable

import numpy as np

from .core import MultFnTable
from .errors import CacheFormatError

MAGIC = b"MFS1"
VERSION = 1
_HEADER = struct.Struct("<4sIQIH")


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("MFSTRUCT_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "mfstruct"


def cache_path(label: str, N: int, directory: str | os.PathLike | None = None) -> Path:
    digest = hashlib.sha256(label.encode("utf-8")).hexdigest()[:16]
    return cache_dir(directory) / f"{digest}-{N}.mfs"


def write_table(table: MultFnTable, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    label = table.label.encode("utf-8")
    body = np.ascontiguousarray(table.values[1:], dtype="<c16")
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, table.N, table.D, len(label)))
        fh.write(label)
        fh.write(body.tobytes())
    os.replace(tmp, path)
    return path


def read_table(path: str | os.PathLike, source: str = "sieved") -> MultFnTable:
    """Load a cached table.

    Raises:
        CacheFormatError: bad magic, unknown version or truncated body.
    """
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise CacheFormatError(f"{path}: truncated header")
    magic, version, N, D, nlabel = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise CacheFormatError(f"{path}: unsupported version {version}")
    off = _HEADER.size
    label = data[off : off + nlabel].decode("utf-8")
    off += nlabel
    if len(data) - off != 16 * N:
        raise CacheFormatError(f"{path}: body holds {len(data) - off} bytes, expected {16 * N}")
    values = np.empty(N + 1, dtype=np.complex128)
    values[0] = 0
    values[1:] = np.frombuffer(data, dtype="<c16", count=N, offset=off)
    return MultFnTable(values, D, label, source)


def cached_table(
    label: str,
    N: int,
    build: Callable[[int], MultFnTable],
    directory: str | os.PathLike | None = None,
    enabled: bool = True,
) -> MultFnTable:
    """Return the table for (label, N), building and storing it on a miss."""
    if not enabled:
        return build(N)
    path = cache_path(label, N, directory)
    if path.exists():
        table = read_table(path)
        if table.label == label and table.N == N:
            return table
    table = build(N)
    write_table(table, path)
    return table
