"""Bounded memo caches for pure functions.

The total budget comes from HOMCLS_CACHE_BYTES (default 256 MiB) and is
shared evenly by all caches; entries are costed at a flat estimate.
"""

from __future__ import annotations

import os
import threading

ENTRY_BYTES = 2048
DEFAULT_BYTES = 256 * 1024 * 1024
_MISSING = object()


def cache_budget() -> int:
    raw = os.environ.get("HOMCLS_CACHE_BYTES")
    if raw is None:
        return DEFAULT_BYTES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"HOMCLS_CACHE_BYTES must be an integer, got {raw!r}") from None
    return max(value, 0)


class MemoCache:
    """Dict-backed cache that drops its older half when full."""

    def __init__(self, max_entries: int | None = None, share: int = 8):
        if max_entries is None:
            max_entries = cache_budget() // (ENTRY_BYTES * share)
        self.max_entries = max_entries
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = self.misses = 0

    def get(self, key, default=None):
        value = self._data.get(key, _MISSING)
        if value is _MISSING:
            self.misses += 1
            return default
        self.hits += 1
        return value

    def put(self, key, value):
        if self.max_entries <= 0:
            return
        with self._lock:
            if len(self._data) >= self.max_entries:
                for k in list(self._data)[: max(1, len(self._data) // 2)]:
                    self._data.pop(k, None)
            self._data[key] = value

    def __len__(self) -> int:
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()
