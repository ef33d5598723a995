"""Pure-Python/numpy versions of the hot kernels."""

from __future__ import annotations

import numpy as np


def cycle_lengths(perms: np.ndarray) -> np.ndarray:
    """Row-wise cycle lengths, sorted descending and zero-padded to width n."""
    perms = np.asarray(perms, dtype=np.int64)
    m, n = perms.shape
    rows = np.arange(m)[:, None]
    cur = perms.copy()
    orbit_len = np.zeros((m, n), dtype=np.int64)
    start = np.arange(n)[None, :]
    for k in range(1, n + 1):
        hit = (cur == start) & (orbit_len == 0)
        orbit_len[hit] = k
        if k < n:
            cur = perms[rows, cur]
    out = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        lens = orbit_len[i]
        parts = []
        for L in np.unique(lens)[::-1]:
            parts.extend([int(L)] * (int((lens == L).sum()) // int(L)))
        out[i, :len(parts)] = parts
    return out


def subset_mask(sets: np.ndarray, accepted: np.ndarray) -> np.ndarray:
    """``out[i]`` is True when bitset ``sets[i]`` is contained in some row of ``accepted``."""
    if len(accepted) == 0:
        return np.zeros(len(sets), dtype=bool)
    out = np.zeros(len(sets), dtype=bool)
    for i, s in enumerate(sets):
        out[i] = bool(((s & ~accepted) == 0).all(axis=1).any())
    return out


def thin_bitsets(sets: np.ndarray) -> np.ndarray:
    """Indices of the inclusion-maximal distinct rows, assuming rows sorted by popcount descending."""
    keep: list[int] = []
    for i in range(len(sets)):
        s = sets[i]
        if keep:
            acc = sets[keep]
            if ((s & ~acc) == 0).all(axis=1).any():
                continue
        keep.append(i)
    return np.array(keep, dtype=np.int64)
