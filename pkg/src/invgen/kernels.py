"""Hot kernels: compiled extension when available, numpy fallback otherwise.

Set ``INVGEN_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("INVGEN_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"


def cycle_lengths(perms) -> np.ndarray:
    return _impl.cycle_lengths(np.ascontiguousarray(perms, dtype=np.int64))


def subset_mask(sets, accepted) -> np.ndarray:
    return _impl.subset_mask(np.ascontiguousarray(sets, dtype=np.uint64),
                             np.ascontiguousarray(accepted, dtype=np.uint64))


def thin_bitsets(sets) -> np.ndarray:
    return _impl.thin_bitsets(np.ascontiguousarray(sets, dtype=np.uint64))


def cycle_types(perms: np.ndarray) -> list[tuple[int, ...]]:
    """Cycle type of each row of ``perms`` as a decreasing tuple."""
    lens = cycle_lengths(perms)
    return [tuple([x for x in row if x]) for row in lens.tolist()]


def random_permutations(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform permutations of ``0..n-1``, one per row."""
    return rng.permuted(np.tile(np.arange(n, dtype=np.int64), (count, 1)), axis=1)


def sample_cycle_types(n: int, trials: int, rng: np.random.Generator,
                       batch: int = 4096):
    """Yield cycle types of ``trials`` uniform permutations, generated in batches."""
    left = trials
    while left > 0:
        k = min(batch, left)
        yield from cycle_types(random_permutations(n, k, rng))
        left -= k
