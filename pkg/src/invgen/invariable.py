"""Coverage queries and the probability that random permutations invariably
generate a nonsolvable subgroup.

A multiset of cycle types is *covered* when some solvable subgroup of S_n
contains elements of all of them; conjugating the representatives cannot
escape that subgroup's conjugates, so uncovered multisets are exactly those
that invariably generate a nonsolvable group.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .atlas import SolvableAtlas, to_bitsets
from .cycletype import class_size, is_even, make_rng, partition_tuples
from .errors import CapabilityError, DomainError

DRAW_CAP = 10**4
SYMMETRIC = "symmetric"
ALTERNATING = "alternating"


@dataclass(frozen=True)
class CoverageQuery:
    degree: int
    observed: tuple

    def __init__(self, degree: int, observed: Iterable[Sequence[int]]):
        obs = tuple(tuple(sorted(t, reverse=True)) for t in observed)
        if not obs:
            raise ValueError("a coverage query needs at least one cycle type")
        for t in obs:
            if sum(t) != degree:
                raise ValueError(f"type {list(t)} does not have degree {degree}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "observed", obs)


class CoverageTable:
    """Per-degree lookup structures derived from one atlas row.

    ``membership[i]`` is a Python int whose bit k is set when partition i lies
    in the k-th maximal set; ``pair_covered`` is the boolean partition-pair
    matrix shared by the exact and sampling paths.
    """

    def __init__(self, atlas: SolvableAtlas, n: int):
        self.n = n
        row = atlas.row(n)
        self.partitions = partition_tuples(n)
        self.index = {t: i for i, t in enumerate(self.partitions)}
        self.membership = [0] * len(self.partitions)
        for k, s in enumerate(row):
            for t in s.types:
                self.membership[self.index[t]] |= 1 << k
        self._row = row

    @cached_property
    def pair_covered(self) -> np.ndarray:
        P = len(self.partitions)
        m = np.zeros((P, P), dtype=bool)
        for s in self._row:
            idx = np.fromiter((self.index[t] for t in s.types), dtype=np.int64)
            m[np.ix_(idx, idx)] = True
        return m

    @cached_property
    def class_sizes(self) -> list[int]:
        return [class_size(t) for t in self.partitions]

    def covered_indices(self, indices: Iterable[int]) -> bool:
        bits = -1
        for i in indices:
            bits &= self.membership[i]
            if not bits:
                return False
        return True


_tables: dict[tuple[int, int], CoverageTable] = {}


def coverage_table(atlas: SolvableAtlas, n: int) -> CoverageTable:
    key = (id(atlas), n)
    tab = _tables.get(key)
    if tab is None or tab._row is not atlas.row(n):
        tab = CoverageTable(atlas, n)
        _tables[key] = tab
    return tab


def is_covered(query: CoverageQuery, atlas: SolvableAtlas) -> bool:
    """True iff some maximal solvable cycle-type set contains every observed type."""
    tab = coverage_table(atlas, query.degree)
    return tab.covered_indices(tab.index[t] for t in set(query.observed))


def invariably_generate_nonsolvable(types: Iterable[Sequence[int]], atlas: SolvableAtlas) -> bool:
    types = list(types)
    return not is_covered(CoverageQuery(sum(types[0]), types), atlas)


def exact_p2(n: int, group: str, atlas: SolvableAtlas) -> Fraction:
    """Exact proportion of pairs in G^2 whose cycle types are not covered.

    For the alternating group both permutations are uniform on A_n, so only
    even types enter and |G| = n!/2.
    """
    if group not in (SYMMETRIC, ALTERNATING):
        raise ValueError(f"unknown group {group!r}")
    if n < 1:
        raise ValueError("n must be positive")
    tab = coverage_table(atlas, n)
    sizes = tab.class_sizes
    if group == ALTERNATING:
        keep = [i for i, t in enumerate(tab.partitions) if is_even(t)]
        order = math.factorial(n) // 2 if n > 1 else 1
    else:
        keep = list(range(len(tab.partitions)))
        order = math.factorial(n)
    cov = tab.pair_covered
    total = 0
    for i in keep:
        row = cov[i]
        inner = sum(sizes[j] for j in keep if not row[j])
        if inner:
            total += sizes[i] * inner
    return Fraction(total, order * order)


def round_half_away(x: Fraction, digits: int = 3) -> Decimal:
    q = Decimal(1).scaleb(-digits)
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return d.quantize(q, rounding=ROUND_HALF_UP)


# -- sampling -----------------------------------------------------------------


class _PermStream:
    """Uniform permutations drawn from ``rng`` in batches, consumed one at a time."""

    def __init__(self, n: int, rng: np.random.Generator, index: dict, batch: int = 1024):
        self.n, self.rng, self.index, self.batch = n, rng, index, batch
        self._buf: list[int] = []
        self._pos = 0

    def next_index(self) -> int:
        if self._pos == len(self._buf):
            perms = kernels.random_permutations(self.n, self.batch, self.rng)
            self._buf = [self.index[t] for t in kernels.cycle_types(perms)]
            self._pos = 0
        i = self._buf[self._pos]
        self._pos += 1
        return i


def _check_sampling_degree(n: int) -> None:
    if n <= 4:
        raise DomainError(f"n={n}: all subgroups of S_n are solvable for n <= 4, "
                          "so the draw never terminates")


def _draw_until_uncovered(tab: CoverageTable, stream: _PermStream, cap: int) -> int:
    bits = tab.membership[stream.next_index()]
    r = 1
    while bits:
        if r >= cap:
            raise CapabilityError(f"no nonsolvability certificate after {cap} draws")
        bits &= tab.membership[stream.next_index()]
        r += 1
    return r


def sample_N(n: int, atlas: SolvableAtlas, rng, cap: int = DRAW_CAP) -> int:
    """Number of uniform draws from S_n until their types are no longer covered."""
    _check_sampling_degree(n)
    rng = make_rng(rng)
    tab = coverage_table(atlas, n)
    return _draw_until_uncovered(tab, _PermStream(n, rng, tab.index, batch=8), cap)


@dataclass
class TrialStats:
    n: int
    trials: int
    seed: int
    mean: float
    stderr: float
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def p2(self) -> float:
        return self.histogram.get(2, 0) / self.trials

    @property
    def p2_stderr(self) -> float:
        p = self.p2
        return math.sqrt(p * (1 - p) / self.trials)

    def merge(self, other: "TrialStats") -> "TrialStats":
        """Pool two runs at the same degree; counts and sums combine exactly."""
        hist = Counter(self.histogram)
        hist.update(other.histogram)
        return TrialStats.from_histogram(self.n, self.seed, dict(hist))

    @classmethod
    def from_histogram(cls, n: int, seed: int, hist: dict[int, int]) -> "TrialStats":
        trials = sum(hist.values())
        s1 = sum(k * c for k, c in hist.items())
        s2 = sum(k * k * c for k, c in hist.items())
        mean = s1 / trials
        var = (s2 - s1 * s1 / trials) / (trials - 1) if trials > 1 else 0.0
        return cls(n, trials, seed, mean, math.sqrt(max(var, 0.0) / trials),
                   dict(sorted(hist.items())))

    def as_dict(self) -> dict:
        return {"n": self.n, "trials": self.trials, "seed": self.seed,
                "mean": self.mean, "stderr": self.stderr,
                "p_N_eq_2": self.p2, "p_N_eq_2_stderr": self.p2_stderr,
                "histogram": {str(k): v for k, v in self.histogram.items()}}


def estimate_mean_N(n: int, trials: int, seed: int, atlas: SolvableAtlas,
                    cap: int = DRAW_CAP) -> TrialStats:
    """Mean and standard error of N over ``trials`` seeded runs."""
    _check_sampling_degree(n)
    if trials < 100:
        raise ValueError("trials must be at least 100")
    tab = coverage_table(atlas, n)
    stream = _PermStream(n, np.random.default_rng(seed), tab.index)
    hist: Counter = Counter()
    for _ in range(trials):
        hist[_draw_until_uncovered(tab, stream, cap)] += 1
    return TrialStats.from_histogram(n, seed, dict(hist))
