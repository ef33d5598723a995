"""Partitions, cycle types and the elementary counting facts about S_n.

Cycle types are stored as weakly decreasing tuples of positive integers.
:class:`CycleType` subclasses ``tuple`` so that sets of cycle types hash and
compare at tuple speed; a plain decreasing tuple of the same parts compares
equal to it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import SizeError

PARTITION_CAP = 64


class CycleType(tuple):
    """An integer partition, i.e. the conjugacy invariant of a permutation."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted(parts, reverse=True)
        if parts and parts[-1] <= 0:
            raise ValueError(f"cycle lengths must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __repr__(self) -> str:
        return f"CycleType({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    @classmethod
    def identity(cls, n: int) -> "CycleType":
        return cls((1,) * n)


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def partition_tuples(n: int, cap: int = PARTITION_CAP) -> list[tuple[int, ...]]:
    """All partitions of ``n`` as plain tuples, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise SizeError(f"partition enumeration of n={n} exceeds cap {cap}")
    return list(_partitions(n, n))


def enumerate_partitions(n: int, cap: int = PARTITION_CAP) -> list[CycleType]:
    """Every partition of ``n`` exactly once.

    The order is lexicographic on the decreasing parts, largest first, so
    ``n=4`` yields ``[4], [3,1], [2,2], [2,1,1], [1,1,1,1]``.
    """
    return [CycleType(p) for p in partition_tuples(n, cap)]


def centralizer_order(ct: Sequence[int]) -> int:
    """Order of the centralizer in S_n of an element of this type: prod i^m_i * m_i!."""
    out = 1
    for i, m in Counter(ct).items():
        out *= i**m * math.factorial(m)
    return out


def class_size(ct: Sequence[int]) -> int:
    """Number of permutations of S_n with cycle type ``ct``."""
    return math.factorial(sum(ct)) // centralizer_order(ct)


def is_even(ct: Sequence[int]) -> bool:
    return (sum(ct) - len(ct)) % 2 == 0


def parity(ct: Sequence[int]) -> str:
    """``"even"`` or ``"odd"``; a permutation is even iff n - #cycles is even."""
    return "even" if is_even(ct) else "odd"


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``.

    Points are 0-based internally. :meth:`from_cycles` and :meth:`cycles`
    use the customary 1-based labels.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)(cyc[:1])):
                img[a - 1] = b - 1
        return cls(tuple(img))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other
        o = other.images
        return Permutation(tuple(o[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        s = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1)
        return s or "()"


def cycle_type_of_images(images: Sequence[int]) -> tuple[int, ...]:
    n = len(images)
    seen = bytearray(n)
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = images[j]
            length += 1
        parts.append(length)
    parts.sort(reverse=True)
    return tuple(parts)


def cycle_type_of(sigma: Permutation | Sequence[int]) -> CycleType:
    """Multiset of cycle lengths of ``sigma``, fixed points included."""
    images = sigma.images if isinstance(sigma, Permutation) else sigma
    return CycleType(cycle_type_of_images(images))


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def worker_seed(seed: int, worker: int) -> int:
    """Seed for parallel worker ``worker``: simply ``seed + worker``."""
    return seed + worker


def random_permutation(n: int, rng: np.random.Generator | int | None) -> Permutation:
    """Uniform element of S_n via an unbiased Fisher-Yates shuffle."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = make_rng(rng)
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


def min_pattern_probability_bound(m: Sequence[int]) -> Fraction:
    """Upper bound prod 1/(i^m_i * m_i!) for P(sigma has >= m_i i-cycles for all i).

    ``m[0]`` is the multiplicity of 1-cycles, ``m[1]`` of 2-cycles, and so on.
    """
    if any(x < 0 for x in m):
        raise ValueError("multiplicities must be non-negative")
    den = 1
    for i, mi in enumerate(m, start=1):
        den *= i**mi * math.factorial(mi)
    return Fraction(1, den)


def pattern_probability(n: int, m: Sequence[int]) -> Fraction:
    """Exact P(sigma in S_n has at least m_i i-cycles for every i), by class sums."""
    total = 0
    for ct in partition_tuples(n):
        cnt = Counter(ct)
        if all(cnt.get(i, 0) >= mi for i, mi in enumerate(m, start=1)):
            total += class_size(ct)
    return Fraction(total, math.factorial(n))


# --- condition statistics ---------------------------------------------------


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


def condition_window(n: int) -> tuple[int, int]:
    """Inclusive prime window ``[ceil(ln(n)^2), floor(n/2)]``."""
    return math.ceil(math.log(n) ** 2), n // 2


def window_primes(n: int) -> list[int]:
    lo, hi = condition_window(n)
    return [p for p in range(lo, hi + 1) if _is_prime(p)]


def mersenne_primes_in(lo: float, hi: int) -> list[int]:
    out = []
    k = 2
    while 2**k - 1 <= hi:
        q = 2**k - 1
        if q >= lo and _is_prime(q):
            out.append(q)
        k += 1
    return out


def has_isolated_prime_cycle(ct: Sequence[int], primes: Sequence[int]) -> bool:
    """True if some prime p has a p-cycle in ``ct`` and every other length is coprime to p."""
    for p in primes:
        divisible = [c for c in ct if c % p == 0]
        if divisible == [p]:
            return True
    return False


def has_mersenne_cycle(ct: Sequence[int], mersenne: Sequence[int]) -> bool:
    return any(c in mersenne for c in ct)


@dataclass(frozen=True)
class ConditionStats:
    n: int
    trials: int
    isolated_prime: float
    isolated_prime_se: float
    mersenne: float
    mersenne_se: float
    primes: tuple[int, ...]
    mersenne_primes: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "isolated_prime_cycle": self.isolated_prime,
            "isolated_prime_cycle_se": self.isolated_prime_se,
            "mersenne_cycle": self.mersenne,
            "mersenne_cycle_se": self.mersenne_se,
            "window_primes": list(self.primes),
            "mersenne_primes": list(self.mersenne_primes),
        }


def _se(p: float, trials: int) -> float:
    return math.sqrt(p * (1 - p) / trials)


def condition_stats(n: int, trials: int, rng) -> ConditionStats:
    """Sampled frequencies of the two cycle conditions used in the large-n argument.

    (a) some prime p in the window has a p-cycle and all other cycle lengths
    are coprime to p; (b) some cycle length is a Mersenne prime >= ln(n)^2.
    """
    if n < 5:
        raise ValueError("n must be at least 5")
    if trials < 1:
        raise ValueError("trials must be positive")
    from . import kernels

    rng = make_rng(rng)
    primes = window_primes(n)
    mers = mersenne_primes_in(math.log(n) ** 2, n)
    hits_a = hits_b = 0
    for ct in kernels.sample_cycle_types(n, trials, rng):
        hits_a += has_isolated_prime_cycle(ct, primes)
        hits_b += has_mersenne_cycle(ct, mers)
    pa, pb = hits_a / trials, hits_b / trials
    return ConditionStats(n, trials, pa, _se(pa, trials), pb, _se(pb, trials),
                          tuple(primes), tuple(mers))


def exact_condition_probabilities(n: int) -> tuple[Fraction, Fraction]:
    """Exact probabilities of conditions (a) and (b) by summing class sizes."""
    primes = window_primes(n)
    mers = mersenne_primes_in(math.log(n) ** 2, n)
    a = b = 0
    for ct in partition_tuples(n):
        size = class_size(ct)
        if has_isolated_prime_cycle(ct, primes):
            a += size
        if has_mersenne_cycle(ct, mers):
            b += size
    f = math.factorial(n)
    return Fraction(a, f), Fraction(b, f)
