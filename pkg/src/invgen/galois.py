"""Nonsolvability certificates for Galois groups via reduction modulo primes.

For a prime p dividing neither the leading coefficient nor the discriminant
of f, the degrees of the irreducible factors of f mod p are the cycle lengths
of some element of Gal(f/Q) (Dedekind). Patterns from several primes that
no solvable subgroup of S_n can contain together therefore prove that the
Galois group is not solvable.

Polynomials over F_p are lists of ints in ascending degree with no trailing
zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .atlas import SolvableAtlas
from .cycletype import CycleType
from .errors import DomainError
from .invariable import CoverageQuery, is_covered
from .polyparse import format_polynomial, parse_polynomial

# -- integer polynomials ------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return cls(parse_polynomial(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def derivative(self) -> list[int]:
        return [i * c for i, c in enumerate(self.coeffs)][1:]

    def __str__(self) -> str:
        return format_polynomial(self.coeffs)


def _content(c: list[int]) -> int:
    g = 0
    for x in c:
        g = math.gcd(g, x)
    return g


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        while r and r[-1] == 0:
            r.pop()
    return r


def integer_gcd_degree(a: list[int], b: list[int]) -> int:
    """Degree of gcd(a, b) over Q, by the primitive pseudo-remainder sequence."""
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        if r:
            g = _content(r)
            r = [x // g for x in r]
        a, b = b, r
    return len(a) - 1


def is_separable(f: IntPolynomial) -> bool:
    """gcd(f, f') is constant over Q."""
    if f.degree < 1:
        return True
    return integer_gcd_degree(list(f.coeffs), f.derivative()) == 0


# -- polynomials over F_p -----------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class ModPolynomial:
    """A polynomial over F_p. ``degree_dropped`` records p | leading coefficient."""

    p: int
    coeffs: tuple[int, ...]
    degree_dropped: bool = False

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return format_polynomial(self.coeffs) + f" (mod {self.p})"


def reduce_mod(f: IntPolynomial, p: int) -> ModPolynomial:
    c = _trim([x % p for x in f.coeffs])
    return ModPolynomial(p, tuple(c), len(c) - 1 < f.degree)


def pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv_lead % p
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = (r[i + shift] - c * y) % p
        _trim(r)
    return _trim(q), r


def pmod(a: list[int], b: list[int], p: int) -> list[int]:
    return pdivmod(a, b, p)[1]


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv_lead = pow(a[-1], -1, p)
    return [x * inv_lead % p for x in a]


def pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def pderiv(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = pmod(base, mod, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = pmod(pmul(base, base, p), mod, p)
    return result


def is_squarefree_mod(a: list[int], p: int) -> bool:
    return len(pgcd(a, pderiv(a, p), p)) == 1


def usable_prime(f: IntPolynomial, p: int) -> bool:
    """p does not divide the leading coefficient and f mod p is squarefree."""
    if f.leading % p == 0:
        return False
    return is_squarefree_mod(list(reduce_mod(f, p).coeffs), p)


def ddf_pattern(fbar: ModPolynomial | list[int], p: int | None = None) -> CycleType:
    """Degrees of the irreducible factors of a squarefree polynomial over F_p.

    Stage d splits off gcd(f, x^(p^d) - x); a component of degree e found at
    stage d is a product of e/d irreducibles of degree d.
    """
    if isinstance(fbar, ModPolynomial):
        if fbar.degree_dropped:
            raise DomainError("ddf_pattern needs the full-degree reduction")
        p, coeffs = fbar.p, list(fbar.coeffs)
    else:
        coeffs = _trim(list(fbar))
    if not is_squarefree_mod(coeffs, p):
        raise DomainError("ddf_pattern requires a squarefree polynomial")
    f = monic(coeffs, p)
    parts: list[int] = []
    h = [0, 1]  # x^(p^d) mod f
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            parts.extend([d] * ((len(g) - 1) // d))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    if len(f) > 1:
        parts.append(len(f) - 1)
    return CycleType(parts)


# -- certification ------------------------------------------------------------


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return np.flatnonzero(sieve).tolist()


def prime_sequence(seed: int | None = None, limit: int = 10**5):
    """Primes in increasing order, or a seeded random order of the primes below ``limit``."""
    if seed is None:
        bound = 1024
        start = 0
        while True:
            for q in primes_up_to(bound):
                if q > start:
                    yield q
            start, bound = bound, bound * 4
    else:
        ps = primes_up_to(limit)
        random.Random(seed).shuffle(ps)
        yield from ps


@dataclass
class Certificate:
    polynomial: IntPolynomial
    evidence: list[tuple[int, CycleType]]
    atlas_meta: dict
    conclusion: str = "nonsolvable"

    def as_dict(self) -> dict:
        return {
            "poly": str(self.polynomial),
            "degree": self.polynomial.degree,
            "primes": [{"p": p, "pattern": list(pat)} for p, pat in self.evidence],
            "conclusion": self.conclusion,
            "atlas_meta": self.atlas_meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def transcript(self) -> str:
        f = self.polynomial
        lines = [f"f = {f}, degree {f.degree}"]
        for p, pat in self.evidence:
            lines.append(f"  mod {p}: factor degrees {list(pat)}")
        lines.append(
            "By Dedekind's criterion each factor-degree pattern is the cycle type of an "
            "element of Gal(f/Q).")
        lines.append(
            f"No solvable subgroup of S_{f.degree} contains elements of all these cycle "
            "types, so Gal(f/Q) is not solvable.")
        return "\n".join(lines)


@dataclass
class Inconclusive:
    polynomial: IntPolynomial
    reason: str
    evidence: list[tuple[int, CycleType]] = field(default_factory=list)
    conclusion: str = "inconclusive"

    def as_dict(self) -> dict:
        return {
            "poly": str(self.polynomial),
            "degree": self.polynomial.degree,
            "primes": [{"p": p, "pattern": list(pat)} for p, pat in self.evidence],
            "conclusion": self.conclusion,
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def certify_nonsolvable(f: IntPolynomial, budget: int, atlas: SolvableAtlas,
                        seed: int | None = None) -> Certificate | Inconclusive:
    """Scan usable primes until their patterns are not covered by the atlas.

    Returns a :class:`Certificate` for the shortest such prefix of the prime
    sequence, or :class:`Inconclusive` after ``budget`` usable primes.
    """
    n = f.degree
    if n <= 4:
        return Inconclusive(f, f"all subgroups of S_n solvable, n <= 4 (degree {n})")
    if not is_separable(f):
        raise DomainError(f"{f} is not separable")
    atlas.row(n)
    evidence: list[tuple[int, CycleType]] = []
    for p in prime_sequence(seed):
        if len(evidence) >= budget:
            break
        if not usable_prime(f, p):
            continue
        evidence.append((p, ddf_pattern(reduce_mod(f, p))))
        if not is_covered(CoverageQuery(n, [pat for _, pat in evidence]), atlas):
            return Certificate(f, evidence, atlas.meta)
    return Inconclusive(f, f"patterns from {len(evidence)} usable primes are covered "
                           "by a solvable subgroup", evidence)


def frobenius_frequencies(f: IntPolynomial, bound: int) -> dict[CycleType, tuple[int, Fraction]]:
    """Counts and densities of factor-degree patterns over usable primes <= bound."""
    if not is_separable(f):
        raise DomainError(f"{f} is not separable")
    counts: Counter = Counter()
    for p in primes_up_to(bound):
        if usable_prime(f, p):
            counts[ddf_pattern(reduce_mod(f, p))] += 1
    total = sum(counts.values())
    return {ct: (c, Fraction(c, total)) for ct, c in sorted(counts.items(), reverse=True)}
