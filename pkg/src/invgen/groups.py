"""A small permutation group engine built on a deterministic Schreier-Sims chain.

Permutations are tuples of images on the points ``0..n-1``. Products follow
the left-to-right convention: ``mul(p, q)`` applies ``p`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .cycletype import CycleType, Permutation, cycle_type_of_images
from .errors import SizeError

ELEMENT_CAP = 10**7

Perm = tuple


def mul(p: Perm, q: Perm) -> Perm:
    return tuple([q[x] for x in p])


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def commutator(a: Perm, b: Perm) -> Perm:
    return mul(mul(inv(a), inv(b)), mul(a, b))


def _as_tuple(g) -> Perm:
    return g.images if isinstance(g, Permutation) else tuple(g)


class _Level:
    __slots__ = ("base", "gens", "trans", "trans_inv", "checked")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[Perm] = []
        e = identity(n)
        self.trans: dict[int, Perm] = {base: e}
        self.trans_inv: dict[int, Perm] = {base: e}
        self.checked: set[tuple[int, int]] = set()

    def grow_orbit(self) -> None:
        # existing transversal entries stay fixed, so earlier sifts remain valid
        queue = list(self.trans)
        while queue:
            beta = queue.pop()
            u = self.trans[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in self.trans:
                    w = mul(u, s)
                    self.trans[gamma] = w
                    self.trans_inv[gamma] = inv(w)
                    queue.append(gamma)


class PermGroup:
    """Permutation group on ``degree`` points given by generators.

    The stabilizer chain is built on first use. Base points are chosen as the
    smallest point moved by the element that forces a new level, so the chain
    and the element enumeration order are reproducible.
    """

    def __init__(self, degree: int, gens: Iterable = ()):
        self.degree = degree
        gens = [_as_tuple(g) for g in gens]
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        e = identity(degree)
        self.gens: list[Perm] = [g for g in gens if g != e]
        self._levels: list[_Level] | None = None

    # -- stabilizer chain ---------------------------------------------------

    @property
    def levels(self) -> list[_Level]:
        if self._levels is None:
            self._build_chain()
        return self._levels

    def _new_level(self, h: Perm) -> None:
        moved = next(x for x in range(self.degree) if h[x] != x)
        self._levels.append(_Level(moved, self.degree))

    def _build_chain(self) -> None:
        n = self.degree
        self._levels = []
        for g in self.gens:
            if all(g[lv.base] == lv.base for lv in self._levels):
                self._new_level(g)
        for g in self.gens:
            for lv in self._levels:
                lv.gens.append(g)
                if g[lv.base] != lv.base:
                    break
        for lv in self._levels:
            lv.grow_orbit()
        e = identity(n)
        i = len(self._levels) - 1
        while i >= 0:
            lv = self._levels[i]
            jumped = False
            for beta in list(lv.trans):
                for si, s in enumerate(lv.gens):
                    if (beta, si) in lv.checked:
                        continue
                    lv.checked.add((beta, si))
                    sch = mul(mul(lv.trans[beta], s), lv.trans_inv[s[beta]])
                    if sch == e:
                        continue
                    j, h = self._sift(sch, i + 1)
                    if h is None:
                        continue
                    if j == len(self._levels):
                        self._new_level(h)
                    for lvl in self._levels[i + 1:j + 1]:
                        lvl.gens.append(h)
                        lvl.grow_orbit()
                    i = j
                    jumped = True
                    break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def _sift(self, g: Perm, start: int):
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            t = lv.trans_inv.get(g[lv.base])
            if t is None:
                return i, g
            g = mul(g, t)
        if g == identity(self.degree):
            return len(self._levels), None
        return len(self._levels), g

    # -- queries ------------------------------------------------------------

    @cached_property
    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self.levels)

    def contains(self, g) -> bool:
        g = _as_tuple(g)
        if len(g) != self.degree:
            return False
        self.levels
        _, h = self._sift(g, 0)
        return h is None

    __contains__ = contains

    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def strong_generators(self) -> list[Perm]:
        return list(dict.fromkeys(g for lv in self.levels for g in lv.gens))

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, as ``u_k * ... * u_1 * u_0`` over the transversals."""
        levels = self.levels
        e = identity(self.degree)
        if not levels:
            yield e
            return
        transversals = [list(lv.trans.values()) for lv in reversed(levels)]

        def rec(depth: int, acc: Perm):
            if depth == len(transversals):
                yield acc
                return
            for u in transversals[depth]:
                yield from rec(depth + 1, mul(acc, u))

        yield from rec(0, e)

    def is_trivial(self) -> bool:
        return not self.levels

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if seen[x]:
                continue
            orb = [x]
            seen[x] = True
            for y in orb:
                for g in self.gens:
                    z = g[y]
                    if not seen[z]:
                        seen[z] = True
                        orb.append(z)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbits()) == 1

    def normal_closure(self, elems: Iterable[Perm]) -> "PermGroup":
        """Smallest subgroup normalized by ``self`` that contains ``elems``."""
        H = PermGroup(self.degree, [])
        H._levels = []
        pending = list(elems)
        while pending:
            x = pending.pop()
            if H.contains(x):
                continue
            H = PermGroup(self.degree, H.gens + [x])
            for h in H.gens:
                for g in self.gens:
                    pending.append(mul(mul(inv(g), h), g))
        return H

    def derived_subgroup(self) -> "PermGroup":
        comms = [commutator(a, b) for i, a in enumerate(self.gens) for b in self.gens[i + 1:]]
        return self.normal_closure(comms)

    def derived_series(self) -> list["PermGroup"]:
        series = [self]
        G = self
        while not G.is_trivial():
            D = G.derived_subgroup()
            if D.order == G.order:
                break
            series.append(D)
            G = D
        return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_trivial()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.gens)})"


def group_from_generators(gens: Sequence, degree: int | None = None) -> PermGroup:
    """Build a group from generators; ``degree`` is required only when ``gens`` is empty."""
    gens = [_as_tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators have mixed degrees")
    return PermGroup(degree, gens)


def is_solvable(G: PermGroup) -> bool:
    return G.is_solvable()


# -- cycle-type sets ----------------------------------------------------------


@dataclass(frozen=True)
class CycleTypeSet:
    """The set of cycle types occurring in one subgroup of S_n.

    ``types`` holds decreasing tuples; they compare equal to :class:`CycleType`.
    Provenance is informational and ignored by equality.
    """

    degree: int
    types: frozenset
    provenance: str = field(default="enumerated", compare=False)

    def __post_init__(self):
        if (1,) * self.degree not in self.types:
            raise ValueError("a cycle-type set must contain the identity type")
        for t in self.types:
            if sum(t) != self.degree:
                raise ValueError(f"type {t} does not have degree {self.degree}")

    def __contains__(self, t) -> bool:
        return tuple(t) in self.types

    def __len__(self) -> int:
        return len(self.types)

    def __iter__(self):
        return iter(self.sorted_types())

    def __le__(self, other: "CycleTypeSet") -> bool:
        return self.degree == other.degree and self.types <= other.types

    def __lt__(self, other: "CycleTypeSet") -> bool:
        return self.degree == other.degree and self.types < other.types

    def sorted_types(self) -> list[CycleType]:
        return [CycleType(t) for t in sorted(self.types, reverse=True)]


def cycle_type_set(G: PermGroup, cap: int = ELEMENT_CAP,
                   provenance: str = "enumerated") -> CycleTypeSet:
    """Exact set of cycle types of elements of ``G`` by exhaustive enumeration."""
    if G.order > cap:
        raise SizeError(f"group order {G.order} exceeds element cap {cap}")
    types = {cycle_type_of_images(g) for g in G.elements()}
    return CycleTypeSet(G.degree, frozenset(types), provenance)


# -- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class BlockSystem:
    """Partition of ``0..n-1`` into ``count`` blocks of equal size ``size``."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sizes = {len(b) for b in self.blocks}
        pts = sorted(x for b in self.blocks for x in b)
        if len(sizes) != 1 or pts != list(range(len(pts))):
            raise ValueError("blocks must be disjoint, equal-sized and cover all points")

    @property
    def size(self) -> int:
        return len(self.blocks[0])

    @property
    def count(self) -> int:
        return len(self.blocks)


def _block_system_of(gens: Sequence[Perm], n: int, x: int) -> tuple[tuple[int, ...], ...]:
    """Finest G-invariant partition in which 0 and ``x`` share a block."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    parent[find(x)] = find(0)
    queue = [(0, x)]
    while queue:
        a, b = queue.pop()
        for g in gens:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((ra, rb))
    classes: dict[int, list[int]] = {}
    for p in range(n):
        classes.setdefault(find(p), []).append(p)
    return tuple(sorted(tuple(c) for c in classes.values()))


def minimal_blocks(G: PermGroup) -> BlockSystem | str:
    """A block system of minimal block size > 1, or ``"primitive"`` / ``"intransitive"``.

    Among several systems of the minimal size the lexicographically least is returned.
    """
    n = G.degree
    if not G.is_transitive():
        return "intransitive"
    best = None
    for x in range(1, n):
        blocks = _block_system_of(G.gens, n, x)
        if len(blocks) == 1:
            continue
        key = (len(blocks[0]), blocks)
        if best is None or key < best:
            best = key
    if best is None:
        return "primitive"
    return BlockSystem(best[1])


# -- constructions ------------------------------------------------------------


def wreath_product(U: PermGroup, V: PermGroup) -> PermGroup:
    """Imprimitive wreath product U wr V on ``a*b`` points; block j is ``j*a .. j*a+a-1``."""
    a, b = U.degree, V.degree
    n = a * b
    gens = []
    for j in range(b):
        for u in U.gens:
            img = list(range(n))
            for k in range(a):
                img[j * a + k] = j * a + u[k]
            gens.append(tuple(img))
    for v in V.gens:
        gens.append(tuple(v[j] * a + k for j in range(b) for k in range(a)))
    return PermGroup(n, gens)


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """``G x H`` acting on the disjoint union of their points."""
    a, b = G.degree, H.degree
    gens = [tuple(g) + tuple(range(a, a + b)) for g in G.gens]
    gens += [tuple(range(a)) + tuple(a + x for x in h) for h in H.gens]
    return PermGroup(a + b, gens)


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n, [])
    cyc = tuple(list(range(1, n)) + [0])
    swap = (1, 0) + tuple(range(2, n))
    return PermGroup(n, [swap, cyc])


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(n, [])
    gens = []
    for k in range(2, n):
        img = list(range(n))
        img[0], img[1], img[k] = 1, k, 0
        gens.append(tuple(img))
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple(list(range(1, n)) + [0])] if n > 1 else [])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon (order 2n) for n >= 3."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref])


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise ValueError(f"{p} is not prime")


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def agl1(p: int) -> PermGroup:
    """The affine group x -> a*x + b over F_p, of order p(p-1)."""
    g = primitive_root(p)
    shift = tuple((x + 1) % p for x in range(p))
    scale = tuple((g * x) % p for x in range(p))
    return PermGroup(p, [shift, scale])
