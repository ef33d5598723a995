"""Primitive solvable cycle-type data for prime-power degrees.

A primitive solvable group of degree q = p^d is V x| H with V = F_p^d and H an
irreducible solvable subgroup of GL(d, p). The cycle types of V x| H depend
only on which elements H contains, so it suffices to know, up to conjugacy,
the solvable subgroups of GL(d, p) and the affine cycle types contributed by
each matrix.

Solvable subgroups are enumerated by cyclic extension: every nontrivial
solvable group K has a normal subgroup H of prime index, so K = <H, g> for
some g normalizing H with g^r in H. Subgroups are deduplicated up to
conjugacy by storing every conjugate of each class representative.
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache

import numpy as np

from .errors import CapabilityError
from .groups import CycleTypeSet, _prime_factors

log = logging.getLogger(__name__)

DEFAULT_DEGREES = frozenset({4, 8, 9})
STRETCH_DEGREES = frozenset({16, 25})


def _is_prime(k: int) -> bool:
    return k >= 2 and _prime_factors(k) == [k]


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, d)`` with ``q == p**d``, or None when q is not a prime power."""
    fac = _prime_factors(q)
    if len(fac) != 1:
        return None
    p = fac[0]
    d = 0
    while q > 1:
        q //= p
        d += 1
    return p, d


class AffineSpace:
    """F_p^d with vectors encoded as integers in base p, and GL(d, p) acting on it.

    Each matrix is stored as the permutation it induces on all ``p**d`` vectors;
    matrices are identified by ``code``, the tuple of images of the basis vectors
    packed into one integer.
    """

    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.q = q = p**d
        digits = np.array([[(v // p**i) % p for i in range(d)] for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(d, dtype=np.int64)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.basis = [p**i for i in range(d)]
        perms = []
        for cols in itertools.product(range(1, q), repeat=d):
            # columns are the images of the basis vectors
            mat = digits[list(cols)].T  # d x d, column i = image of e_i
            img = (digits @ mat.T) % p @ weights
            if len(np.unique(img)) == q:
                perms.append(img)
        self.elements = np.array(perms, dtype=np.int64)
        self.order = len(self.elements)
        self.codes = self._codes(self.elements)
        self.index_of = np.full(q**d, -1, dtype=np.int64)
        self.index_of[self.codes] = np.arange(self.order)
        self.identity = int(self.index_of[self._codes(np.arange(q)[None, :])[0]])
        inv = np.argsort(self.elements, axis=1)
        self.inverse = self.index_of[self._codes(inv)]
        self._affine_types: dict[int, frozenset] = {}

    def _codes(self, perms: np.ndarray) -> np.ndarray:
        cols = perms[:, self.basis]
        return cols @ (self.q ** np.arange(self.d, dtype=np.int64))

    def mul(self, a: int, b: int) -> int:
        """Index of ``a`` followed by ``b``."""
        img = self.elements[b][self.elements[a][self.basis]]
        return int(self.index_of[int(img @ (self.q ** np.arange(self.d)))])

    def mul_many(self, a: np.ndarray, b: int) -> np.ndarray:
        imgs = self.elements[b][self.elements[a][:, self.basis]]
        return self.index_of[imgs @ (self.q ** np.arange(self.d, dtype=np.int64))]

    def conjugate_all(self, h: int) -> np.ndarray:
        """Indices of g^-1 h g for every g, in element order."""
        E = self.elements
        Einv = E[self.inverse]
        # x -> g(h(g^-1(x))) on basis vectors only
        t = E[h][Einv[:, self.basis]]
        img = np.take_along_axis(E, t, axis=1)
        return self.index_of[img @ (self.q ** np.arange(self.d, dtype=np.int64))]

    def conjugate_set(self, elems: np.ndarray, g: int) -> np.ndarray:
        E = self.elements
        ginv = E[self.inverse[g]]
        t = E[elems][:, ginv[self.basis]]
        img = E[g][t]
        return self.index_of[img @ (self.q ** np.arange(self.d, dtype=np.int64))]

    def affine_types(self, a: int) -> frozenset:
        """Cycle types of the maps x -> A x + b over all translations b."""
        from . import kernels

        hit = self._affine_types.get(a)
        if hit is None:
            lin = self.elements[a]
            perms = self.add[lin][:, :].T  # row b: x -> A x + b
            hit = frozenset(kernels.cycle_types(np.ascontiguousarray(perms)))
            self._affine_types[a] = hit
        return hit

    def spans_irreducibly(self, gens: list[int]) -> bool:
        """True if the group generated by ``gens`` has no proper nonzero invariant subspace."""
        mats = [self.elements[g] for g in gens]
        for v in range(1, self.q):
            space = {0}
            frontier = [v]
            while frontier:
                w = frontier.pop()
                if w in space:
                    continue
                new = [int(self.add[w, s]) for s in space]
                space.update(new)
                space.add(w)
                frontier.extend(int(m[w]) for m in mats)
                frontier.extend(new)
            if len(space) < self.q:
                return False
        return True


class SolvableSubgroupClasses:
    """Conjugacy class representatives of the solvable subgroups of GL(d, p)."""

    def __init__(self, space: AffineSpace):
        self.space = space
        self.reps: list[tuple[np.ndarray, list[int]]] = []
        self._seen: set[bytes] = set()
        self._gl_gens = self._generators()
        self._enumerate()

    def _generators(self) -> list[int]:
        # a small generating set found greedily
        sp = self.space
        gens: list[int] = []
        have = np.zeros(sp.order, dtype=bool)
        have[sp.identity] = True
        while not have.all():
            g = int(np.flatnonzero(~have)[0])
            gens.append(g)
            have = np.zeros(sp.order, dtype=bool)
            have[self._closure(gens)] = True
        return gens

    def _closure(self, gens: list[int]) -> np.ndarray:
        sp = self.space
        elems = {sp.identity}
        frontier = [sp.identity]
        while frontier:
            arr = np.array(frontier, dtype=np.int64)
            frontier = []
            for g in gens:
                for x in sp.mul_many(arr, g).tolist():
                    if x not in elems:
                        elems.add(x)
                        frontier.append(x)
        return np.array(sorted(elems), dtype=np.int64)

    @staticmethod
    def _key(elems: np.ndarray) -> bytes:
        return np.sort(elems).tobytes()

    def _register(self, elems: np.ndarray, gens: list[int]) -> bool:
        key = self._key(elems)
        if key in self._seen:
            return False
        # record the whole conjugacy class so later hits are recognised
        orbit = [np.sort(elems)]
        self._seen.add(key)
        while orbit:
            cur = orbit.pop()
            for g in self._gl_gens:
                conj = np.sort(self.space.conjugate_set(cur, g))
                k = conj.tobytes()
                if k not in self._seen:
                    self._seen.add(k)
                    orbit.append(conj)
        self.reps.append((np.sort(elems), gens))
        return True

    def _normalizer(self, elems: np.ndarray, gens: list[int]) -> np.ndarray:
        sp = self.space
        member = np.zeros(sp.order, dtype=bool)
        member[elems] = True
        ok = np.ones(sp.order, dtype=bool)
        for h in gens:
            ok &= member[sp.conjugate_all(h)]
        return np.flatnonzero(ok)

    def _enumerate(self) -> None:
        sp = self.space
        self._register(np.array([sp.identity]), [])
        i = 0
        while i < len(self.reps):
            elems, gens = self.reps[i]
            i += 1
            member = np.zeros(sp.order, dtype=bool)
            member[elems] = True
            done = member.copy()
            for g in self._normalizer(elems, gens).tolist():
                if done[g]:
                    continue
                # <H, g> = union of cosets H g^k
                cosets = [elems]
                power = g
                while not member[power]:
                    cosets.append(sp.mul_many(elems, power))
                    power = sp.mul(power, g)
                if not _is_prime(len(cosets)):
                    # reached through an intermediate subgroup instead
                    continue
                ext = np.concatenate(cosets)
                # every element of K \ H generates K over H
                done[ext] = True
                self._register(ext, gens + [g])
        log.debug("GL(%d,%d): %d solvable subgroup classes", sp.d, sp.p, len(self.reps))


@lru_cache(maxsize=None)
def _space(p: int, d: int) -> AffineSpace:
    return AffineSpace(p, d)


@lru_cache(maxsize=None)
def _classes(p: int, d: int) -> SolvableSubgroupClasses:
    return SolvableSubgroupClasses(_space(p, d))


def supported_degrees(stretch: bool = False) -> frozenset:
    return DEFAULT_DEGREES | (STRETCH_DEGREES if stretch else frozenset())


def check_supported(q: int, stretch: bool = False) -> None:
    pd = prime_power(q)
    if pd is None or pd[1] == 1:
        return
    if q not in supported_degrees(stretch):
        hint = " (requires the stretch flag)" if q in STRETCH_DEGREES else ""
        raise CapabilityError(
            f"primitive solvable data for degree {q} = {pd[0]}^{pd[1]} needs "
            f"GL({pd[1]},{pd[0]}), which is not supported{hint}")


def thin_sets(sets: list[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=len, reverse=True)
    out: list[frozenset] = []
    for s in uniq:
        if not any(s <= t for t in out):
            out.append(s)
    return out


def primitive_solvable_ct_sets(q: int, stretch: bool = False) -> list[CycleTypeSet]:
    """Inclusion-maximal cycle-type sets of primitive solvable subgroups of Sym(q).

    Non-prime-powers have none. For q = p prime the answer is AGL_1(p).
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    pd = prime_power(q)
    if pd is None:
        return []
    check_supported(q, stretch)
    p, d = pd
    space = _space(p, d)
    classes = _classes(p, d)
    candidates = []
    for elems, gens in classes.reps:
        if not space.spans_irreducibly(gens):
            continue
        types = frozenset().union(*(space.affine_types(int(a)) for a in elems))
        candidates.append(types)
    maximal = thin_sets(candidates)
    out = [CycleTypeSet(q, s, "primitive") for s in maximal]
    out.sort(key=lambda s: (-len(s), sorted(s.types, reverse=True)))
    return out


def affine_group_generators(q: int, elems_gens: list[int] | None = None) -> list[tuple]:
    """Permutation generators of V x| H on the q vectors; H defaults to GL(d, p).

    Used to build explicit witnesses for primitive cycle-type sets.
    """
    p, d = prime_power(q)
    space = _space(p, d)
    if elems_gens is None:
        elems_gens = _classes(p, d)._gl_gens
    gens = [tuple(int(x) for x in space.add[:, 1])]  # translation by e_0
    gens += [tuple(int(x) for x in space.elements[g]) for g in elems_gens]
    return gens


def primitive_witness_generators(q: int, stretch: bool = False) -> list[list[tuple]]:
    """Generators of a group realizing each set of :func:`primitive_solvable_ct_sets`, same order."""
    pd = prime_power(q)
    if pd is None:
        return []
    check_supported(q, stretch)
    p, d = pd
    space = _space(p, d)
    found: dict[frozenset, list[int]] = {}
    for elems, gens in _classes(p, d).reps:
        if not space.spans_irreducibly(gens):
            continue
        types = frozenset().union(*(space.affine_types(int(a)) for a in elems))
        found.setdefault(types, gens)
    return [affine_group_generators(q, found[s.types])
            for s in primitive_solvable_ct_sets(q, stretch)]
