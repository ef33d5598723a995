"""Brute-force enumeration of every solvable subgroup of S_n for n <= 7.

This is the independent check on the atlas recursion. S_n is tabulated as
integers with a full multiplication table, and subgroups are grown one
element at a time: a solvable K != 1 has a normal subgroup H of prime index,
so K = <H, g> with g in N(H). Subgroups are deduplicated by element set only.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .cycletype import cycle_type_of_images
from .errors import SizeError
from .groups import CycleTypeSet

MAX_DEGREE = 7


class SymmetricTable:
    def __init__(self, n: int):
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        self.n = n
        self.size = len(perms)
        weights = n ** np.arange(n, dtype=np.int64)
        codes = perms @ weights
        order = np.argsort(codes)
        self.codes = codes[order]
        self.perms = perms
        # mul[a, b] = a followed by b
        self.mul = np.empty((self.size, self.size), dtype=np.int16 if self.size < 32768 else np.int32)
        for b in range(self.size):
            comp = perms[b][perms]  # row a: b(a(x))
            self.mul[:, b] = order[np.searchsorted(self.codes, comp @ weights)]
        self.identity = int(order[np.searchsorted(self.codes, np.arange(n) @ weights)])
        self.inverse = np.argmax(self.mul == self.identity, axis=1)
        self.types = [cycle_type_of_images(p) for p in perms.tolist()]


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, math.isqrt(k) + 1))


def solvable_subgroups(n: int) -> tuple[list[np.ndarray], SymmetricTable]:
    """Element arrays of all solvable subgroups of S_n, with the table indexing them."""
    if n > MAX_DEGREE:
        raise SizeError(f"exhaustive subgroup enumeration supports n <= {MAX_DEGREE}")
    T = SymmetricTable(n)
    mul, inv = T.mul, T.inverse
    trivial = np.array([T.identity])
    found = {trivial.tobytes(): trivial}
    queue = [(trivial, [])]
    every = np.arange(T.size)
    while queue:
        H, gens = queue.pop()
        member = np.zeros(T.size, dtype=bool)
        member[H] = True
        # g normalizes H iff g^-1 h g lies in H for each generator h
        normal = np.ones(T.size, dtype=bool)
        for h in gens:
            normal &= member[mul[mul[inv, h], every]]
        done = member.copy()
        for g in np.flatnonzero(normal & ~member).tolist():
            if done[g]:
                continue
            cosets = [H]
            power = g
            while not member[power]:
                cosets.append(mul[H, power])
                power = mul[power, g]
            if not _is_prime(len(cosets)):
                continue
            K = np.sort(np.concatenate(cosets))
            done[K] = True
            key = K.tobytes()
            if key not in found:
                found[key] = K
                queue.append((K, gens + [g]))
    return list(found.values()), T


def all_solvable_subgroup_ct_sets(n: int) -> list[CycleTypeSet]:
    """Inclusion-maximal cycle-type sets over all solvable subgroups of S_n, n <= 7."""
    from .atlas import thin_maximal

    if n < 1:
        raise ValueError("n must be positive")
    subgroups, T = solvable_subgroups(n)
    sets = {frozenset(T.types[i] for i in K.tolist()) for K in subgroups}
    return thin_maximal([CycleTypeSet(n, s, "enumerated") for s in sets])
