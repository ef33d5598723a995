"""The solvable atlas: maximal cycle-type sets of solvable subgroups of S_n.

A solvable subgroup of S_n is either transitive or contained in the direct
product of its action on one orbit and on the complement. A transitive
solvable group is primitive (hence affine of prime-power degree) or embeds in
T wr P, with T transitive on a block and P primitive on the maximal blocks.
Cycle-type sets of these overgroups are computed from the smaller degrees
alone, so the recursion never builds the groups themselves.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .affine import check_supported, primitive_solvable_ct_sets, supported_degrees
from .cycletype import partition_tuples
from .errors import AtlasFormatError, CapabilityError
from .groups import CycleTypeSet

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 15
STRETCH_MAX_DEGREE = 25
SCHEMA_VERSION = 1


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b, reverse=True))


def wreath_ct(su: CycleTypeSet, sv: CycleTypeSet) -> CycleTypeSet:
    """Cycle types of U wr V from those of U (degree a) and V (degree b).

    For an element of U wr V lying over a V-element with cycle lengths
    c_1..c_r, the block cycle of length c contributes c*l for each part l of
    the type of the product of the c block elements around it, and that
    product ranges over all of U independently for each cycle.
    """
    out = set()
    u_types = list(su.types)
    for nu in sv.types:
        partial = {()}
        for c, mult in Counter(nu).items():
            scaled = [tuple(c * x for x in lam) for lam in u_types]
            options = {
                tuple(sorted((x for i in choice for x in scaled[i]), reverse=True))
                for choice in itertools.combinations_with_replacement(range(len(scaled)), mult)
            }
            partial = {_merge(p, o) for p in partial for o in options}
        out.update(partial)
    return CycleTypeSet(su.degree * sv.degree, frozenset(out), "wreath")


def product_ct(s1: CycleTypeSet, s2: CycleTypeSet) -> CycleTypeSet:
    """Cycle types of a direct product acting on disjoint point sets."""
    out = {_merge(l, m) for l in s1.types for m in s2.types}
    return CycleTypeSet(s1.degree + s2.degree, frozenset(out), "product")


def _canonical_key(s: CycleTypeSet):
    return (-len(s.types), sorted(s.types, reverse=True))


def canonical_order(sets: list[CycleTypeSet]) -> list[CycleTypeSet]:
    return sorted(sets, key=_canonical_key)


def thin_maximal(sets: list[CycleTypeSet]) -> list[CycleTypeSet]:
    """Distinct inclusion-maximal members, ordered by size descending then lexicographically."""
    if not sets:
        return []
    degrees = {s.degree for s in sets}
    if len(degrees) != 1:
        raise ValueError(f"sets of mixed degrees {sorted(degrees)}")
    n = degrees.pop()
    uniq: dict[frozenset, CycleTypeSet] = {}
    for s in sets:
        uniq.setdefault(s.types, s)
    ordered = canonical_order(list(uniq.values()))
    if len(ordered) == 1:
        return ordered
    index = {t: i for i, t in enumerate(partition_tuples(n))}
    bits = to_bitsets([s.types for s in ordered], index)
    keep = kernels.thin_bitsets(bits)
    return [ordered[i] for i in keep]


def to_bitsets(type_sets, index: dict) -> np.ndarray:
    words = (len(index) + 63) // 64
    out = np.zeros((len(type_sets), words), dtype=np.uint64)
    for r, types in enumerate(type_sets):
        for t in types:
            i = index[t]
            out[r, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return out


class AtlasBuilder:
    """Memoized recursion producing the transitive and full solvable rows."""

    def __init__(self, stretch: bool = False):
        self.stretch = stretch
        self.transitive: dict[int, list[CycleTypeSet]] = {}
        self.solvable: dict[int, list[CycleTypeSet]] = {}
        self._primitive: dict[int, list[CycleTypeSet]] = {}

    def primitive(self, q: int) -> list[CycleTypeSet]:
        if q not in self._primitive:
            self._primitive[q] = primitive_solvable_ct_sets(q, self.stretch)
        return self._primitive[q]

    def transitive_ct_sets(self, n: int) -> list[CycleTypeSet]:
        if n in self.transitive:
            return self.transitive[n]
        if n == 1:
            row = [CycleTypeSet(1, frozenset({(1,)}), "primitive")]
        else:
            cands = list(self.primitive(n))
            for b in range(2, n):
                if n % b:
                    continue
                a = n // b
                for top in self.primitive(b):
                    for t in self.transitive_ct_sets(a):
                        cands.append(wreath_ct(t, top))
            row = thin_maximal(cands)
        self.transitive[n] = row
        return row

    def solvable_ct_sets(self, n: int) -> list[CycleTypeSet]:
        if n in self.solvable:
            return self.solvable[n]
        cands = list(self.transitive_ct_sets(n))
        for a in range(1, n // 2 + 1):
            for A in self.solvable_ct_sets(a):
                for B in self.solvable_ct_sets(n - a):
                    cands.append(product_ct(A, B))
        row = thin_maximal(cands)
        self.solvable[n] = row
        log.debug("degree %d: %d maximal sets (%d candidates)", n, len(row), len(cands))
        return row


def check_degrees_supported(max_degree: int, stretch: bool) -> None:
    for q in range(2, max_degree + 1):
        check_supported(q, stretch)


def transitive_ct_sets(n: int, stretch: bool = False) -> list[CycleTypeSet]:
    check_degrees_supported(n, stretch)
    return AtlasBuilder(stretch).transitive_ct_sets(n)


def solvable_ct_sets(n: int, stretch: bool = False) -> list[CycleTypeSet]:
    check_degrees_supported(n, stretch)
    return AtlasBuilder(stretch).solvable_ct_sets(n)


@dataclass
class SolvableAtlas:
    max_degree: int
    rows: dict[int, list[CycleTypeSet]]
    caps: dict = field(default_factory=dict)
    version: str = __version__

    def row(self, n: int) -> list[CycleTypeSet]:
        if n not in self.rows:
            raise CapabilityError(
                f"atlas covers degrees 1..{self.max_degree}; degree {n} is missing")
        return self.rows[n]

    def covers(self, n: int) -> bool:
        return n in self.rows

    @property
    def meta(self) -> dict:
        return {"version": self.version, "max_degree": self.max_degree, "caps": self.caps}

    def check_invariants(self) -> None:
        for n, row in self.rows.items():
            if not row:
                raise AtlasFormatError(f"degree {n}: empty row")
            ident = (1,) * n
            for s in row:
                if s.degree != n or ident not in s.types:
                    raise AtlasFormatError(f"degree {n}: set lacks identity or has wrong degree")
                if any(sum(t) != n for t in s.types):
                    raise AtlasFormatError(f"degree {n}: type of wrong degree")
            for s, t in itertools.permutations(row, 2):
                if s.types <= t.types:
                    raise AtlasFormatError(f"degree {n}: rows not inclusion-incomparable")
        if 1 in self.rows and [s.types for s in self.rows[1]] != [frozenset({(1,)})]:
            raise AtlasFormatError("degree 1 row must be {{[1]}}")
        if 2 in self.rows and [s.types for s in self.rows[2]] != [frozenset({(1, 1), (2,)})]:
            raise AtlasFormatError("degree 2 row must be {{[1,1],[2]}}")

    # -- persistence ---------------------------------------------------------

    def to_json(self) -> str:
        rows = []
        for n in sorted(self.rows):
            row = self.rows[n]
            rows.append({
                "degree": n,
                "sets": [[list(t) for t in sorted(s.types, reverse=True)] for s in row],
                "provenance": [s.provenance for s in row],
            })
        doc = {"version": self.version, "max_degree": self.max_degree,
               "caps": self.caps, "rows": rows}
        return json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SolvableAtlas":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AtlasFormatError(f"atlas is not valid JSON: {exc.msg} at byte offset {exc.pos}") from exc
        try:
            if doc["version"] != __version__:
                raise AtlasFormatError(
                    f"atlas built by engine {doc['version']}, this is {__version__}")
            rows = {}
            for r in doc["rows"]:
                n = int(r["degree"])
                prov = r.get("provenance") or ["enumerated"] * len(r["sets"])
                if len(prov) != len(r["sets"]):
                    raise AtlasFormatError(f"degree {n}: provenance and sets differ in length")
                rows[n] = [CycleTypeSet(n, frozenset(tuple(t) for t in s), p)
                           for s, p in zip(r["sets"], prov)]
            atlas = cls(int(doc["max_degree"]), rows, dict(doc["caps"]), doc["version"])
        except (KeyError, TypeError, ValueError) as exc:
            raise AtlasFormatError(f"atlas schema mismatch: {exc}") from exc
        if sorted(rows) != list(range(1, atlas.max_degree + 1)):
            raise AtlasFormatError("atlas rows do not cover 1..max_degree")
        atlas.check_invariants()
        return atlas


def build_atlas(max_degree: int = DEFAULT_MAX_DEGREE, stretch: bool = False) -> SolvableAtlas:
    """Compute every row up to ``max_degree``; degrees 16 and 25 need ``stretch``."""
    check_degrees_supported(max_degree, stretch)
    builder = AtlasBuilder(stretch)
    rows = {n: builder.solvable_ct_sets(n) for n in range(1, max_degree + 1)}
    caps = {"stretch": stretch,
            "prime_power_degrees": sorted(q for q in supported_degrees(stretch) if q <= max_degree)}
    return SolvableAtlas(max_degree, rows, caps)


def atlas_save(atlas: SolvableAtlas, path) -> None:
    Path(path).write_text(atlas.to_json(), encoding="utf-8")


def atlas_load(path) -> SolvableAtlas:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no atlas at {p}")
    return SolvableAtlas.from_json(p.read_text(encoding="utf-8"))


def default_atlas_path(max_degree: int, stretch: bool) -> Path:
    env = os.environ.get("INVGEN_ATLAS")
    if env:
        return Path(env)
    suffix = "-stretch" if stretch else ""
    return Path.cwd() / f"invgen-{max_degree}{suffix}.atlas.json"


def load_or_build(max_degree: int, path=None, stretch: bool = False) -> SolvableAtlas:
    """Load a cached atlas covering ``max_degree``, or build and cache one."""
    stretch = stretch or max_degree >= 16
    p = Path(path) if path else default_atlas_path(max_degree, stretch)
    if p.exists():
        atlas = atlas_load(p)
        if atlas.max_degree >= max_degree:
            return atlas
        if path:
            raise CapabilityError(
                f"atlas {p} covers degrees up to {atlas.max_degree}, need {max_degree}")
    atlas = build_atlas(max_degree, stretch)
    try:
        atlas_save(atlas, p)
    except OSError as exc:
        log.warning("could not cache atlas at %s: %s", p, exc)
    return atlas
