import itertools

import pytest

from invgen.affine import (check_supported, primitive_solvable_ct_sets,
                           primitive_witness_generators)
from invgen.errors import CapabilityError, SizeError
from invgen.groups import PermGroup, cycle_type_set, is_solvable, minimal_blocks
from invgen.subgroups import all_solvable_subgroup_ct_sets

from oracles import (agl1_elements, closure, cycle_types_of, is_solvable_by_elements,
                     trace_cycle_type)


def all_partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in all_partitions(n - k, k):
            yield (k,) + rest


# -- independent affine oracle: matrices as tuples of rows over F_p ------------


def _vectors(p, d):
    return list(itertools.product(range(p), repeat=d))


def _matvec(A, v, p):
    return tuple(sum(a * x for a, x in zip(row, v)) % p for row in A)


def _matmul(A, B, p):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols) for row in A)


def _gl(p, d):
    vecs = _vectors(p, d)
    out = []
    for rows in itertools.product(vecs, repeat=d):
        A = tuple(rows)
        images = {_matvec(A, v, p) for v in vecs}
        if len(images) == len(vecs):
            out.append(A)
    return out


def _as_perm(A, p, d):
    vecs = _vectors(p, d)
    idx = {v: i for i, v in enumerate(vecs)}
    return tuple(idx[_matvec(A, v, p)] for v in vecs)


def _irreducible(perms, p, d):
    vecs = _vectors(p, d)
    zero = vecs[0]
    idx = {v: i for i, v in enumerate(vecs)}
    for v in vecs[1:]:
        span = {zero, v}
        grew = True
        while grew:
            grew = False
            for w in list(span):
                for g in perms:
                    img = vecs[g[idx[w]]]
                    for u in list(span):
                        s = tuple((a + b) % p for a, b in zip(img, u))
                        if s not in span:
                            span.add(s)
                            grew = True
        if len(span) < len(vecs):
            return False
    return True


def _affine_types(H_perms, p, d):
    vecs = _vectors(p, d)
    idx = {v: i for i, v in enumerate(vecs)}
    types = set()
    for h in H_perms:
        for b in vecs:
            g = tuple(idx[tuple((x + y) % p for x, y in zip(vecs[h[i]], b))]
                      for i in range(len(vecs)))
            types.add(trace_cycle_type(g))
    return frozenset(types)


def oracle_primitive_sets(p, d):
    n = p**d
    gl = [_as_perm(A, p, d) for A in _gl(p, d)]
    subgroups = set()
    for a, b in itertools.combinations_with_replacement(gl, 2):
        subgroups.add(frozenset(closure([a, b], n)))
    families = set()
    for H in subgroups:
        if not is_solvable_by_elements(H, n):
            continue
        if not _irreducible(list(H), p, d):
            continue
        families.add(_affine_types(H, p, d))
    maximal = [s for s in families if not any(s < t for t in families)]
    return set(maximal)


class TestPrimitiveSets:
    def test_non_prime_power(self):
        assert primitive_solvable_ct_sets(6) == []
        assert primitive_solvable_ct_sets(10) == []

    def test_five(self):
        sets = primitive_solvable_ct_sets(5)
        assert len(sets) == 1
        assert sets[0].types == cycle_types_of(agl1_elements(5))
        assert sets[0].types == {(1, 1, 1, 1, 1), (2, 2, 1), (4, 1), (5,)}

    def test_four(self):
        sets = primitive_solvable_ct_sets(4)
        assert len(sets) == 1
        assert sets[0].types == set(all_partitions(4))

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_prime_characterisation(self, p):
        expected = {(1,) * p, (p,)}
        for e in range(2, p):
            if (p - 1) % e == 0:
                expected.add((e,) * ((p - 1) // e) + (1,))
        sets = primitive_solvable_ct_sets(p)
        assert len(sets) == 1
        assert sets[0].types == expected == cycle_types_of(agl1_elements(p))

    @pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2)])
    def test_prime_power_against_matrix_oracle(self, p, d):
        got = {s.types for s in primitive_solvable_ct_sets(p**d)}
        assert got == oracle_primitive_sets(p, d)

    @pytest.mark.parametrize("q", [4, 8, 9])
    def test_witnesses_realise_each_set(self, q):
        sets = primitive_solvable_ct_sets(q)
        witnesses = primitive_witness_generators(q)
        assert len(sets) == len(witnesses)
        for s, gens in zip(sets, witnesses):
            G = PermGroup(q, gens)
            assert is_solvable(G)
            assert minimal_blocks(G) == "primitive"
            assert cycle_type_set(G).types == s.types

    def test_unsupported_degree(self):
        with pytest.raises(CapabilityError, match=r"GL\(4,2\)"):
            primitive_solvable_ct_sets(16)
        with pytest.raises(CapabilityError, match=r"GL\(2,7\)"):
            check_supported(49, stretch=True)

    def test_sets_contain_identity(self):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for s in primitive_solvable_ct_sets(q):
                assert (1,) * q in s
                assert all(sum(t) == q for t in s.types)


@pytest.mark.slow
@pytest.mark.parametrize("q", [16, 25])
def test_stretch_witnesses(q):
    sets = primitive_solvable_ct_sets(q, stretch=True)
    witnesses = primitive_witness_generators(q, stretch=True)
    assert sets
    for s, gens in zip(sets, witnesses):
        G = PermGroup(q, gens)
        assert is_solvable(G)
        assert minimal_blocks(G) == "primitive"
        assert cycle_type_set(G).types == s.types


class TestSubgroupOracle:
    def test_two(self):
        sets = all_solvable_subgroup_ct_sets(2)
        assert [s.types for s in sets] == [{(1, 1), (2,)}]

    def test_three(self):
        sets = all_solvable_subgroup_ct_sets(3)
        assert [s.types for s in sets] == [{(1, 1, 1), (2, 1), (3,)}]

    def test_five(self):
        sets = [s.types for s in all_solvable_subgroup_ct_sets(5)]
        assert cycle_types_of(agl1_elements(5)) in sets
        s4_fix = {t + (1,) for t in all_partitions(4)}
        assert s4_fix in sets
        assert not any((5,) in s and (3, 2) in s for s in sets)
        assert any((5,) in s and (4, 1) in s for s in sets)

    def test_size_cap(self):
        with pytest.raises(SizeError):
            all_solvable_subgroup_ct_sets(8)
