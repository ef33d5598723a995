"""Independent brute-force helpers used as test oracles.

Nothing here imports the package, so a bug in the library cannot leak into
the expected values.
"""

import itertools
import math


def compose(p, q):
    """p first, then q."""
    return tuple(q[x] for x in p)


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, n):
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def trace_cycle_type(p):
    """Cycle lengths by walking each unvisited point; sorted decreasing."""
    n = len(p)
    visited = set()
    lengths = []
    for start in range(n):
        if start in visited:
            continue
        k, x = 0, start
        while True:
            visited.add(x)
            x = p[x]
            k += 1
            if x == start:
                break
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def count_partitions(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(count_partitions(n - k, k) for k in range(1, min(n, largest) + 1))


def derived_subgroup_by_elements(elems, n):
    comms = {compose(compose(inverse(a), inverse(b)), compose(a, b)) for a in elems for b in elems}
    return closure(list(comms), n)


def is_solvable_by_elements(elems, n):
    cur = set(elems)
    while len(cur) > 1:
        nxt = derived_subgroup_by_elements(cur, n)
        if len(nxt) == len(cur):
            return False
        cur = nxt
    return True


def cycle_types_of(elems):
    return {trace_cycle_type(g) for g in elems}


def agl1_elements(p):
    return {tuple((a * x + b) % p for x in range(p)) for a in range(1, p) for b in range(p)}


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def is_invariant_partition(blocks, gens):
    as_sets = {frozenset(b) for b in blocks}
    return all(frozenset(g[x] for x in b) in as_sets for b in blocks for g in gens)


def sign_by_inversions(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


# -- polynomials over F_p, for the factorization oracle -------------------------


def poly_divmod(a, b, p):
    a = list(a)
    out = [0] * max(len(a) - len(b) + 1, 1)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        out[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return out, a


def monic_polys(deg, p):
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def irreducibles(max_deg, p):
    """Monic irreducibles of degree 1..max_deg by sieving out products."""
    irr = []
    for d in range(1, max_deg + 1):
        for f in monic_polys(d, p):
            if not any(poly_divmod(f, g, p)[1] == [] for g in irr if len(g) - 1 <= d // 2):
                irr.append(f)
    return irr


def trial_division_pattern(f, p, irr):
    f = [x % p for x in f]
    while f and f[-1] == 0:
        f.pop()
    inv_lead = pow(f[-1], p - 2, p)
    f = [x * inv_lead % p for x in f]
    degs = []
    for g in irr:
        while len(f) - 1 >= len(g) - 1:
            q, r = poly_divmod(f, g, p)
            if r:
                break
            degs.append(len(g) - 1)
            while q and q[-1] == 0:
                q.pop()
            f = q
        if len(f) == 1:
            break
    if len(f) > 1:
        degs.append(len(f) - 1)
    return tuple(sorted(degs, reverse=True))


def class_count_formula(ct):
    n = sum(ct)
    den = 1
    for i in set(ct):
        m = ct.count(i)
        den *= i**m * math.factorial(m)
    return math.factorial(n) // den
