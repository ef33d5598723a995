"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from invgen import _kernels_py, kernels
from invgen.atlas import AtlasBuilder, canonical_order, to_bitsets
from invgen.cycletype import partition_tuples

try:
    from invgen import _kernels as compiled
except ImportError:
    compiled = None


def workloads():
    rng = np.random.default_rng(0)
    perms = kernels.random_permutations(25, 4096, rng)
    builder = AtlasBuilder()
    n = 14
    cands = canonical_order(builder.solvable_ct_sets(n) + builder.transitive_ct_sets(n))
    index = {t: i for i, t in enumerate(partition_tuples(n))}
    bits = to_bitsets([s.types for s in cands], index)
    bits = np.repeat(bits, 20, axis=0)
    accepted = np.ascontiguousarray(bits[::20])
    return {
        "cycle_lengths (4096 x S_25)": lambda impl: impl.cycle_lengths(perms),
        f"thin_bitsets ({len(bits)} rows)": lambda impl: impl.thin_bitsets(bits),
        f"subset_mask ({len(bits)} x {len(bits) // 20})":
            lambda impl: impl.subset_mask(bits, accepted),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = {"python": _kernels_py}
    if compiled is not None:
        impls["compiled"] = compiled
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':36s} " + " ".join(f"{k:>12s}" for k in impls) + "   speedup")
    for name, fn in workloads().items():
        times = {k: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat))
                 for k, m in impls.items()}
        speed = f"{times['python'] / times['compiled']:8.1f}x" if "compiled" in times else ""
        print(f"{name:36s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times.values()) + "  " + speed)


if __name__ == "__main__":
    main()
