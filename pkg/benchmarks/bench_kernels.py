"""Time the compiled and numpy kernel backends on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat R] [--n N]
"""

import argparse
import time

import numpy as np

from junta_lab import kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases(n, rng):
    table = rng.choice([-1.0, 1.0], size=2 ** (2 * n))
    mat = (rng.standard_normal(4**n) + 1j * rng.standard_normal(4**n))
    masks = rng.integers(0, 2**n, size=200_000).astype(np.int64)
    outside = rng.integers(1, 2**n, size=64).astype(np.int64)
    probs = np.ascontiguousarray(rng.random((2**n, 2**n)))
    return {
        "fwht": lambda m: m.fwht(table.copy()),
        "pauli_butterfly": lambda m: m.pauli_butterfly(mat.copy(), n),
        "support_counts": lambda m: m.support_counts(masks, outside),
        "extractor_counts": lambda m: m.extractor_counts(masks, n, 2),
        "xor_diagonal_sums": lambda m: m.xor_diagonal_sums(probs),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--n", type=int, default=6, help="qubit count for the dense kernels")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    mods = kernels.backends()
    names = [m.BACKEND for m in mods]
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in names) + ("   speedup" if len(mods) > 1 else ""))
    for name, fn in cases(args.n, rng).items():
        times = [_time(lambda m=m: fn(m), args.repeat) for m in mods]
        row = f"{name:<20}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[-1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
