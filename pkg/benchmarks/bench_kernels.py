"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 8 16 32 64] [--repeat 5]
"""

import argparse
import time

import numpy as np

from bfredholm import kernels
from bfredholm.sampling import complex_gaussian


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n, rng):
    a = complex_gaussian(rng, (n, n))
    theta = 2 * np.pi * np.arange(64 * n) / (64 * n)
    w = np.exp(1j * theta) ** 3 + 0.2
    return {
        "pivoted_qr": lambda m: m.pivoted_qr(a, 1e-12),
        "hessenberg": lambda m: m.hessenberg(a),
        "eigvals": lambda m: m.hessenberg_eigvals(m.hessenberg(a), 100),
        "winding": lambda m: m.winding_number(w.real, w.imag),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled backend not built; only the numpy fallback is available")
    names = sorted(mods)
    print(f"{'kernel':<12}{'n':>5}" + "".join(f"{nm + ' [ms]':>16}" for nm in names) + f"{'speedup':>10}")
    rng = np.random.default_rng(args.seed)
    for n in args.sizes:
        for kernel, fn in cases(n, rng).items():
            t = {nm: best_of(lambda: fn(mods[nm]), args.repeat) for nm in names}
            speed = t["python"] / t["cython"] if "cython" in t else float("nan")
            print(f"{kernel:<12}{n:>5}" + "".join(f"{t[nm] * 1e3:>16.3f}" for nm in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
