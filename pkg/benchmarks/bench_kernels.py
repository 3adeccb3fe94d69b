"""Compare the numba kernels with the pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from symnc import _kernels
from symnc.sampling import random_density


def cases(rng):
    binom = _kernels.binom_table(12)
    rho5 = random_density(5, rng)
    sqrtb = np.sqrt(_kernels.binom_table(5)[5, :6])
    thetas = np.linspace(0, np.pi, 181)
    phis = 2 * np.pi * np.arange(360) / 360
    starts = rng.uniform([0, 0], [np.pi, 2 * np.pi], size=(10, 2))
    h = (thetas[1], phis[1])
    return {
        "smatrix_counts N=12": ("smatrix_counts", (3, 3, 3, 3, binom)),
        "smatrix_strings N=10": ("smatrix_strings", (np.array([0, 1, 2, 3] * 2 + [1, 3]), binom)),
        "overlap_mesh N=5 181x360": ("overlap_mesh", (rho5, thetas, phis, sqrtb)),
        "refine N=5 10 starts x 40": ("refine", (rho5, sqrtb, starts, h[0], h[1], 40)),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':28s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for label, (name, call_args) in cases(rng).items():
        timings = []
        for kernels in (_kernels.NUMBA_KERNELS, _kernels.NUMPY_KERNELS):
            fn = kernels[name]
            fn(*call_args)  # compile / warm up
            number = 3
            best = min(timeit.repeat(lambda: fn(*call_args), number=number, repeat=args.repeat))
            timings.append(1e3 * best / number)
        print(f"{label:28s} {timings[0]:10.3f} {timings[1]:10.3f} {timings[1] / timings[0]:8.1f}x")


if __name__ == "__main__":
    main()
