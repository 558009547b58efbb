"""Timing comparison of the numba kernels against their numpy fallbacks.

Run:  python3 benchmarks/bench_kernels.py [--repeats N]

Each kernel is timed on the same inputs through both implementations (the
JIT warm-up call is excluded).  Without numba installed only the numpy
column is reported.
"""
import argparse
import math
import time

import numpy as np

from symmlu import _kernels, states


def median_time(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return sorted(samples)[len(samples) // 2]


def bench_conj_distance(repeats):
    rng = np.random.default_rng(7)
    n = 4
    rho = states.random_symmetric_mixed(n, rng).mat
    g = states.random_su2(rng)
    big = np.eye(1, dtype=np.complex128)
    for _ in range(n):
        big = np.kron(big, g)
    target = big @ rho @ big.conj().T
    axis = np.linspace(0, 2 * math.pi, 12, endpoint=False)
    beta = np.linspace(0, math.pi, 12)
    grids = np.meshgrid(axis, beta, axis, indexing="ij")
    angles = np.stack([a.ravel() for a in grids], axis=1)

    def run_np():
        _kernels._conj_distance_batch_numpy(angles, rho, target, n)

    def run_nb():
        _kernels._conj_distance_batch_nb(angles, rho, target, n)

    return f"conj_distance_batch ({angles.shape[0]} points, n={n})", run_np, run_nb


def bench_polish_roots(repeats):
    rng = np.random.default_rng(8)
    deg = 8
    roots = rng.normal(size=deg) + 1j * rng.normal(size=deg)
    coeffs = np.poly(roots).astype(np.complex128)
    noisy = roots + 1e-5 * (rng.normal(size=deg) + 1j * rng.normal(size=deg))

    def run_np():
        for _ in range(500):
            _kernels._polish_roots_numpy(coeffs, noisy, 5)

    def run_nb():
        for _ in range(500):
            _kernels._polish_roots_nb(coeffs, noisy, 5)

    return f"polish_roots (500 calls, degree {deg})", run_np, run_nb


def bench_diag_phase(repeats):
    rng = np.random.default_rng(9)
    n = 6
    m = 400
    vals = rng.uniform(0.0, 1.0, size=m)
    diffs = rng.integers(-1, 2, size=(m, n)).astype(np.float64)
    phis = rng.uniform(0, 2 * math.pi, size=(20000, n))

    def run_np():
        _kernels._diag_phase_residual_numpy(phis, vals, diffs)

    def run_nb():
        _kernels._diag_phase_residual_nb(phis, vals, diffs)

    return f"diag_phase_residual ({phis.shape[0]} x {m} entries, n={n})", run_np, run_nb


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    benches = [bench_conj_distance, bench_polish_roots, bench_diag_phase]
    print(f"numba in use: {_kernels.USING_NUMBA}   (repeats: {args.repeats})")
    header = f"{'kernel':52s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for bench in benches:
        name, run_np, run_nb = bench(args.repeats)
        t_np = median_time(run_np, args.repeats)
        if _kernels.USING_NUMBA:
            run_nb()  # JIT warm-up, excluded from timing
            t_nb = median_time(run_nb, args.repeats)
            print(f"{name:52s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x")
        else:
            print(f"{name:52s} {t_np * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
