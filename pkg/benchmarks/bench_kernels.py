"""Benchmark the compiled kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
The numba path must be available (do not set STATCOMPLEX_NO_NUMBA).
"""

import time

import numpy as np

from statcomplex import kernels


def _time(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if not kernels.HAS_NUMBA:
        raise SystemExit(
            "numba backend unavailable (is STATCOMPLEX_NO_NUMBA set?); "
            "nothing to compare")

    print(f"active backend: {kernels.BACKEND}")
    cases = []

    n = 2048.0
    omegas = np.linspace(0.001, 0.999, 999)
    p_maxes = np.linspace(0.0, 1.0, 1001)
    # warm-up triggers JIT compilation so timings measure steady state
    kernels.family_c_grid_numba(kernels.KIND_TV, n, omegas[:4], p_maxes[:4])
    kernels.simplex3_c_grid_numba(kernels.KIND_SQ, 8)

    for code, label in ((kernels.KIND_SQ, "sq"), (kernels.KIND_JSD, "jsd"),
                        (kernels.KIND_TV, "tv")):
        a = kernels.family_c_grid_numba(code, n, omegas, p_maxes)
        b = kernels.family_c_grid_numpy(code, n, omegas, p_maxes)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-14), label
        t_nb = _time(kernels.family_c_grid_numba, code, n, omegas, p_maxes)
        t_np = _time(kernels.family_c_grid_numpy, code, n, omegas, p_maxes)
        cases.append((f"family grid 999x1001 {label}", t_nb, t_np))

    m = 2000
    a = kernels.simplex3_c_grid_numba(kernels.KIND_SQ, m)
    b = kernels.simplex3_c_grid_numpy(kernels.KIND_SQ, m)
    mask = ~np.isnan(b)
    assert np.allclose(a[mask], b[mask], rtol=1e-12, atol=1e-14)
    t_nb = _time(kernels.simplex3_c_grid_numba, kernels.KIND_SQ, m)
    t_np = _time(kernels.simplex3_c_grid_numpy, kernels.KIND_SQ, m)
    cases.append((f"simplex grid m={m} sq", t_nb, t_np))

    scalar_args = (kernels.KIND_TV, 2048.0, 0.9122, 0.9999)

    def scalar_loop(fn):
        for _ in range(20000):
            fn(*scalar_args)

    t_nb = _time(scalar_loop, kernels.family_hdc_numba)
    t_np = _time(scalar_loop, kernels.family_hdc_numpy)
    cases.append(("scalar point eval x20000 tv", t_nb, t_np))

    width = max(len(name) for name, _, _ in cases)
    print(f"{'case'.ljust(width)}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_nb, t_np in cases:
        print(f"{name.ljust(width)}  {t_nb * 1e3:>8.2f}ms  {t_np * 1e3:>8.2f}ms  "
              f"{t_np / t_nb:>7.2f}x")


if __name__ == "__main__":
    main()
