#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure numpy/python fallbacks.

Runs each reduction and weight kernel at several sizes and prints the
best-of-R wall times side by side.  The numpy column is what you get with
AKRVORO_PURE_NUMPY=1; see README for the flag.
"""

import time

import numpy as np

from akrvoro import _kernels


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_pair(label, fn_nb, fn_np, repeats=5):
    t_np = best_of(fn_np, repeats)
    if fn_nb is not None:
        fn_nb()  # compile before timing
        t_nb = best_of(fn_nb, repeats)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{label:<38} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {ratio:8.2f}x")
    else:
        print(f"{label:<38} {'-':>10} {t_np * 1e3:10.3f} {'-':>9}")


def main():
    have_numba = _kernels._HAVE_NUMBA
    print(f"active backend: {_kernels.backend()}")
    print(f"{'kernel':<38} {'numba ms':>10} {'numpy ms':>10} {'speedup':>9}")

    rng = np.random.default_rng(42)
    for n in (1024, 8192, 65536):
        a = rng.random(n)
        b = rng.random(n)
        bench_pair(
            f"comp_dot, n={n}",
            (lambda a=a, b=b: _kernels._comp_dot_nb(a, b)) if have_numba else None,
            lambda a=a, b=b: _kernels._comp_dot_np(a, b),
        )

    for n in (1024, 4096, 8192):
        block = rng.random((512, n + 1))
        wx = rng.random(512)
        wy = rng.random(n + 1)

        def run_nb(block=block, wx=wx, wy=wy):
            state = np.zeros(2)
            _kernels._bilinear_accumulate_nb(block, wx, wy, state)

        def run_np(block=block, wx=wx, wy=wy):
            state = np.zeros(2)
            _kernels._bilinear_accumulate_np(block, wx, wy, state)

        bench_pair(
            f"bilinear block 512x{n + 1}",
            run_nb if have_numba else None,
            run_np,
        )

    for n in (1024, 8192, 65536):

        def run_lw_nb(n=n):
            lw = np.empty(n + 1)
            _kernels._log_weights_nb(n, 0.37, lw)

        bench_pair(
            f"log_weights, n={n}",
            run_lw_nb if have_numba else None,
            lambda n=n: _kernels._log_weights_np(n, 0.37),
        )


if __name__ == "__main__":
    main()
