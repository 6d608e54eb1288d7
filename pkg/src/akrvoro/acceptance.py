"""Acceptance checks: numbered, self-contained verification criteria.

Each criterion pins its own tolerances and runtime budget and returns a
CriterionResult; ``run_all`` executes them in order.  The CLI ``verify``
command and the test suite both call into this module.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .akr import build_node_table, fixed_point_error, remainder
from .asymptotics import (
    ConvergenceSeries,
    decomposition,
    drift_rhs_2d,
    extrapolate,
    residual_series,
    voronovskaja_rhs_2d,
)
from .catalog import lookup
from .tensor import tensor_akr_apply, tensor_bernstein_apply

__all__ = ["CriterionResult", "CRITERIA", "run_all", "run_criterion"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    runtime_limit: float
    detail: str

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def line(self):
        return (
            f"[{self.status}] criterion {self.number}: {self.name} "
            f"({self.elapsed:.2f}s < {self.runtime_limit:.0f}s) {self.detail}"
        )


def _relative_ok(limit, target, tol):
    # strict relative comparison, absolute when the target vanishes exactly
    if target == 0.0:
        return abs(limit) <= tol, abs(limit)
    err = abs(limit - target) / abs(target)
    return err <= tol, err


def criterion_1():
    """Fixed-point reproduction of 1 and t^j on a 101-point grid."""
    worst = 0.0
    for j in (2, 3):
        for n in (16, 64, 256):
            worst = max(worst, fixed_point_error(n, j, 101))
    return worst <= 1e-12, f"max grid error {worst:.3e} (<= 1e-12)"


def criterion_2():
    """Remainder sign/endpoint properties and node drift bounds, n <= 4096."""
    worst_r0 = 0.0
    min_r = math.inf
    min_drift = math.inf
    max_excess = -math.inf
    for n in range(2, 4097):
        k = np.arange(n + 1)
        r = remainder(n, k)
        expected = -1.0 / (2.0 * n)
        worst_r0 = max(worst_r0, abs(r[0] - expected) / np.spacing(abs(expected)))
        min_r = min(min_r, float(r[1:].min()))
        drift = k / n - build_node_table(n, 2).nodes
        min_drift = min(min_drift, float(drift.min()))
        max_excess = max(max_excess, float((drift - 1.0 / n).max()))
    ok = (
        worst_r0 <= 1.0
        and min_r >= -1e-15
        and min_drift >= -1e-15
        and max_excess <= 1e-15
    )
    return ok, (
        f"R(n,0) off by {worst_r0:.2f} ulp; min R(k>=1) {min_r:.2e}; "
        f"drift in [{min_drift:.2e}, 1/n + {max_excess:.2e}]"
    )


def criterion_3():
    """The scaled remainder sum stays non-negative and extrapolates to 0."""
    detail = []
    ok = True
    for x in (0.1, 0.25, 0.5, 0.75, 1.0):
        series = residual_series("lemma-sum", None, x, n0=64, doublings=7)
        values = series.values
        if values.min() < -1e-13:
            ok = False
        if x == 1.0:
            if not np.all(values == 0.0):
                ok = False
            detail.append("x=1: all zero")
            continue
        limit = extrapolate(series).limit_estimate
        if abs(limit) > 1e-2:
            ok = False
        detail.append(f"x={x}: limit {limit:.1e}")
    return ok, "; ".join(detail)


def criterion_4():
    """1-d residual series for the identity extrapolates to -(1-x)/2."""
    entry = lookup("e1")
    ok = True
    detail = []
    for x in (0.3, 0.5, 0.9):
        series = residual_series("akr-1d", entry.function, x, n0=64, doublings=7)
        limit = extrapolate(series).limit_estimate
        target = -(1.0 - x) / 2.0
        good, err = _relative_ok(limit, target, 1e-2)
        ok = ok and good
        detail.append(f"x={x}: rel err {err:.1e}")
    return ok, "; ".join(detail)


_LIMIT_CASES = tuple(
    (fn_name, point)
    for fn_name in ("exp-sum", "runge-2d")
    for point in ((0.5, 0.5), (0.7, 0.3))
)


def criterion_5():
    """Square-domain residual series match the saturation limit to 2e-2."""
    ok = True
    detail = []
    for fn_name, point in _LIMIT_CASES:
        f = lookup(fn_name).function
        series = residual_series("akr-2d", f, point, n0=64, doublings=7)
        limit = extrapolate(series).limit_estimate
        target = voronovskaja_rhs_2d(f, point)
        good, err = _relative_ok(limit, target, 2e-2)
        ok = ok and good
        detail.append(f"{fn_name}@{point}: err {err:.1e}")
    return ok, "; ".join(detail)


def criterion_6():
    """Operator-difference series match the first-order drift to 2e-2."""
    ok = True
    detail = []
    for fn_name, point in _LIMIT_CASES:
        f = lookup(fn_name).function
        series = residual_series(
            "akr-minus-bernstein-2d", f, point, n0=64, doublings=7
        )
        limit = extrapolate(series).limit_estimate
        target = drift_rhs_2d(f, point)
        good, err = _relative_ok(limit, target, 2e-2)
        ok = ok and good
        detail.append(f"{fn_name}@{point}: err {err:.1e}")
    return ok, "; ".join(detail)


def criterion_7():
    """Decomposition identity and remainder bound for exp-sum."""
    f = lookup("exp-sum").function
    bound_const = f.sup_bounds.taylor_constant()
    ok = True
    detail = []
    for n in (64, 256, 1024):
        for point in ((0.5, 0.5), (0.7, 0.3)):
            d = decomposition(f, n, point)
            recomputed = n * (
                tensor_akr_apply(f, n, 2, point, use_separability=False)
                - tensor_bernstein_apply(f, n, point, use_separability=False)
            )
            mismatch = abs(recomputed - (d.e_term + d.f_term + d.g_residual))
            g_bound = bound_const / (2.0 * n)
            if mismatch > 1e-10 or abs(d.g_residual) > g_bound:
                ok = False
        detail.append(
            f"n={n}: |total-(E+F+G)| {mismatch:.1e}, |G| {abs(d.g_residual):.2e}"
            f" <= {g_bound:.2e}"
        )
    return ok, "; ".join(detail)


def criterion_8():
    """Extrapolator recovers known limits and rates of synthetic series."""

    def synth(values):
        entries = tuple((64 * 2**m, float(v)) for m, v in enumerate(values))
        return ConvergenceSeries(entries, "lemma-sum", 0.5)

    m = np.arange(8, dtype=np.float64)
    const = extrapolate(synth(np.full(8, 2.5)))
    geom = extrapolate(synth(1.0 + 2.0**-m))
    half = extrapolate(synth(3.0 + 2.0 ** (-m / 2.0)))
    ok = (
        const.limit_estimate == 2.5
        and const.residual_tail == 0.0
        and abs(geom.limit_estimate - 1.0) <= 1e-10
        and abs(geom.rate_estimate - 1.0) <= 1e-6
        and abs(half.limit_estimate - 3.0) <= 1e-6
        and abs(half.rate_estimate - 0.5) <= 1e-3
    )
    return ok, (
        f"constant {const.limit_estimate}; geometric limit "
        f"{geom.limit_estimate:.12f} rate {geom.rate_estimate:.8f}; half-rate "
        f"limit {half.limit_estimate:.8f} rate {half.rate_estimate:.6f}"
    )


CRITERIA = (
    (1, "fixed-point reproduction", criterion_1, 1.0),
    (2, "remainder properties sweep", criterion_2, 10.0),
    (3, "scaled remainder sum vanishes", criterion_3, 30.0),
    (4, "1-d saturation limit", criterion_4, 10.0),
    (5, "square-domain saturation limit", criterion_5, 180.0),
    (6, "operator drift identity", criterion_6, 180.0),
    (7, "drift decomposition and bound", criterion_7, 30.0),
    (8, "extrapolator oracle", criterion_8, 1.0),
)


def run_criterion(number):
    """Run one numbered criterion (kernels are warmed first)."""
    _kernels.warmup()
    for num, name, fn, limit in CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, detail = fn()
            elapsed = time.perf_counter() - start
            if elapsed >= limit:
                passed = False
                detail += f"; runtime {elapsed:.1f}s exceeded {limit:.0f}s"
            return CriterionResult(num, name, passed, elapsed, limit, detail)
    raise ValueError(f"no criterion numbered {number}")


def run_all(numbers=None):
    """Run the requested criteria (all by default) in order."""
    wanted = tuple(numbers) if numbers else tuple(num for num, *_ in CRITERIA)
    return [run_criterion(num) for num in wanted]
