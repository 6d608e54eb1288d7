"""Numeric kernels: compensated reductions and stable log binomial weights.

Two interchangeable backends live here.  The default uses numba-compiled
loops with explicit Kahan compensation; setting ``AKRVORO_PURE_NUMPY=1``
(or running without numba installed) selects pure numpy/python fallbacks
that keep the same accuracy contracts.  Reduction order is fixed
(ascending index, rows outer) so results are deterministic per backend.
"""

import math
import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "backend",
    "comp_sum",
    "comp_dot",
    "bilinear_accumulate",
    "log_weight",
    "log_weights",
    "warmup",
]


def _flag_enabled(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


_FORCE_NUMPY = _flag_enabled("AKRVORO_PURE_NUMPY")

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    _HAVE_NUMBA = False

USING_NUMBA = _HAVE_NUMBA and not _FORCE_NUMPY


def backend():
    """Name of the active kernel backend, 'numba' or 'numpy'."""
    return "numba" if USING_NUMBA else "numpy"


# --------------------------------------------------------------------------
# Stable log binomial weights.
#
# ln C(n,k) + k ln x + (n-k) ln(1-x) evaluated through three naive lgamma
# calls loses ~n*eps absolute accuracy (the lgammas are O(n log n) and the
# result is O(1)), which breaks the 1e-12 partition-of-unity budget near
# n = 2048.  The saddle-point split below keeps every intermediate O(1):
#
#   ln w = s(n) - s(k) - s(n-k) - bd0(k, n x) - bd0(n-k, n(1-x))
#          + 0.5 ln(n / (2 pi k (n-k)))
#
# with s(m) = ln m! - (m ln m - m + 0.5 ln(2 pi m)) and
# bd0(a, m) = a ln(a/m) + m - a computed by series when a is near m.
# --------------------------------------------------------------------------

# s(m) for m = 0..15; series below handles m >= 16.
_STIRLERR_TABLE = np.array(
    [
        0.0,
        0.081061466795327258219670264,
        0.041340695955409294093822081,
        0.0276779256849983391487892927,
        0.020790672103765093111522771,
        0.0166446911898211921631948653,
        0.013876128823070747998745727,
        0.0118967099458917700950557241,
        0.010411265261972096497478567,
        0.0092554621827127329177286366,
        0.008330563433362871256469318,
        0.0075736754879518407949720242,
        0.006942840107209529865664152,
        0.0064089941880042070684396310,
        0.005951370112758847735624416,
        0.0055547335519628013710386899,
    ]
)

_S0 = 1.0 / 12.0
_S1 = 1.0 / 360.0
_S2 = 1.0 / 1260.0
_S3 = 1.0 / 1680.0
_S4 = 1.0 / 1188.0


def _stirlerr_py(m):
    if m < 16.0:
        return _STIRLERR_TABLE[int(m)]
    m2 = m * m
    return (_S0 - (_S1 - (_S2 - (_S3 - _S4 / m2) / m2) / m2) / m2) / m


def _bd0_py(a, m):
    # a ln(a/m) + m - a, series form when a is within 10% of m
    if abs(a - m) < 0.1 * (a + m):
        v = (a - m) / (a + m)
        s = (a - m) * v
        ej = 2.0 * a * v
        v2 = v * v
        j = 1
        while True:
            ej *= v2
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
            j += 1
    return a * math.log(a / m) + m - a


def _log_weight_py(n, k, x):
    # interior 0 < k < n, 0 < x < 1 only; endpoints are branched by callers
    nf = float(n)
    kf = float(k)
    return (
        _stirlerr_py(nf)
        - _stirlerr_py(kf)
        - _stirlerr_py(nf - kf)
        - _bd0_py(kf, nf * x)
        - _bd0_py(nf - kf, nf * (1.0 - x))
        + 0.5 * math.log(nf / (2.0 * math.pi * kf * (nf - kf)))
    )


def log_weight(n, k, x):
    """ln of the degree-n Bernstein basis weight at index k and point x."""
    if x == 0.0:
        return 0.0 if k == 0 else -math.inf
    if x == 1.0:
        return 0.0 if k == n else -math.inf
    if k == 0:
        return n * math.log1p(-x)
    if k == n:
        return n * math.log(x)
    return _log_weight_py(n, k, x)


def _log_weights_np(n, x):
    lw = np.empty(n + 1)
    if x == 0.0:
        lw[:] = -np.inf
        lw[0] = 0.0
        return lw
    if x == 1.0:
        lw[:] = -np.inf
        lw[n] = 0.0
        return lw
    lw[0] = n * math.log1p(-x)
    lw[n] = n * math.log(x)
    if n < 2:
        return lw
    k = np.arange(1.0, float(n))
    lw[1:n] = (
        _stirlerr_py(float(n))
        - _stirlerr_np(k)
        - _stirlerr_np(n - k)
        - _bd0_np(k, n * x)
        - _bd0_np(n - k, n * (1.0 - x))
        + 0.5 * np.log(n / (2.0 * math.pi * k * (n - k)))
    )
    return lw


def _stirlerr_np(m):
    out = np.empty_like(m)
    small = m < 16.0
    out[small] = _STIRLERR_TABLE[m[small].astype(np.intp)]
    mm = m[~small]
    m2 = mm * mm
    out[~small] = (_S0 - (_S1 - (_S2 - (_S3 - _S4 / m2) / m2) / m2) / m2) / mm
    return out


def _bd0_np(a, m):
    a = np.asarray(a, dtype=float)
    m = np.broadcast_to(np.asarray(m, dtype=float), a.shape)
    out = np.empty(a.shape)
    near = np.abs(a - m) < 0.1 * (a + m)
    an, mn = a[near], m[near]
    v = (an - mn) / (an + mn)
    s = (an - mn) * v
    ej = 2.0 * an * v
    v2 = v * v
    j = 1
    while ej.size:
        ej = ej * v2
        s1 = s + ej / (2 * j + 1)
        if np.array_equal(s1, s):
            break
        s = s1
        j += 1
    out[near] = s
    af, mf = a[~near], m[~near]
    # af/mf may overflow when mf is subnormal (x within a few ulp of 0 or
    # 1); the inf propagates to a -inf log weight, i.e. an exact 0 weight
    with np.errstate(over="ignore"):
        out[~near] = af * np.log(af / mf) + mf - af
    return out


# --------------------------------------------------------------------------
# Compensated reductions (numpy/python fallbacks).
# math.fsum is a full-precision compensated sum, so the fallback meets the
# same contract as the Kahan loops; the bilinear fallback keeps Kahan
# compensation across rows and lets BLAS handle each row product.
# --------------------------------------------------------------------------


def _comp_sum_np(values):
    return math.fsum(values)


def _comp_dot_np(a, b):
    return math.fsum(np.multiply(a, b))


def _bilinear_accumulate_np(block, wx_block, wy, state):
    rows = block @ wy
    s = state[0]
    c = state[1]
    for i in range(rows.shape[0]):
        v = wx_block[i] * rows[i]
        t = s + v
        c += (s - t) + v
        s = t
    state[0] = s
    state[1] = c


if _HAVE_NUMBA:
    _stirlerr_nb = njit(cache=True)(_stirlerr_py)
    _bd0_nb = njit(cache=True)(_bd0_py)

    @njit(cache=True)
    def _log_weights_nb(n, x, lw):
        lw[0] = n * math.log1p(-x)
        lw[n] = n * math.log(x)
        nf = float(n)
        sn = _stirlerr_nb(nf)
        for k in range(1, n):
            kf = float(k)
            lw[k] = (
                sn
                - _stirlerr_nb(kf)
                - _stirlerr_nb(nf - kf)
                - _bd0_nb(kf, nf * x)
                - _bd0_nb(nf - kf, nf * (1.0 - x))
                + 0.5 * math.log(nf / (2.0 * math.pi * kf * (nf - kf)))
            )

    @njit(cache=True)
    def _comp_sum_nb(values):
        s = 0.0
        c = 0.0
        for i in range(values.shape[0]):
            v = values[i]
            t = s + v
            c += (s - t) + v
            s = t
        return s + c

    @njit(cache=True)
    def _comp_dot_nb(a, b):
        s = 0.0
        c = 0.0
        for i in range(a.shape[0]):
            v = a[i] * b[i]
            t = s + v
            c += (s - t) + v
            s = t
        return s + c

    @njit(cache=True)
    def _bilinear_accumulate_nb(block, wx_block, wy, state):
        s = state[0]
        c = state[1]
        for i in range(block.shape[0]):
            rs = 0.0
            rc = 0.0
            for l in range(block.shape[1]):
                v = block[i, l] * wy[l]
                t = rs + v
                rc += (rs - t) + v
                rs = t
            v = wx_block[i] * (rs + rc)
            t = s + v
            c += (s - t) + v
            s = t
        state[0] = s
        state[1] = c


if USING_NUMBA:

    def comp_sum(values):
        """Compensated sum of a 1-d array, ascending index order."""
        return _comp_sum_nb(np.ascontiguousarray(values, dtype=np.float64))

    def comp_dot(a, b):
        """Compensated sum of elementwise products, ascending index order."""
        return _comp_dot_nb(
            np.ascontiguousarray(a, dtype=np.float64),
            np.ascontiguousarray(b, dtype=np.float64),
        )

    def bilinear_accumulate(block, wx_block, wy, state):
        """Add sum_i wx_block[i] * sum_l block[i,l]*wy[l] into Kahan state."""
        _bilinear_accumulate_nb(
            np.ascontiguousarray(block, dtype=np.float64), wx_block, wy, state
        )

    def log_weights(n, x):
        """Vector of ln basis weights for degree n at point x."""
        lw = np.empty(n + 1)
        if x == 0.0:
            lw[:] = -np.inf
            lw[0] = 0.0
        elif x == 1.0:
            lw[:] = -np.inf
            lw[n] = 0.0
        else:
            _log_weights_nb(n, x, lw)
        return lw

else:
    comp_sum = _comp_sum_np
    comp_dot = _comp_dot_np
    bilinear_accumulate = _bilinear_accumulate_np
    log_weights = _log_weights_np


def warmup():
    """Trigger JIT compilation (no-op on the numpy backend)."""
    a = np.array([1.0, 2.0, 3.0])
    comp_sum(a)
    comp_dot(a, a)
    state = np.zeros(2)
    bilinear_accumulate(np.ones((2, 3)), a[:2], a, state)
    log_weights(4, 0.5)
    log_weight(4, 2, 0.5)
