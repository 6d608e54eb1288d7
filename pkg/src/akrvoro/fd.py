"""Finite-difference derivatives on [0, 1] domains.

Central stencils by default; one-sided stencils take over within a step of
the boundary.  Steps follow the usual truncation/round-off balance:
eps^(1/3) for first derivatives and eps^(1/4) for second derivatives,
scaled by the coordinate magnitude.
"""

import numpy as np

__all__ = ["finite_difference_partials", "fd_derivative_1d", "fd_partials_2d"]

_EPS = np.finfo(np.float64).eps
_H1 = _EPS ** (1.0 / 3.0)
_H2 = _EPS**0.25


def _step(x, order):
    base = _H1 if order == 1 else _H2
    return base * max(1.0, abs(x))


def _stencil(x, h, order, lo=0.0, hi=1.0):
    """Offset/coefficient pairs for d^order/dx^order at x, staying in [lo, hi]."""
    if order == 1:
        if x - h >= lo and x + h <= hi:
            return ((-h, -0.5 / h), (h, 0.5 / h))
        if x + 2 * h <= hi:  # forward, 3 points
            return ((0.0, -1.5 / h), (h, 2.0 / h), (2 * h, -0.5 / h))
        return ((0.0, 1.5 / h), (-h, -2.0 / h), (-2 * h, 0.5 / h))
    h2 = h * h
    if x - h >= lo and x + h <= hi:
        return ((-h, 1.0 / h2), (0.0, -2.0 / h2), (h, 1.0 / h2))
    if x + 3 * h <= hi:  # forward, 4 points
        return ((0.0, 2.0 / h2), (h, -5.0 / h2), (2 * h, 4.0 / h2), (3 * h, -1.0 / h2))
    return ((0.0, 2.0 / h2), (-h, -5.0 / h2), (-2 * h, 4.0 / h2), (-3 * h, -1.0 / h2))


def _call(func):
    return getattr(func, "eval", func)


def fd_derivative_1d(func, x, order):
    """First or second derivative of a scalar function at x in [0, 1]."""
    f = _call(func)
    x = float(x)
    h = _step(x, order)
    return float(sum(c * f(x + o) for o, c in _stencil(x, h, order)))


def fd_partials_2d(func, x, y, order):
    """(fx, fy) for order 1, (fxx, fxy, fyy) for order 2, at (x, y)."""
    f = _call(func)
    x = float(x)
    y = float(y)
    if order == 1:
        hx = _step(x, 1)
        hy = _step(y, 1)
        fx = sum(c * f(x + o, y) for o, c in _stencil(x, hx, 1))
        fy = sum(c * f(x, y + o) for o, c in _stencil(y, hy, 1))
        return float(fx), float(fy)
    hx = _step(x, 2)
    hy = _step(y, 2)
    fxx = sum(c * f(x + o, y) for o, c in _stencil(x, hx, 2))
    fyy = sum(c * f(x, y + o) for o, c in _stencil(y, hy, 2))
    # mixed partial: tensor product of two first-derivative stencils taken
    # at the second-derivative step (the interior case is the standard
    # 4-point cross; the eps^(1/3) step would leave 1/h^2 round-off)
    fxy = sum(
        cx * cy * f(x + ox, y + oy)
        for ox, cx in _stencil(x, hx, 1)
        for oy, cy in _stencil(y, hy, 1)
    )
    return float(fxx), float(fxy), float(fyy)


def finite_difference_partials(func, point, order):
    """Finite-difference derivatives of an evaluation-only function.

    ``point`` is a float for one-dimensional functions or an (x, y) pair
    (anything ``tensor.as_point`` accepts) for functions on the square.
    Returns the derivative for 1-d input, else the partials tuple from
    ``fd_partials_2d``.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    if np.ndim(point) == 0 and not hasattr(point, "x"):
        return fd_derivative_1d(func, point, order)
    if hasattr(point, "x"):
        x, y = point.x, point.y
    else:
        x, y = point
    return fd_partials_2d(func, x, y, order)
