"""Adaptive Gauss-Legendre quadrature (used as an independent oracle)."""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(20)


def _panel(func, lo, hi):
    half = 0.5 * (hi - lo)
    t = lo + half * (_NODES + 1)
    vals = np.asarray(func(t))
    return half * np.tensordot(_WEIGHTS, vals, axes=(0, 0))


def integrate(func, lo: float, hi: float, rtol: float = 1e-10, atol: float = 1e-15,
              max_panels: int = 20000):
    """Integral of a vectorised ``func`` over ``[lo, hi]``.

    ``func(t)`` receives a 1-D array of nodes and returns values with the
    node axis first; any trailing shape is integrated componentwise.
    Panels are bisected until each two-half refinement agrees with the
    parent panel to within ``max(atol, rtol * |total|)`` scaled by its width.
    """
    total = 0
    stack = [(lo, hi, _panel(func, lo, hi))]
    done = 0
    width = hi - lo
    estimate = np.abs(stack[0][2])
    while stack:
        a, b, whole = stack.pop()
        m = 0.5 * (a + b)
        left, right = _panel(func, a, m), _panel(func, m, b)
        err = np.max(np.abs(left + right - whole))
        allowed = max(atol, rtol * float(np.max(estimate))) * (b - a) / width
        if err <= allowed or (b - a) < 1e-15 * width:
            total = total + left + right
        else:
            stack.append((a, m, left))
            stack.append((m, b, right))
        done += 1
        if done > max_panels:
            raise ConvergenceError("quadrature exceeded its panel budget", tail=err)
    return total
