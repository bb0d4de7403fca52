"""Growth, covering, Jacobian and area bounds for absolutely convex maps.

Every constant is derived from ``sqrt(3)`` at call time.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError

SQRT3 = math.sqrt(3.0)
JAC_EXP = 4 / SQRT3


def order_constant(family: str = "AK_H") -> float:
    """Order of the linear invariant family (``2/sqrt 3``)."""
    if family != "AK_H":
        raise DomainError(f"unknown family {family!r}")
    return 2 / SQRT3


def covering_radius() -> float:
    """``sqrt 3 / (sqrt 3 + 4)``."""
    return SQRT3 / (SQRT3 + 4)


def growth_exponent() -> float:
    return (SQRT3 + 4) / (2 * SQRT3)


def _check_r(r, allow_zero=False):
    ok = (0 <= r < 1) if allow_zero else (0 < r < 1)
    if not ok:
        raise DomainError(f"r = {r} outside {'[0, 1)' if allow_zero else '(0, 1)'}")


def _check_b1(b1_mod):
    if not 0 <= b1_mod < 1:
        raise DomainError(f"|b1| = {b1_mod} outside [0, 1)")


def growth_bounds(r: float) -> tuple[float, float]:
    """Lower/upper bounds on ``|f(z)|`` for ``|z| = r``."""
    _check_r(r)
    c, p = covering_radius(), growth_exponent()
    q = (1 - r) / (1 + r)
    return c * (1 - q ** p), c * (q ** -p - 1)


def jacobian_bounds_array(r, b1_mod: float = 0.0):
    """Vectorised :func:`jacobian_bounds` without domain checks (quadrature helper)."""
    s = 1 - b1_mod ** 2
    return (s * (1 - r) ** (JAC_EXP - 2) / (1 + r) ** (JAC_EXP + 2),
            s * (1 + r) ** (JAC_EXP - 2) / (1 - r) ** (JAC_EXP + 2))


def jacobian_bounds(r: float, b1_mod: float = 0.0) -> tuple[float, float]:
    """Bounds on ``J_f`` at ``|z| = r`` given ``|b1|``."""
    _check_r(r, allow_zero=True)
    _check_b1(b1_mod)
    s = 1 - b1_mod ** 2
    lower = s * (1 - r) ** (JAC_EXP - 2) / (1 + r) ** (JAC_EXP + 2)
    upper = s * (1 + r) ** (JAC_EXP - 2) / (1 - r) ** (JAC_EXP + 2)
    return lower, upper


def area_bounds(r: float, b1_mod: float = 0.0) -> tuple[float, float]:
    """Bounds on the area of ``f(|z| < r)``; closed forms of ``2 pi int rho J drho``."""
    _check_r(r)
    _check_b1(b1_mod)
    k = math.pi * (1 - b1_mod ** 2) / 26
    lower = k * (3 - (3 * r * r + 8 * SQRT3 * r + 3)
                 * (1 - r) ** (JAC_EXP - 1) / (1 + r) ** (JAC_EXP + 1))
    upper = k * (3 - (3 * r * r - 8 * SQRT3 * r + 3)
                 * (1 + r) ** (JAC_EXP - 1) / (1 - r) ** (JAC_EXP + 1))
    return lower, upper


@dataclass(frozen=True)
class BoundsReport:
    r: float
    b1_mod: float
    growth: tuple
    jacobian: tuple
    area: tuple
    covering_radius: float

    @classmethod
    def compute(cls, r: float, b1_mod: float = 0.0) -> "BoundsReport":
        return cls(r, b1_mod, growth_bounds(r), jacobian_bounds(r, b1_mod),
                   area_bounds(r, b1_mod), covering_radius())

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}
