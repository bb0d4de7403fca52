"""Coefficient tests for class membership.

Sufficient tests (``uk_sufficient``, ``us_sufficient``) prove membership
when they pass.  Necessary bounds on the second coefficient disprove it
when they fail.  Sums run over the retained coefficients only; the
verdict records the truncation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .series import HarmonicMap

PASS_TOL = 1e-12

AK0_BOUND = 2 / math.sqrt(3)
UK0_BOUND = 1 / math.sqrt(3)
AK_GENERAL_BOUND = (math.sqrt(3) + 4) / (2 * math.sqrt(3))

_A2_BOUNDS = {
    "AK0": ("AK0_necessary", AK0_BOUND),
    "UK0": ("UK0_necessary", UK0_BOUND),
    "AK_general": ("AK_general_necessary", AK_GENERAL_BOUND),
}


@dataclass(frozen=True)
class ClassVerdict:
    class_label: str
    passed: bool
    margin: float
    detail: str = ""
    truncation_order: int | None = None

    @classmethod
    def from_margin(cls, label: str, margin: float, detail: str = "",
                    order: int | None = None) -> "ClassVerdict":
        margin = float(margin)
        return cls(label, margin >= -PASS_TOL, margin, detail, order)

    def to_dict(self) -> dict:
        return {"class": self.class_label, "passed": self.passed,
                "margin": self.margin, "detail": self.detail,
                "truncation_order": self.truncation_order}


def _require_normalized(f: HarmonicMap):
    if not f.normalized:
        raise DomainError("expected a normalised map (a1 = 1)")


def uk_coefficient_sum(f: HarmonicMap) -> float:
    """``sum_{n>=2} n(2n-1)(|a_n| + |b_n|)``."""
    n = np.arange(2, f.order + 1)
    return float(np.sum(n * (2 * n - 1) * (np.abs(f.h[1:]) + np.abs(f.g[1:]))))


def us_coefficient_sum(f: HarmonicMap) -> float:
    """``sum_{n>=2} n|a_n| + sum_{n>=1} n|b_n|``."""
    n = np.arange(1, f.order + 1)
    return float(np.sum(n[1:] * np.abs(f.h[1:])) + np.sum(n * np.abs(f.g)))


def uk_sufficient(f: HarmonicMap) -> ClassVerdict:
    """Margin ``(1 - |b1|) - sum n(2n-1)(|a_n|+|b_n|)``; passing implies uniform convexity."""
    _require_normalized(f)
    b1 = abs(f.b1)
    if b1 >= 1:
        raise DomainError(f"|b1| = {b1:.6g} must be below 1")
    total = uk_coefficient_sum(f)
    return ClassVerdict.from_margin(
        "UK", (1 - b1) - total, f"sum n(2n-1)(|a_n|+|b_n|) = {total:.17g}", f.order)


def us_sufficient(f: HarmonicMap) -> ClassVerdict:
    """Margin ``1/2 - sum n|a_n| - sum n|b_n|``; passing implies uniform starlikeness."""
    _require_normalized(f)
    total = us_coefficient_sum(f)
    return ClassVerdict.from_margin(
        "US_star", 0.5 - total, f"sum n|a_n| + sum n|b_n| = {total:.17g}", f.order)


def a2_necessary(f: HarmonicMap, which: str = "AK0") -> ClassVerdict:
    """Compare ``|a2|`` with the class bound; a failure excludes ``f`` from the class.

    ``which`` is ``"AK0"`` (bound 2/sqrt 3), ``"UK0"`` (1/sqrt 3) or
    ``"AK_general"`` ((sqrt 3 + 4)/(2 sqrt 3)).  The first two require
    ``b1 = 0``.
    """
    _require_normalized(f)
    try:
        label, bound = _A2_BOUNDS[which]
    except KeyError:
        raise DomainError(f"unknown class {which!r}") from None
    if which in ("AK0", "UK0") and abs(f.b1) > PASS_TOL:
        raise DomainError(f"the {which} bound needs b1 = 0 (got {f.b1})")
    a2 = abs(f.a(2))
    return ClassVerdict.from_margin(label, bound - a2, f"|a2| = {a2:.17g}, bound = {bound:.17g}",
                                    f.order)


def a2_b2_remark(f: HarmonicMap) -> ClassVerdict:
    """Margin ``1 - (a2 + Re b2)`` for ``b1 = 0`` and real ``a2 >= 0``.

    Rotate ``f`` beforehand if ``a2`` is not already real and nonnegative.
    """
    _require_normalized(f)
    if abs(f.b1) > PASS_TOL:
        raise DomainError("needs b1 = 0")
    a2 = f.a(2)
    if abs(a2.imag) > PASS_TOL or a2.real < -PASS_TOL:
        raise DomainError(f"a2 = {a2} must be real and nonnegative")
    value = a2.real + f.b(2).real
    return ClassVerdict.from_margin("AK0_necessary", 1 - value, f"a2 + Re b2 = {value:.17g}",
                                    f.order)
