"""Harmonic maps built from Gauss hypergeometric coefficients, with the
closed-form coefficient conditions for their class membership.

Every family has ``h(z) = z``; only the co-analytic part changes:

* ``f1``: ``g = (alpha/2) z F(a, b; c; z)``
* ``f2``: ``g = (alpha/2) (F(a, b; c; z) - 1)``
* ``f3``: ``g = (alpha/2) int_0^z F(a, b; c; t) dt``
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .series import DEFAULT_ORDER, HarmonicMap
from .special import HypergeometricParams, gamma, lemma_sum_a, pochhammer, series_terms

FAMILIES = ("f1", "f2", "f3")
CONDITION_TOL = 1e-12
NEAR_EQUALITY = 1e-3
HIGH_ORDER = 1024


def _negative_integer(x) -> int | None:
    x = complex(x)
    if x.imag == 0 and x.real < 0 and x.real == math.floor(x.real):
        return int(-x.real)
    return None


def check_regime(p: HypergeometricParams) -> str:
    """Name of the parameter regime, or :class:`DomainError` if none applies."""
    if p.conjugate_pair:
        return "conjugate_pair"
    a, b = complex(p.a), complex(p.b)
    if a.imag or b.imag:
        raise DomainError("complex a, b must form a conjugate pair")
    m = _negative_integer(a)
    if m is not None and a == b:
        return "polynomial"
    if a.real > -1 and b.real > -1 and a.real * b.real > 0:
        return "real"
    raise DomainError("need a, b > -1 with ab > 0, a conjugate pair, or a = b = -m")


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    satisfied: bool
    lhs_value: float
    threshold: float

    @classmethod
    def make(cls, cid: str, lhs: float, threshold: float) -> "ConditionReport":
        lhs, threshold = float(lhs), float(threshold)
        return cls(cid, lhs <= threshold + CONDITION_TOL, lhs, threshold)

    @property
    def margin(self) -> float:
        return self.threshold - self.lhs_value

    def to_dict(self) -> dict:
        return {"condition": self.condition_id, "satisfied": self.satisfied,
                "lhs": self.lhs_value, "threshold": self.threshold}


@dataclass(frozen=True)
class HypergeometricSpec:
    params: HypergeometricParams
    alpha: complex
    family: str = "f1"
    truncation_order: int | None = None

    def __post_init__(self):
        if not abs(self.alpha) < 1:
            raise DomainError("|alpha| must be below 1")
        if self.family not in FAMILIES:
            raise DomainError(f"family must be one of {FAMILIES}")
        if self.truncation_order is not None and self.truncation_order < 2:
            raise DomainError("truncation order must be at least 2")
        check_regime(self.params)

    @property
    def order(self) -> int:
        """Explicit order, else 1024 when a condition is within 0.1% of equality, else 256."""
        if self.truncation_order is not None:
            return self.truncation_order
        for fn in (t8_conditions, t9_conditions):
            try:
                rep = fn(self)
            except DomainError:
                continue
            if abs(rep.margin) <= NEAR_EQUALITY * rep.threshold:
                return HIGH_ORDER
        return DEFAULT_ORDER


def build_family(spec: HypergeometricSpec) -> HarmonicMap:
    n = spec.order
    terms = np.array(series_terms(spec.params, n + 1), dtype=complex)
    half = complex(spec.alpha) / 2
    if spec.family == "f1":
        g = half * terms[:n]
    elif spec.family == "f2":
        g = half * terms[1:n + 1]
    else:
        g = half * terms[:n] / np.arange(1, n + 1)
    h = np.zeros(n, dtype=complex)
    h[0] = 1
    return HarmonicMap(h, g)


def _pieces(p: HypergeometricParams, min_excess: float):
    s = complex(p.excess)
    if not s.real > min_excess:
        raise DomainError(f"needs c > Re(a + b) + {min_excess:g}")
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    g = gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b))
    return a, b, c, s, g


def t8_conditions(spec: HypergeometricSpec) -> ConditionReport:
    """Coefficient condition placing the family member in the uniformly
    starlike class (threshold 1)."""
    p, k = spec.params, abs(spec.alpha)
    if spec.family == "f1":
        _pieces(p, 1.0)
        return ConditionReport.make("T8a", k * lemma_sum_a(p).real, 1.0)
    if spec.family == "f2":
        a, b, _, s, g = _pieces(p, 1.0)
        return ConditionReport.make("T8b", (k * a * b * g / (s - 1)).real, 1.0)
    _, _, _, _, g = _pieces(p, 0.0)
    return ConditionReport.make("T8c", (k * g).real, 1.0)


def t9_conditions(spec: HypergeometricSpec) -> ConditionReport:
    """Coefficient condition placing the family member in the uniformly
    convex class (threshold 2)."""
    p, k = spec.params, abs(spec.alpha)
    if spec.family == "f1":
        a, b, _, s, g = _pieces(p, 2.0)
        bracket = (2 * pochhammer(a, 2) * pochhammer(b, 2) / pochhammer(s - 2, 2)
                   + 5 * a * b / (s - 1) + 1)
        return ConditionReport.make("T9a", (k * g * bracket).real, 2.0)
    if spec.family == "f2":
        a, b, c, s, g = _pieces(p, 2.0)
        lhs = a * b * k * g / (s - 1) * (a + b + c + 2 * a * b) / (s - 2)
        return ConditionReport.make("T9b", lhs.real, 2.0)
    a, b, _, s, g = _pieces(p, 1.0)
    return ConditionReport.make("T9c", (k * g * (2 * a * b + s - 1) / (s - 1)).real, 2.0)


def cor1_thresholds(b: float, alpha: complex) -> tuple[float, float, float]:
    """Lower limits on ``c`` for ``a = 1``: ``(beta_plus, gamma_plus, c_min)``.

    ``c >= beta_plus`` gives the ``f1`` starlike condition, ``c >= gamma_plus``
    the ``f2`` one and ``c >= c_min`` the ``f3`` one.
    """
    k = abs(alpha)
    if not k < 1:
        raise DomainError("|alpha| must be below 1")
    if not b > 0:
        raise DomainError("b must be positive")
    beta = (2 * b + 3 - 3 * k + math.sqrt(k * k + 2 * k * (2 * b * b - 1) + 1)) / (2 * (1 - k))
    gam = (2 * b + 3 + b * k + math.sqrt(b * b * (k * k + 4 * k) + 2 * k * b + 1)) / 2
    return beta, gam, 1 + b / (1 - k)


def cor2_conditions(m: int, c: float, alpha: complex) -> tuple[ConditionReport, ...]:
    """Starlike conditions for the polynomial members ``a = b = -m``.

    Gamma ratios are reduced to Pochhammer products, so large ``m`` or
    ``c`` do not overflow.
    """
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    if not c > 0:
        raise DomainError("c must be positive")
    k = abs(alpha)
    if not k < 1:
        raise DomainError("|alpha| must be below 1")
    base = k * pochhammer(c + m, m - 1) / pochhammer(c, m)
    return (ConditionReport.make("Cor2a", base * (m * m + 2 * m + c - 1), 1.0),
            ConditionReport.make("Cor2b", base * m * m, 1.0),
            ConditionReport.make("Cor2c", base * (c + 2 * m - 1), 1.0))


def cor2_polynomials(m: int, c: float, alpha: complex) -> tuple[HarmonicMap, HarmonicMap, HarmonicMap]:
    """The three polynomial family members, from ``binom(m, n) (m-n+1)_n / (c)_n``."""
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    t = np.array([math.comb(m, n) * pochhammer(m - n + 1, n) / pochhammer(c, n)
                  for n in range(m + 1)], dtype=complex)
    half = complex(alpha) / 2
    h = np.zeros(m + 1, dtype=complex)
    h[0] = 1
    g1 = half * t
    g2 = np.concatenate((half * t[1:], [0]))
    g3 = half * t / np.arange(1, m + 2)
    return HarmonicMap(h, g1), HarmonicMap(h, g2), HarmonicMap(h, g3)


EXAMPLE1_M = 3


def example1_check(c: float, alpha: complex) -> ConditionReport:
    """``|alpha| (60 + 47c + 12c^2 + c^3) <= 2c + 3c^2 + c^3`` (the ``m = 3``, ``f3`` case)."""
    k = abs(alpha)
    if not 0 < k < 1:
        raise DomainError("need 0 < |alpha| < 1")
    if not c > 0:
        raise DomainError("c must be positive")
    return ConditionReport.make("Ex1", k * (60 + 47 * c + 12 * c * c + c ** 3),
                                2 * c + 3 * c * c + c ** 3)


def example1_map(c: float, alpha: complex) -> HarmonicMap:
    return cor2_polynomials(EXAMPLE1_M, c, alpha)[2]


def tail_estimate(weights) -> float:
    """Rough size of the neglected tail of a positive series ``sum w_n``.

    Treats the summands as decaying like ``n**-p`` with ``p`` read off the
    last ratio, giving ``w_N N / (p - 1)``; geometric decay gives a
    negligible value.  Returns ``inf`` when the series looks divergent.
    """
    w = np.abs(np.asarray(weights, dtype=float))
    if w.size < 2 or w[-1] == 0:
        return 0.0
    n = w.size
    ratio = w[-1] / w[-2]
    p = n * (1 - ratio)
    if p <= 1:
        return math.inf
    return float(w[-1] * n / (p - 1))


def family_tails(f: HarmonicMap) -> dict:
    """Tail estimates for the starlike and convex coefficient sums of ``f``."""
    n = np.arange(1, f.order + 1)
    mods = np.abs(f.h) + np.abs(f.g)
    return {"us_tail": tail_estimate(n * mods), "uk_tail": tail_estimate(n * (2 * n - 1) * mods)}
