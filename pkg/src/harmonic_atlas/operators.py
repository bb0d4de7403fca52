"""Bernardi-type integral operators ``H_{a,b}`` and the transfer of
uniformly starlike coefficient conditions to uniformly convex ones."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .classes import PASS_TOL, uk_sufficient, us_sufficient
from .errors import DomainError, PreconditionError
from .quadrature import integrate
from .series import HarmonicMap

FINITE, INFINITY, EQUAL = "finite", "limit_infinity", "equal_to_a"
ORACLE_MAX_DEGREE = 64
PHI_SWEEP_MAX = 100


@dataclass(frozen=True)
class OperatorParams:
    a: float
    kind: str = FINITE
    b: float | None = None

    def __post_init__(self):
        if not self.a > -1:
            raise DomainError(f"a = {self.a} must exceed -1")
        if self.kind == FINITE:
            if self.b is None or not self.b > -1 or not math.isfinite(self.b):
                raise DomainError(f"finite b must be a real number above -1, got {self.b}")
            if self.b == self.a:
                raise DomainError("b == a is the equal_to_a kind")
        elif self.kind in (INFINITY, EQUAL):
            if self.b is not None:
                raise DomainError(f"{self.kind} takes no b")
        else:
            raise DomainError(f"unknown operator kind {self.kind!r}")

    @classmethod
    def from_values(cls, a: float, b: float | None = None) -> "OperatorParams":
        """``b=None`` or ``inf`` selects the limit; ``b == a`` the confluent case."""
        if b is None or b == math.inf:
            return cls(a, INFINITY)
        if b == a:
            return cls(a, EQUAL)
        return cls(a, FINITE, b)

    def factor(self, n):
        """Coefficient multiplier for the power ``z**n``."""
        n = np.asarray(n, dtype=float)
        a = self.a
        if self.kind == FINITE:
            return (a + 1) * (self.b + 1) / ((a + n) * (self.b + n))
        if self.kind == INFINITY:
            return (a + 1) / (a + n)
        return ((a + 1) / (a + n)) ** 2

    def to_dict(self) -> dict:
        return {"a": self.a, "kind": self.kind, "b": self.b}


def apply_hab(p: OperatorParams, f: HarmonicMap) -> HarmonicMap:
    scale = p.factor(np.arange(1, f.order + 1))
    return HarmonicMap(f.h * scale, f.g * scale)


def _ray_integral(p: OperatorParams, coeffs: np.ndarray, z: complex) -> complex:
    # q(t) = h(tz)/t, a polynomial in t; substitute t = u**k so the
    # weight starts at u**2 and stays smooth at the origin
    q = coeffs * z ** np.arange(1, coeffs.size + 1)
    lowest = min(p.a, p.b) if p.kind == FINITE else p.a
    k = 3.0 / (lowest + 1)
    a = p.a

    if p.kind == FINITE:
        b = p.b
        const = (a + 1) * (b + 1) / (b - a) * k

        def weight(u):
            return const * (u ** (k * (a + 1) - 1) - u ** (k * (b + 1) - 1))
    elif p.kind == INFINITY:
        def weight(u):
            return (a + 1) * k * u ** (k * (a + 1) - 1)
    else:
        def weight(u):
            with np.errstate(divide="ignore", invalid="ignore"):
                out = -(a + 1) ** 2 * k * k * u ** (k * (a + 1) - 1) * np.log(u)
            return np.where(u > 0, out, 0.0)

    def integrand(u):
        vals = weight(u) * P.polyval(u ** k, q)
        return np.stack([vals.real, vals.imag], axis=-1)

    re, im = integrate(integrand, 0.0, 1.0, rtol=1e-12, atol=1e-15)
    return complex(re, im)


def hab_integral_oracle(p: OperatorParams, f: HarmonicMap, z: complex) -> complex:
    """``H(z) + conj(G(z))`` from the defining integrals, for polynomial ``f``."""
    nz = np.flatnonzero((f.h != 0) | (f.g != 0))
    degree = int(nz[-1]) + 1 if nz.size else 1
    if degree > ORACLE_MAX_DEGREE:
        raise DomainError(f"oracle handles degree <= {ORACLE_MAX_DEGREE}, got {degree}")
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("z must lie in the unit disk")
    return _ray_integral(p, f.h[:degree], z) + np.conj(_ray_integral(p, f.g[:degree], z))


def phi(n, a: float, b: float):
    """``2n^2 - 2(1+ab)n + 3ab + a + b + 1``; nonnegative iff ``(2n-1) * factor_n <= 2``."""
    return 2 * n * n - 2 * (1 + a * b) * n + (3 * a * b + a + b + 1)


def phi_roots(a: float, b: float) -> tuple[float, float] | None:
    """Real roots ``(r1, r2)`` of ``phi``, larger first; ``None`` if complex."""
    s = 1 + a * b
    disc = s * s - 2 * (3 * a * b + a + b + 1)
    if disc < 0:
        return None
    root = math.sqrt(disc)
    return (s + root) / 2, (s - root) / 2


def psi(n):
    """Upper limit on ``a`` for the confluent operator at index ``n``."""
    n = np.asarray(n, dtype=float)
    r2, q = math.sqrt(2), np.sqrt(2 * n - 1)
    return (r2 * n - q) / (q - r2)


PSI_MIN = (3 * math.sqrt(2) - math.sqrt(5)) / (math.sqrt(5) - math.sqrt(2))


@dataclass(frozen=True)
class TransferVerdict:
    rule_applied: str
    admissible: bool
    phi_min_over_n: float
    roots: tuple | None = None

    def to_dict(self) -> dict:
        return {"rule_applied": self.rule_applied, "admissible": self.admissible,
                "phi_min_over_n": self.phi_min_over_n,
                "roots": list(self.roots) if self.roots else None}


def transfer_condition(a: float, b: float) -> TransferVerdict:
    """Which sufficient rule (if any) makes ``H_{a,b}`` carry the starlike
    coefficient condition into the convex one."""
    if not (a > -1 and b > -1):
        raise DomainError("a and b must exceed -1")
    roots = phi_roots(a, b)
    vertex = (1 + a * b) / 2
    n = np.arange(2, max(2, math.ceil(vertex)) + 3)
    phi_min = float(np.min(phi(n, a, b)))
    ab = a * b
    if ab <= 3:
        rule = "cond_i"
    elif ab * ab - 4 * ab - 2 * (a + b) <= 1:
        rule = "cond_ii"
    elif roots is not None and math.floor(roots[0]) == math.floor(roots[1]):
        rule = "remark_floor"
    else:
        rule = "none"
    return TransferVerdict(rule, rule != "none", phi_min, roots)


def _margin(p: OperatorParams, n):
    # 2/factor - (2n - 1) up to a positive multiple; equals phi for finite b
    a = p.a
    if p.kind == FINITE:
        return phi(n, a, p.b)
    if p.kind == INFINITY:
        return 2 * (a + n) - (2 * n - 1) * (a + 1)
    return 2 * (a + n) ** 2 - (2 * n - 1) * (a + 1) ** 2


def special_case_ranges(case: str, a: float) -> bool:
    if not a > -1:
        raise DomainError("a must exceed -1")
    if case == "b_infinity":
        return a <= 0
    if case == "a_equals_b":
        return a <= PSI_MIN
    raise DomainError(f"unknown case {case!r}")


def operator_verdict(p: OperatorParams) -> TransferVerdict:
    if p.kind == FINITE:
        return transfer_condition(p.a, p.b)
    n = np.arange(2, PHI_SWEEP_MAX + 1, dtype=float)
    phi_min = float(np.min(_margin(p, n)))
    if p.kind == INFINITY:
        return TransferVerdict("case_b_infinity", special_case_ranges("b_infinity", p.a), phi_min)
    # the confluent case is exactly ψ(3)-bounded; allow rounding at the boundary
    ok = p.a <= PSI_MIN * (1 + 1e-14)
    return TransferVerdict("case_a_equals_b", ok, phi_min)


def transfer_us_to_uk(f: HarmonicMap, p: OperatorParams) -> tuple[HarmonicMap, TransferVerdict]:
    """Apply ``H`` to a map meeting the starlike coefficient condition.

    The verdict is only a sufficient gate: ``admissible=False`` still
    returns the transformed map, with no membership claim.
    """
    us = us_sufficient(f)
    if not us.passed:
        raise PreconditionError(f"input fails the starlike coefficient test (margin {us.margin:.3g})",
                                witness=us.margin)
    return apply_hab(p, f), operator_verdict(p)


def inverse_transfer(F: HarmonicMap, a: float) -> HarmonicMap:
    """``(a h + z h')/(a+1)`` on both parts: ``A_n -> A_n (a+n)/(a+1)``."""
    if not a >= 1:
        raise DomainError(f"a = {a} must be at least 1")
    if abs(F.b1) > PASS_TOL:
        raise PreconditionError("needs G'(0) = 0", witness=F.b1)
    uk = uk_sufficient(F)
    if not uk.passed:
        raise PreconditionError(f"input fails the convex coefficient test (margin {uk.margin:.3g})",
                                witness=uk.margin)
    n = np.arange(1, F.order + 1)
    scale = (a + n) / (a + 1)
    return HarmonicMap(F.h * scale, F.g * scale)
