"""Gamma, Pochhammer, the Gauss hypergeometric series and its summation
identities at ``z = 1``."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError

# Lanczos approximation, g = 7 with 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
POLE_GUARD = 1e-9
SERIES_RTOL = 1e-16
SERIES_ATOL = 1e-300
SERIES_MAX_TERMS = 20000
SERIES_MAX_RADIUS = 0.95


def _near_nonpositive_integer(x: complex) -> bool:
    if abs(x.imag) > POLE_GUARD or x.real > POLE_GUARD:
        return False
    return abs(x.real - round(x.real)) <= POLE_GUARD


def _gamma_complex(x: complex) -> complex:
    if x.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * x) * _gamma_complex(1 - x))
    x -= 1
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * cmath.exp((x + 0.5) * cmath.log(t) - t) * acc


def _gamma_real(x: float) -> float:
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _gamma_real(1 - x))
    x -= 1
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * math.exp((x + 0.5) * math.log(t) - t) * acc


def gamma(x):
    """Gamma function for real or complex ``x``.

    Real input gives a float, complex input a complex.  Raises
    :class:`PoleError` within ``1e-9`` of a nonpositive integer.
    """
    z = complex(x)
    if _near_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {x}")
    if isinstance(x, complex):
        return _gamma_complex(z)
    return _gamma_real(float(x))


def pochhammer(x, n: int):
    """Rising factorial ``x (x+1) ... (x+n-1)``; ``(x)_0 = 1``."""
    if n < 0 or int(n) != n:
        raise DomainError("n must be a nonnegative integer")
    out = 1
    for k in range(int(n)):
        out *= x + k
    return out


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters ``(a, b; c)`` of ``2F1``; ``c`` is real and positive."""

    a: complex
    b: complex
    c: float
    conjugate_pair: bool = False

    def __post_init__(self):
        if isinstance(self.c, complex):
            if self.c.imag != 0:
                raise DomainError("c must be real")
            object.__setattr__(self, "c", self.c.real)
        if not self.c > 0:
            raise DomainError("c must be positive")
        if self.conjugate_pair and complex(self.b) != complex(self.a).conjugate():
            raise DomainError("conjugate_pair requires b == conj(a)")

    @property
    def excess(self) -> complex:
        """``c - a - b``."""
        return self.c - self.a - self.b

    def term_ratio(self, n: int):
        """Ratio of term ``n+1`` to term ``n`` of the series at ``z = 1``."""
        return (self.a + n) * (self.b + n) / ((self.c + n) * (n + 1))


def _is_nonpositive_integer(x) -> bool:
    x = complex(x)
    return x.imag == 0 and x.real <= 0 and x.real == math.floor(x.real)


def hyp2f1(p: HypergeometricParams, z):
    """Partial sums of ``sum (a)_n (b)_n / ((c)_n n!) z**n`` for ``|z| <= 0.95``.

    Stops when a term falls below ``1e-16`` of the running sum (absolute
    floor ``1e-300``) or the series terminates; raises
    :class:`ConvergenceError` after 20000 terms.
    """
    if abs(z) > SERIES_MAX_RADIUS:
        raise DomainError(f"|z| = {abs(z):.3g} is outside the series regime |z| <= 0.95")
    terminating = _is_nonpositive_integer(p.a) or _is_nonpositive_integer(p.b)
    term = 1.0 + 0j
    total = term
    for n in range(SERIES_MAX_TERMS):
        term = term * p.term_ratio(n) * z
        total += term
        if term == 0:
            break
        if not terminating and abs(term) <= max(SERIES_RTOL * abs(total), SERIES_ATOL):
            break
    else:
        raise ConvergenceError("2F1 series exceeded its term budget", tail=abs(term))
    if not any(isinstance(v, complex) and v.imag for v in (p.a, p.b, z)):
        return total.real
    return total


def _require_excess(p: HypergeometricParams, minimum: float, what: str):
    s = complex(p.excess)
    if not s.real > minimum:
        raise DomainError(f"{what} needs Re(c - a - b) > {minimum}, got {s.real:.6g}")
    return s


def _real_if_possible(value: complex, p: HypergeometricParams):
    if isinstance(p.a, complex) or isinstance(p.b, complex):
        return value
    return value.real


def gauss_value(p: HypergeometricParams):
    """``F(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b))``."""
    s = _require_excess(p, 0.0, "Gauss summation")
    if complex(p.a) == 0 or complex(p.b) == 0:
        return _real_if_possible(1 + 0j, p)
    val = (gamma(complex(p.c)) * gamma(s)
           / (gamma(complex(p.c - p.a)) * gamma(complex(p.c - p.b))))
    return _real_if_possible(val, p)


def lemma_sum_a(p: HypergeometricParams):
    """Closed form of ``sum (n+1) (a)_n (b)_n / ((c)_n n!)``."""
    s = _require_excess(p, 1.0, "the first weighted sum")
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    val = gamma(c) * gamma(s - 1) / (gamma(c - a) * gamma(c - b)) * (a * b + s - 1)
    return _real_if_possible(val, p)


def lemma_sum_b(p: HypergeometricParams):
    """Closed form of ``sum (n+1)**2 (a)_n (b)_n / ((c)_n n!)``."""
    s = _require_excess(p, 2.0, "the second weighted sum")
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    bracket = (pochhammer(a, 2) * pochhammer(b, 2) / pochhammer(s - 2, 2)
               + 3 * a * b / (s - 1) + 1)
    val = gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b)) * bracket
    return _real_if_possible(val, p)


def series_terms(p: HypergeometricParams, count: int):
    """The first ``count`` values of ``(a)_n (b)_n / ((c)_n n!)`` via the term ratio."""
    out = []
    t = 1.0 + 0j
    for n in range(count):
        out.append(t)
        t = t * p.term_ratio(n)
    return out
