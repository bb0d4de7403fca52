"""Harmonic mappings ``f = h + conj(g)`` as truncated power series.

Coefficients are stored densely from power 1 upward: ``h[0]`` is the
coefficient of ``z`` and ``g[0]`` is ``b1``.  Both parts always share the
same truncation order.  Evaluation uses Horner's scheme from the highest
power down.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DegenerateError, DomainError

DEFAULT_ORDER = 256
DEGENERATE_TOL = 1e-12
NORMALIZED_TOL = 1e-12


def _as_coeffs(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    if arr.size == 0:
        raise ValueError("a coefficient sequence needs at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite complex numbers")
    return arr


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """Truncated pair ``(h, g)``; the map is ``h(z) + conj(g(z))``."""

    h: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        h = _as_coeffs(self.h)
        g = _as_coeffs(self.g)
        n = max(h.size, g.size)
        h = np.pad(h, (0, n - h.size))
        g = np.pad(g, (0, n - g.size))
        h.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @classmethod
    def from_terms(cls, h: Mapping[int, complex] | None = None,
                   g: Mapping[int, complex] | None = None,
                   order: int | None = None) -> "HarmonicMap":
        """Build from ``{power: coefficient}`` dicts.

        ``h`` defaults to ``{1: 1}``.  ``order`` defaults to the largest
        power present.
        """
        h = {1: 1.0} if h is None else dict(h)
        g = {} if g is None else dict(g)
        powers = list(h) + list(g) + [1]
        if min(powers) < 1:
            raise ValueError("powers start at 1 (no constant term)")
        n = max(powers) if order is None else order
        if n < max(powers):
            raise ValueError(f"order {n} is below the highest power {max(powers)}")
        hc = np.zeros(n, dtype=complex)
        gc = np.zeros(n, dtype=complex)
        for k, v in h.items():
            hc[k - 1] = v
        for k, v in g.items():
            gc[k - 1] = v
        return cls(hc, gc)

    @classmethod
    def identity(cls, order: int = 1) -> "HarmonicMap":
        return cls.from_terms(order=order)

    @property
    def order(self) -> int:
        return int(self.h.size)

    @property
    def b1(self) -> complex:
        return complex(self.g[0])

    def a(self, n: int) -> complex:
        """Coefficient of ``z**n`` in ``h`` (zero beyond the truncation)."""
        return complex(self.h[n - 1]) if 1 <= n <= self.order else 0j

    def b(self, n: int) -> complex:
        """Coefficient of ``z**n`` in ``g`` (zero beyond the truncation)."""
        return complex(self.g[n - 1]) if 1 <= n <= self.order else 0j

    @property
    def normalized(self) -> bool:
        return abs(self.h[0] - 1.0) <= NORMALIZED_TOL

    def with_order(self, order: int) -> "HarmonicMap":
        """Pad with zeros or truncate to ``order``."""
        if order < 1:
            raise ValueError("order must be positive")
        if order <= self.order:
            return HarmonicMap(self.h[:order], self.g[:order])
        return HarmonicMap(np.pad(self.h, (0, order - self.order)),
                           np.pad(self.g, (0, order - self.order)))

    def __call__(self, z):
        return evaluate(self, z)

    def allclose(self, other: "HarmonicMap", atol: float = 1e-12) -> bool:
        n = max(self.order, other.order)
        a, b = self.with_order(n), other.with_order(n)
        return bool(np.allclose(a.h, b.h, rtol=0, atol=atol)
                    and np.allclose(a.g, b.g, rtol=0, atol=atol))

    # JSON: {"h": [[re, im], ...], "g": [[re, im], ...]}, index 0 <-> power 1.
    def to_dict(self) -> dict:
        return {"h": [[float(c.real), float(c.imag)] for c in self.h],
                "g": [[float(c.real), float(c.imag)] for c in self.g]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "HarmonicMap":
        try:
            h = [complex(re, im) for re, im in data["h"]]
            g = [complex(re, im) for re, im in data["g"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed harmonic map JSON: {exc}") from exc
        return cls(h, g)

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "HarmonicMap":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"HarmonicMap(order={self.order}, a2={self.a(2):.6g}, b1={self.b1:.6g})"


def _disk_points(z):
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr) >= 1.0):
        bad = arr.reshape(-1)[np.argmax(np.abs(arr.reshape(-1)))]
        raise DomainError(f"point {complex(bad)} is not inside the unit disk")
    return arr


def _out(value, z):
    return complex(value) if np.ndim(z) == 0 else value


def _with_zero(c: np.ndarray) -> np.ndarray:
    return np.concatenate(([0j], c))


def _first_derivative(c: np.ndarray) -> np.ndarray:
    return c * np.arange(1, c.size + 1)


def _second_derivative(c: np.ndarray) -> np.ndarray:
    n = np.arange(2, c.size + 1)
    out = c[1:] * n * (n - 1)
    return out if out.size else np.zeros(1, dtype=complex)


def evaluate(f: HarmonicMap, z):
    """``h(z) + conj(g(z))`` for ``|z| < 1`` (scalar or array)."""
    zz = _disk_points(z)
    val = P.polyval(zz, _with_zero(f.h)) + np.conj(P.polyval(zz, _with_zero(f.g)))
    return _out(val, z)


def analytic_parts(f: HarmonicMap, z):
    """``(h(z), g(z))`` without the conjugation."""
    zz = _disk_points(z)
    return (_out(P.polyval(zz, _with_zero(f.h)), z),
            _out(P.polyval(zz, _with_zero(f.g)), z))


def derivatives(f: HarmonicMap, z):
    """``(h', h'', g', g'')`` at ``z``."""
    zz = _disk_points(z)
    vals = (P.polyval(zz, _first_derivative(f.h)),
            P.polyval(zz, _second_derivative(f.h)),
            P.polyval(zz, _first_derivative(f.g)),
            P.polyval(zz, _second_derivative(f.g)))
    return tuple(_out(v, z) for v in vals)


def jacobian(f: HarmonicMap, z):
    """``|h'(z)|**2 - |g'(z)|**2``."""
    zz = _disk_points(z)
    hp = P.polyval(zz, _first_derivative(f.h))
    gp = P.polyval(zz, _first_derivative(f.g))
    val = np.abs(hp) ** 2 - np.abs(gp) ** 2
    return float(val) if np.ndim(z) == 0 else val


def mul_trunc(p: np.ndarray, q: np.ndarray, n: int) -> np.ndarray:
    """Product of two series (constant term first), keeping powers ``0..n``."""
    out = np.convolve(p[: n + 1], q[: n + 1])[: n + 1]
    return np.pad(out, (0, n + 1 - out.size))


def compose(coeffs: np.ndarray, inner: np.ndarray, n: int) -> np.ndarray:
    """Series of ``sum_k coeffs[k-1] * inner**k`` up to power ``n``.

    ``inner`` is a full series (constant term first) and may have a
    non-zero constant term; the outer polynomial is applied by Horner's
    scheme with hard truncation at power ``n`` after every product.
    """
    acc = np.zeros(n + 1, dtype=complex)
    inner = np.pad(np.asarray(inner, dtype=complex), (0, max(0, n + 1 - len(inner))))[: n + 1]
    for c in coeffs[::-1]:
        acc[0] += c
        acc = mul_trunc(acc, inner, n)
    return acc


def mobius_series(a: complex, theta: float, n: int) -> np.ndarray:
    """Coefficients of ``exp(i theta) (z + a) / (1 + conj(a) z)`` up to ``z**n``."""
    rot = np.exp(1j * theta)
    k = np.arange(1, n + 1)
    out = np.empty(n + 1, dtype=complex)
    out[0] = rot * a
    out[1:] = rot * (1 - abs(a) ** 2) * (-np.conj(a)) ** (k - 1)
    return out


def koebe_transform(f: HarmonicMap, a: complex, theta: float = 0.0,
                    order: int | None = None) -> HarmonicMap:
    """Renormalised composition with a disk automorphism.

    ``F(z) = [f(e^{i theta}(z+a)/(1+conj(a) z)) - f(a e^{i theta})]
    / ((1-|a|^2) h'(a e^{i theta}) e^{i theta})``.

    The composition is a truncated series; the neglected tail is of size
    roughly ``|a|**order``, so keep ``|a|`` moderate for high-degree maps.
    """
    a = complex(a)
    if abs(a) >= 1:
        raise DomainError("the automorphism parameter must lie in the unit disk")
    if not f.normalized:
        raise DomainError("koebe_transform expects a normalised map (a1 = 1)")
    n = f.order if order is None else order
    point = a * np.exp(1j * theta)
    hp = P.polyval(point, _first_derivative(f.h))
    if abs(hp) < DEGENERATE_TOL:
        raise DegenerateError(f"h' vanishes at {point}")
    scale = (1 - abs(a) ** 2) * hp * np.exp(1j * theta)
    phi = mobius_series(a, theta, n)
    hc = compose(f.h, phi, n)
    gc = compose(f.g, phi, n)
    # dropping the constant terms is the subtraction of f(a e^{i theta})
    return HarmonicMap(hc[1:] / scale, gc[1:] / np.conj(scale))


def affine_transform(f: HarmonicMap, c: complex) -> HarmonicMap:
    """``(f + c conj(f)) / (1 + c b1)`` at coefficient level."""
    c = complex(c)
    if abs(c) >= 1:
        raise DomainError("|c| must be below 1")
    denom = 1 + c * f.b1
    if abs(denom) < DEGENERATE_TOL:
        raise DegenerateError("1 + c b1 vanishes")
    return HarmonicMap((f.h + c * f.g) / denom,
                       (f.g + np.conj(c) * f.h) / np.conj(denom))


def affine_inverse_parameter(c: complex, b1: complex) -> complex:
    """The ``d`` with ``affine_transform(affine_transform(f, c), d) == f``.

    ``b1`` is the co-analytic coefficient of the original ``f``.
    """
    k = 1 + complex(c) * complex(b1)
    return -complex(c) * np.conj(k) / k


def rotate(f: HarmonicMap, theta: float) -> HarmonicMap:
    """``exp(-i theta) f(exp(i theta) z)``."""
    n = np.arange(1, f.order + 1)
    return HarmonicMap(f.h * np.exp(1j * (n - 1) * theta),
                       f.g * np.exp(1j * (n + 1) * theta))


def random_points(rng: np.random.Generator, count: int, radius: float = 0.95) -> np.ndarray:
    """Points uniformly distributed (by area) in ``|z| < radius``."""
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, count))

