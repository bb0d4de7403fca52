"""Pointwise convexity/starlikeness criteria sampled on grids, plus a purely
geometric convexity test for image curves.

Grid verdicts are evidence, never proofs: a pass is labelled
``"grid-pass"``; a failure carries the witness point(s).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, DomainError, PreconditionError
from .series import HarmonicMap, derivatives, evaluate, jacobian

SCAN_TOL = 1e-9
STAR_ORIGIN_TOL = 1e-12
DENOM_TOL = 1e-14
TURN_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Polar sampling grid: radii uniform in ``r**2`` up to ``max_radius``."""

    radial_count: int = 24
    angular_count: int = 48
    max_radius: float = 0.95
    include_origin: bool = False

    def __post_init__(self):
        if self.radial_count < 4 or self.angular_count < 8:
            raise DomainError("grid needs at least 4 radii and 8 angles")
        if not 0 < self.max_radius < 1:
            raise DomainError("max_radius must lie in (0, 1)")

    def points(self) -> np.ndarray:
        k = np.arange(1, self.radial_count + 1)
        r = self.max_radius * np.sqrt(k / self.radial_count)
        t = 2 * np.pi * np.arange(self.angular_count) / self.angular_count
        pts = (r[:, None] * np.exp(1j * t)[None, :]).reshape(-1)
        if self.include_origin:
            pts = np.concatenate(([0j], pts))
        return pts


DEFAULT_GRID = GridSpec()
PAIR_GRID = GridSpec(12, 24, include_origin=True)


@dataclass(frozen=True)
class OracleReport:
    check: str
    min_residual: float
    argmin: tuple
    verdict: str
    samples: int
    tolerance: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def label(self) -> str:
        return "grid-pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"check": self.check, "min_residual": self.min_residual,
                "argmin": [[p.real, p.imag] for p in self.argmin],
                "verdict": self.verdict, "label": self.label,
                "samples": self.samples, "tolerance": self.tolerance, **self.extra}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HARMONIC_ATLAS_THREADS", "1")))
    except ValueError:
        return 1


def _pair_min(rows: int, block):
    """Minimum of ``block(lo, hi)`` over row chunks.

    ``block`` returns a 2-D residual array (NaN where undefined).  Ties are
    broken by the smallest flat index, so the result does not depend on
    the number of worker threads.
    """
    workers = _threads()
    step = max(1, -(-rows // workers))
    chunks = [(lo, min(rows, lo + step)) for lo in range(0, rows, step)]

    def run(chunk):
        lo, hi = chunk
        vals = block(lo, hi)
        if np.all(np.isnan(vals)):
            return np.inf, None
        idx = int(np.nanargmin(vals))
        i, j = divmod(idx, vals.shape[1])
        return float(vals[i, j]), (lo + i, j)

    if workers == 1:
        results = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))
    return min(results, key=lambda r: (r[0], r[1] if r[1] is not None else (rows, 0)))


def require_sense_preserving(f: HarmonicMap, points) -> None:
    """Raise :class:`PreconditionError` with a witness if ``J_f <= 0`` somewhere on ``points``."""
    pts = np.asarray(points, dtype=complex).reshape(-1)
    jac = jacobian(f, pts)
    k = int(np.argmin(jac))
    if jac[k] <= 0:
        raise PreconditionError(
            f"not sense-preserving: J = {jac[k]:.6g} at z = {pts[k]:.6g}", witness=complex(pts[k]))


def p_functional(f: HarmonicMap, z, zeta):
    """Quotient whose real part is nonnegative on ``D x D`` exactly for uniformly convex maps."""
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    w = z - zeta
    if np.any(w == 0):
        raise DomainError("P(z, zeta) needs z != zeta")
    hp, hpp, gp, gpp = derivatives(f, z)
    num = w * hp + w ** 2 * hpp + np.conj(w * gp) + np.conj(w ** 2 * gpp)
    den = w * hp - np.conj(w * gp)
    if np.any(np.abs(den) <= DENOM_TOL):
        raise DegenerateError("the denominator of P(z, zeta) vanishes")
    out = num / den
    return complex(out) if out.ndim == 0 else out


def uniformly_convex_scan(f: HarmonicMap, grid: GridSpec = PAIR_GRID,
                          tol: float = SCAN_TOL) -> OracleReport:
    """Minimum of ``Re P(z, zeta)`` over grid pairs with ``z != zeta``."""
    pts = grid.points()
    require_sense_preserving(f, pts)
    hp, hpp, gp, gpp = derivatives(f, pts)

    def block(lo, hi):
        w = pts[lo:hi, None] - pts[None, :]
        num = (w * hp[lo:hi, None] + w ** 2 * hpp[lo:hi, None]
               + np.conj(w * gp[lo:hi, None]) + np.conj(w ** 2 * gpp[lo:hi, None]))
        den = w * hp[lo:hi, None] - np.conj(w * gp[lo:hi, None])
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = (num / den).real
        vals[w == 0] = np.nan
        return vals

    value, (i, j) = _pair_min(pts.size, block)
    return OracleReport("uniformly_convex", value, (complex(pts[i]), complex(pts[j])),
                        "pass" if value >= -tol else "fail", pts.size * (pts.size - 1), tol)


def uniformly_starlike_scan(f: HarmonicMap, grid: GridSpec = PAIR_GRID,
                            tol: float = SCAN_TOL) -> OracleReport:
    """Minimum over grid pairs of
    ``Re{(f(z) - f(zeta)) / ((z - zeta) h'(z) - conj((z - zeta) g'(z)))}``.

    Passing also needs the ``zeta = 0`` slice to stay strictly positive.
    """
    pts = grid.points()
    if not np.any(pts == 0):
        pts = np.concatenate(([0j], pts))
    require_sense_preserving(f, pts)
    fz = evaluate(f, pts)
    hp, _, gp, _ = derivatives(f, pts)

    def block(lo, hi):
        w = pts[lo:hi, None] - pts[None, :]
        num = fz[lo:hi, None] - fz[None, :]
        den = w * hp[lo:hi, None] - np.conj(w * gp[lo:hi, None])
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = (num / den).real
        vals[w == 0] = np.nan
        return vals

    value, (i, j) = _pair_min(pts.size, block)
    origin = int(np.flatnonzero(pts == 0)[0])
    nz = pts != 0
    slice_vals = ((fz[nz] - fz[origin]) / (pts[nz] * hp[nz] - np.conj(pts[nz] * gp[nz]))).real
    origin_min = float(slice_vals.min())
    ok = value >= -tol and origin_min > STAR_ORIGIN_TOL
    return OracleReport("uniformly_starlike", value, (complex(pts[i]), complex(pts[j])),
                        "pass" if ok else "fail", pts.size * (pts.size - 1), tol,
                        {"origin_slice_min": origin_min})


def _convexity_terms(z, hp, hpp, gp, gpp):
    zh, zg = z * hp, z * gp
    h_term = (np.conj(zh) * (zh + z ** 2 * hpp)).real
    g_term = (np.conj(zg) * (zg + z ** 2 * gpp)).real
    cross = (z ** 3 * (hpp * gp - hp * gpp)).real
    return h_term - g_term - cross


def fully_convex_residual(f: HarmonicMap, z):
    """``|zh'|^2 Re(1 + zh''/h') - |zg'|^2 Re(1 + zg''/g') - Re(z^3 (h''g' - h'g''))``.

    Both quadratic terms are expanded without dividing by ``h'`` or ``g'``.
    """
    zz = np.asarray(z, dtype=complex)
    require_sense_preserving(f, zz)
    out = _convexity_terms(zz, *derivatives(f, zz))
    return float(out) if out.ndim == 0 else out


def fully_convex_scan(f: HarmonicMap, grid: GridSpec = DEFAULT_GRID,
                      tol: float = SCAN_TOL) -> OracleReport:
    pts = grid.points()
    vals = fully_convex_residual(f, pts)
    k = int(np.argmin(vals))
    return OracleReport("fully_convex", float(vals[k]), (complex(pts[k]),),
                        "pass" if vals[k] >= -tol else "fail", pts.size, tol)


def _absolute_terms(zeta, b, hp, hpp, gp, gpp):
    mu = (zeta - b) * (1 - zeta * np.conj(b))
    lam = 1 + np.abs(b) ** 2 - 2 * (np.conj(b) * zeta).real
    h_term = np.abs(hp) ** 2 * lam + (mu * hpp * np.conj(hp)).real
    g_term = np.abs(gp) ** 2 * lam + (mu * gpp * np.conj(gp)).real
    mod2 = np.abs(mu) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        last = np.where(mod2 > 0, (mu ** 3 * (hpp * gp - hp * gpp)).real / mod2, 0.0)
    return h_term - g_term - last


def absolutely_convex_residual(f: HarmonicMap, zeta, b):
    """Residual of the two-point criterion for absolute convexity.

    For each ``(zeta, b)`` the sign matches the curvature of the image of
    the circle through ``zeta`` that is hyperbolically centred at ``b``.
    The last term is set to zero at ``zeta == b``.
    """
    zeta = np.asarray(zeta, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if np.any(np.abs(b) >= 1):
        raise DomainError("b must lie in the unit disk")
    require_sense_preserving(f, zeta)
    out = _absolute_terms(zeta, b, *derivatives(f, zeta))
    return float(out) if out.ndim == 0 else out


def absolutely_convex_scan(f: HarmonicMap, grid: GridSpec = PAIR_GRID,
                           tol: float = SCAN_TOL) -> OracleReport:
    pts = grid.points()
    require_sense_preserving(f, pts)
    hp, hpp, gp, gpp = derivatives(f, pts)

    def block(lo, hi):
        s = slice(lo, hi)
        return _absolute_terms(pts[s, None], pts[None, :], hp[s, None], hpp[s, None],
                               gp[s, None], gpp[s, None])

    value, (i, j) = _pair_min(pts.size, block)
    return OracleReport("absolutely_convex", value, (complex(pts[i]), complex(pts[j])),
                        "pass" if value >= -tol else "fail", pts.size ** 2, tol)


def circle_points(center: complex, radius: float, samples: int, phase: float = 0.0) -> np.ndarray:
    t = phase + 2 * np.pi * np.arange(samples) / samples
    return complex(center) + radius * np.exp(1j * t)


def circle_image(f: HarmonicMap, center: complex, radius: float, samples: int = 256,
                 phase: float = 0.0) -> np.ndarray:
    """Image under ``f`` of the sampled circle ``|z - center| = radius``."""
    if samples < 64:
        raise DomainError("use at least 64 samples per circle")
    if radius <= 0 or abs(center) + radius > 1 - 1e-9:
        raise DomainError("the circle must lie inside the unit disk")
    return evaluate(f, circle_points(center, radius, samples, phase))


def polyline_turning(points) -> tuple[np.ndarray, float]:
    """Normalised edge cross products (sines of the turning angles) and total turning."""
    w = np.asarray(points, dtype=complex)
    e = np.roll(w, -1) - w
    lengths = np.abs(e)
    scale = max(float(lengths.mean()), float(np.abs(w).max()), 1e-300)
    if np.any(lengths <= 1e-14 * scale):
        k = int(np.argmin(lengths))
        raise DegenerateError(f"repeated image points near vertex {k}")
    nxt = np.roll(e, -1)
    prod = np.conj(e) * nxt
    sines = prod.imag / (lengths * np.roll(lengths, -1))
    total = float(np.sum(np.arctan2(prod.imag, prod.real)))
    return sines, total


def polyline_is_convex(points) -> bool:
    sines, total = polyline_turning(points)
    orientation = 1.0 if total >= 0 else -1.0
    return bool(np.all(orientation * sines >= -TURN_TOL)
                and abs(abs(total) - 2 * np.pi) < 1e-6)


def image_circle_convexity(f: HarmonicMap, center: complex, radius: float,
                           samples: int = 256, phase: float = 0.0) -> bool:
    """Whether the sampled image of a circle is a convex closed polyline.

    All successive edge turns must share one sign (up to ``1e-10`` of the
    edge lengths) and the total turning must be one full revolution.  The
    verdict comes from the polyline alone, so folds of a map that is not
    sense-preserving on the circle simply show up as a failure.
    """
    return polyline_is_convex(circle_image(f, center, radius, samples, phase))
