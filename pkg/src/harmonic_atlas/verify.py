"""Cross-validation battery behind ``harmonic-atlas verify``.

Checks call library functions through their modules (``special.lemma_sum_a``
rather than a bound name) so that a patched implementation is what gets
tested.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import bounds, classes, geometry, operators, special
from .quadrature import integrate
from .series import HarmonicMap

PARTIAL_TERMS = 2000
SUM_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def _partial(p, weight_power: int) -> float:
    t = np.array(special.series_terms(p, PARTIAL_TERMS)).real
    n = np.arange(PARTIAL_TERMS)
    return float(np.sum((n + 1.0) ** weight_power * t))


# parameters with enough excess that 2000 terms leave tails far below 1e-8
_SUM_GRID = [(0.25, 0.5, 6.0), (1.0, 1.0, 8.0), (0.5, 1.5, 8.5), (0.75, 0.75, 7.0)]


def check_gauss() -> tuple[bool, str]:
    worst = 0.0
    for a, b, c in _SUM_GRID:
        p = special.HypergeometricParams(a, b, c)
        worst = max(worst, abs(special.gauss_value(p) - _partial(p, 0)))
    return worst < SUM_TOL, f"max deviation {worst:.2e}"


def check_weighted_first() -> tuple[bool, str]:
    worst = abs(special.lemma_sum_a(special.HypergeometricParams(1, 1, 5)) - 2.0)
    for a, b, c in _SUM_GRID:
        p = special.HypergeometricParams(a, b, c + 1)
        worst = max(worst, abs(special.lemma_sum_a(p) - _partial(p, 1)))
    return worst < SUM_TOL, f"max deviation {worst:.2e} (includes (1,1,5) -> 2)"


def check_weighted_second() -> tuple[bool, str]:
    worst = abs(special.lemma_sum_b(special.HypergeometricParams(1, 1, 5)) - 6.0)
    for a, b, c in _SUM_GRID:
        p = special.HypergeometricParams(a, b, c + 2)
        worst = max(worst, abs(special.lemma_sum_b(p) - _partial(p, 2)))
    return worst < SUM_TOL, f"max deviation {worst:.2e} (includes (1,1,5) -> 6)"


def check_operators() -> tuple[bool, str]:
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for i in range(6):
        d = int(rng.integers(1, 11))
        f = HarmonicMap(rng.normal(size=d) + 1j * rng.normal(size=d),
                        rng.normal(size=d) + 1j * rng.normal(size=d))
        a = float(rng.uniform(-0.9, 3))
        b = [float(rng.uniform(-0.9, 3)), None, a][i % 3]
        p = operators.OperatorParams.from_values(a, b)
        F = operators.apply_hab(p, f)
        for z in 0.9 * np.exp(2j * np.pi * rng.uniform(size=4)) * np.sqrt(rng.uniform(size=4)):
            worst = max(worst, abs(F(z) - operators.hab_integral_oracle(p, f, z)))
    return worst < 1e-8, f"max deviation {worst:.2e}"


def check_area() -> tuple[bool, str]:
    e = bounds.JAC_EXP
    worst = 0.0
    for b1 in (0.0, 0.5):
        def integrand(t):
            lo = (1 - b1 ** 2) * (1 - t) ** (e - 2) / (1 + t) ** (e + 2)
            up = (1 - b1 ** 2) * (1 + t) ** (e - 2) / (1 - t) ** (e + 2)
            return 2 * np.pi * t[:, None] * np.stack([lo, up], axis=-1)
        for r in (0.25, 0.5, 0.9):
            q = integrate(integrand, 0.0, r)
            worst = max(worst, *(abs(x - y) for x, y in zip(bounds.area_bounds(r, b1), q)))
    return worst < 1e-8, f"max deviation {worst:.2e}"


def check_constants() -> tuple[bool, str]:
    ok = (abs(bounds.order_constant() - 1.1547) < 5e-5
          and abs(classes.UK0_BOUND - 0.57735) < 5e-6
          and abs(bounds.covering_radius() - 0.302169) < 5e-7)
    return ok, "2/sqrt3, 1/sqrt3, sqrt3/(sqrt3+4)"


def check_sharp_map() -> tuple[bool, str]:
    f = HarmonicMap.from_terms(g={2: -1 / 6})
    uk = classes.uk_sufficient(f)
    reports = [geometry.uniformly_convex_scan(f), geometry.absolutely_convex_scan(f),
               geometry.fully_convex_scan(f)]
    ok = abs(uk.margin) < 1e-12 and all(r.min_residual >= -1e-8 for r in reports)
    mins = ", ".join(f"{r.check} {r.min_residual:.3g}" for r in reports)
    return ok, f"uk margin {uk.margin:.1e}; {mins}"


def check_floor_rule() -> tuple[bool, str]:
    v = operators.transfer_condition(2, 59 / 20)
    n = np.arange(2, 101)
    phis = operators.phi(n, 2, 59 / 20)
    ok = v.rule_applied == "remark_floor" and v.admissible and bool(np.all(phis > 0))
    return ok, f"rule {v.rule_applied}, min phi {phis.min():.3g}"


def check_psi() -> tuple[bool, str]:
    n = np.arange(2, 10001)
    vals = operators.psi(n)
    k = int(n[np.argmin(vals)])
    target = (3 * math.sqrt(2) - math.sqrt(5)) / (math.sqrt(5) - math.sqrt(2))
    ok = k == 3 and abs(vals.min() - target) < 1e-12
    return ok, f"argmin n = {k}, psi = {vals.min():.12f}"


BATTERY = (
    ("gauss_summation", check_gauss),
    ("weighted_sum_first", check_weighted_first),
    ("weighted_sum_second", check_weighted_second),
    ("operator_vs_quadrature", check_operators),
    ("area_vs_quadrature", check_area),
    ("printed_constants", check_constants),
    ("sharp_map_hierarchy", check_sharp_map),
    ("root_floor_rule", check_floor_rule),
    ("psi_minimum", check_psi),
)


def run_battery() -> list[CheckResult]:
    results = []
    for name, fn in BATTERY:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed battery
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return results
