"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line; the lines are printed
in the pytest terminal summary (see ``conftest.py``) and when this file is
run directly with ``python3 tests/test_acceptance.py``.
"""

import math
import time

import mpmath
import numpy as np
import pytest

from harmonic_atlas import bounds, classes, families, geometry, operators, special
from harmonic_atlas.quadrature import integrate
from harmonic_atlas.series import HarmonicMap, random_points

from conftest import random_uk_map

RESULTS = {}


def record(key, ok, detail):
    RESULTS[key] = f"{'PASS' if ok else 'FAIL'}  {key}: {detail}"
    assert ok, RESULTS[key]


def test_acceptance_1_sharpness_anchor(sharp_map):
    t0 = time.perf_counter()
    margin = classes.uk_sufficient(sharp_map).margin
    scan = geometry.uniformly_convex_scan(sharp_map)
    elapsed = time.perf_counter() - t0
    ok = abs(margin) <= 1e-12 and scan.min_residual >= -1e-9 and elapsed < 1
    record("1 sharpness anchor", ok,
           f"uk margin {margin:.1e}, min Re P {scan.min_residual:.4f}, {elapsed:.2f}s")


def test_acceptance_2_printed_constants():
    mpmath.mp.dps = 50
    s3 = mpmath.sqrt(3)
    pairs = [(bounds.order_constant(), 2 / s3, "1.1547", 4),
             (classes.UK0_BOUND, 1 / s3, "0.57735", 5),
             (bounds.covering_radius(), s3 / (s3 + 4), "0.302169", 6)]
    ok = all(f"{value:.{digits}f}" == printed and abs(value - float(exact)) < 1e-15
             for value, exact, printed, digits in pairs)
    record("2 printed constants", ok, ", ".join(f"{v:.{d}f}" for v, _, _, d in pairs))


def test_acceptance_3_operator_equivalence():
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(50):
        d = int(rng.integers(1, 11))
        f = HarmonicMap(rng.normal(size=d) + 1j * rng.normal(size=d),
                        rng.normal(size=d) + 1j * rng.normal(size=d))
        a = float(-0.9 + 3.9 * (1 - rng.uniform()))       # (-0.9, 3]
        kind = (operators.FINITE, operators.INFINITY, operators.EQUAL)[i % 3]
        b = float(-0.9 + 3.9 * (1 - rng.uniform())) if kind == operators.FINITE else None
        p = operators.OperatorParams(a, kind, b)
        F = operators.apply_hab(p, f)
        for z in random_points(rng, 20, 0.95):
            worst = max(worst, abs(F(z) - operators.hab_integral_oracle(p, f, z)))
    elapsed = time.perf_counter() - t0
    record("3 operator equivalence", worst < 1e-8 and elapsed < 10,
           f"max deviation {worst:.2e} over 1000 points, {elapsed:.1f}s")


def test_acceptance_4_summation_identities():
    grid = (0.25, 0.5, 0.75, 1.0, 1.5)
    offsets = (4.0, 4.5, 5.0, 5.5, 6.0)
    n = np.arange(2000)
    worst = 0.0
    for a in grid:
        for b in grid:
            for delta in offsets:
                for k, fn in enumerate((special.gauss_value, special.lemma_sum_a, special.lemma_sum_b)):
                    p = special.HypergeometricParams(a, b, a + b + k + delta)
                    terms = np.array(special.series_terms(p, 2000)).real
                    worst = max(worst, abs(fn(p) - float(np.sum((n + 1.0) ** k * terms))))
    p = special.HypergeometricParams(1, 1, 5)
    worked = special.lemma_sum_a(p)
    t = np.array(special.series_terms(p, 2000)).real
    partial = float(np.sum((n + 1.0) * t)) + 12 / (2002 * 2003)
    ok = worst < 1e-8 and abs(worked - 2) < 1e-12 and abs(partial - 2) < 1e-12
    record("4 summation identities", ok,
           f"max deviation {worst:.2e} on 375 cases; (1,1,5) -> {worked:.15f}")


def test_acceptance_5_area_identity():
    worst = 0.0
    for b1 in (0.0, 0.5):
        for r in (0.25, 0.5, 0.9):
            q = integrate(lambda t: 2 * np.pi * t[:, None]
                          * np.stack(bounds.jacobian_bounds_array(t, b1), -1), 0.0, r, rtol=1e-12)
            lo, up = bounds.area_bounds(r, b1)
            worst = max(worst, abs(lo - q[0]), abs(up - q[1]))
    record("5 area identity", worst < 1e-8, f"max deviation {worst:.2e}")


def test_acceptance_6_floor_rule_reproduction():
    a, b = 2.0, 59 / 20
    v = operators.transfer_condition(a, b)
    n = np.arange(2, 101)
    printed = 2 * n ** 2 - 69 / 5 * n + 473 / 20
    values = operators.phi(n, a, b)
    ok = (v.rule_applied == "remark_floor" and v.admissible and np.all(values > 0)
          and np.allclose(values, printed, rtol=0, atol=1e-12))
    record("6 floor rule reproduction", ok,
           f"rule {v.rule_applied}, roots {v.roots[0]:.4f}/{v.roots[1]:.4f}, min phi {values.min():.3f}")


def test_acceptance_7_hierarchy():
    rng = np.random.default_rng(7)
    violations, worst = 0, math.inf
    for _ in range(100):
        f = random_uk_map(rng)
        assert classes.uk_sufficient(f).passed
        reps = [geometry.uniformly_convex_scan(f, tol=1e-8),
                geometry.absolutely_convex_scan(f, tol=1e-8),
                geometry.fully_convex_scan(f, tol=1e-8)]
        worst = min(worst, *(r.min_residual for r in reps))
        violations += sum(not r.passed for r in reps)
        for _ in range(10):
            centre = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            radius = rng.uniform(0.02, 1 - abs(centre) - 1e-6)
            violations += not geometry.image_circle_convexity(f, centre, radius)
    record("7 hierarchy", violations == 0,
           f"{violations} violations over 100 maps x (3 scans + 10 circles); min residual {worst:.3e}")


def test_acceptance_8_families_end_to_end():
    p = special.HypergeometricParams(1, 1, 5)
    good = families.HypergeometricSpec(p, 0.49, "f1")
    f = families.build_family(good)
    bad = families.t8_conditions(families.HypergeometricSpec(p, 0.60, "f1"))
    ok = (classes.us_sufficient(f).passed and geometry.uniformly_starlike_scan(f).passed
          and not bad.satisfied and abs(bad.lhs_value - 1.2) < 1e-12)
    ex_notes = []
    for theta in (0.0, math.pi / 3):
        alpha = np.exp(1j * theta) / 20
        rep = families.example1_check(1.0, alpha)
        scan = geometry.uniformly_starlike_scan(families.example1_map(1.0, alpha))
        ok &= rep.satisfied and abs(rep.margin) < 1e-12 and scan.passed
        ex_notes.append(f"theta={theta:.3f}: margin {rep.margin:.1e}, scan min {scan.min_residual:.3f}")
    record("8 families end-to-end", ok, f"0.60 -> lhs {bad.lhs_value:.3f}; " + "; ".join(ex_notes))


def test_acceptance_9_case_ranges():
    n = np.arange(2, 10_001)
    vals = operators.psi(n)
    target = (3 * math.sqrt(2) - math.sqrt(5)) / (math.sqrt(5) - math.sqrt(2))
    argmin = int(n[np.argmin(vals)])
    p = operators.OperatorParams.from_values(target, target)
    margins = []
    boundary_maps = [HarmonicMap.from_terms(g={3: 1 / 6}), HarmonicMap.from_terms(h={1: 1, 3: 1 / 6}),
                     HarmonicMap.from_terms(h={1: 1, 2: 0.1}, g={1: 0.1, 3: 0.2 / 3})]
    rng = np.random.default_rng(9)
    from conftest import random_us_map
    boundary_maps += [random_us_map(rng, fill=1.0) for _ in range(20)]
    for f in boundary_maps:
        assert abs(classes.us_sufficient(f).margin) < 1e-14
        F, verdict = operators.transfer_us_to_uk(f, p)
        margins.append(classes.uk_sufficient(F).margin)
        assert verdict.admissible
    ok = argmin == 3 and abs(vals.min() - target) < 1e-14 and min(margins) >= -1e-10
    record("9 case ranges", ok, f"argmin psi at n={argmin}, psi(3)={vals.min():.10f}, "
           f"min uk margin {min(margins):.2e}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
