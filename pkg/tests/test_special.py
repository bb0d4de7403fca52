import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from harmonic_atlas.errors import DomainError, PoleError
from harmonic_atlas.special import (HypergeometricParams, gamma, gauss_value, hyp2f1,
                                    lemma_sum_a, lemma_sum_b, pochhammer, series_terms)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 7.3, 17.0, 29.9, -0.5, -2.7])
def test_gamma_real_vs_scipy(x):
    assert gamma(x) == pytest.approx(sp.gamma(x), rel=1e-13)


@pytest.mark.parametrize("z", [0.3 + 1j, 2 - 3j, -1.5 + 0.5j, 5 + 0.1j])
def test_gamma_complex_vs_mpmath(z):
    assert gamma(z) == pytest.approx(complex(mpmath.gamma(z)), rel=1e-12)


def test_gamma_output_types():
    assert isinstance(gamma(3.0), float)
    assert isinstance(gamma(3 + 0j), complex)
    assert gamma(5) == pytest.approx(24)


@pytest.mark.parametrize("x", [0, -1, -3, -2 + 1e-12])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 25))
def test_gamma_recurrence(x):
    assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 10), st.integers(0, 12))
def test_pochhammer_is_gamma_ratio(x, n):
    assert pochhammer(x, n) == pytest.approx(gamma(x + n) / gamma(x), rel=1e-11)


def test_pochhammer_negative_integer_identity():
    m = 5
    for n in range(m + 1):
        assert pochhammer(-m, n) == (-1) ** n * math.factorial(m) // math.factorial(m - n)
    assert pochhammer(-m, m + 1) == 0
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_hyp2f1_known_values():
    assert hyp2f1(HypergeometricParams(1, 1, 2), 0.5) == pytest.approx(2 * math.log(2), rel=1e-14)
    p = HypergeometricParams(0.3, 0.7, 1.9)
    for z in (0.5, -0.9, 0.3 + 0.6j):
        assert hyp2f1(p, z) == pytest.approx(complex(mpmath.hyp2f1(0.3, 0.7, 1.9, z)), rel=1e-13)


def test_hyp2f1_terminating_and_domain():
    # (1 - z)^3 = F(-3, b; b; z)
    p = HypergeometricParams(-3, 2.5, 2.5)
    assert hyp2f1(p, 0.4) == pytest.approx(0.6 ** 3, rel=1e-14)
    with pytest.raises(DomainError):
        hyp2f1(p, 0.96)


def test_params_validation():
    with pytest.raises(DomainError):
        HypergeometricParams(1, 1, -2)
    with pytest.raises(DomainError):
        HypergeometricParams(1 + 1j, 1 + 1j, 4, conjugate_pair=True)
    p = HypergeometricParams(1 + 1j, 1 - 1j, 5, conjugate_pair=True)
    assert p.excess == 3


def test_gauss_value_examples():
    assert gauss_value(HypergeometricParams(0.5, 0.5, 2)) == pytest.approx(4 / math.pi, rel=1e-13)
    assert gauss_value(HypergeometricParams(1, 1, 5)) == pytest.approx(4 / 3, rel=1e-13)
    with pytest.raises(DomainError):
        gauss_value(HypergeometricParams(1, 1, 2))


def test_weighted_sum_worked_values():
    p = HypergeometricParams(1, 1, 5)
    assert lemma_sum_a(p) == pytest.approx(2.0, abs=1e-12)
    # partial fractions: sum (n+1)^2 * 24/((n+1)(n+2)(n+3)(n+4)) = 6
    assert lemma_sum_b(p) == pytest.approx(6.0, abs=1e-12)


def test_weighted_sum_domains():
    with pytest.raises(DomainError):
        lemma_sum_a(HypergeometricParams(1, 1, 3))
    with pytest.raises(DomainError):
        lemma_sum_b(HypergeometricParams(1, 1, 4))


def _decomposed(a, b, c):
    # (n+1)^2 = n(n-1) + 3n + 1 and (n+1) = n + 1 shift the parameters of 2F1(..; 1)
    mpmath.mp.dps = 30
    F = lambda a, b, c: mpmath.hyp2f1(a, b, c, 1)
    first = a * b / c * F(a + 1, b + 1, c + 1)
    second = mpmath.rf(a, 2) * mpmath.rf(b, 2) / mpmath.rf(c, 2) * F(a + 2, b + 2, c + 2)
    zero = F(a, b, c)
    return float(zero), float(first + zero), float(second + 3 * first + zero)


@pytest.mark.parametrize("a,b,c", [(0.5, 0.5, 4.0), (1, 1, 5), (0.3, 1.2, 5.5), (2, 0.5, 7)])
def test_closed_forms_vs_shifted_parameter_oracle(a, b, c):
    p = HypergeometricParams(a, b, c)
    g, la, lb = _decomposed(a, b, c)
    assert gauss_value(p) == pytest.approx(g, rel=1e-12)
    assert lemma_sum_a(p) == pytest.approx(la, rel=1e-12)
    assert lemma_sum_b(p) == pytest.approx(lb, rel=1e-12)


def test_first_weighted_partial_sum_with_exact_tail():
    # for (1,1,5) the summand is 24/((n+2)(n+3)(n+4)); its tail past N terms is 12/((N+2)(N+3))
    t = np.array(series_terms(HypergeometricParams(1, 1, 5), 2000)).real
    partial = float(np.sum((np.arange(2000) + 1) * t))
    assert partial + 12 / (2002 * 2003) == pytest.approx(2.0, abs=1e-12)


def test_conjugate_pair_values_are_real_in_substance():
    p = HypergeometricParams(0.5 + 0.8j, 0.5 - 0.8j, 6, conjugate_pair=True)
    for fn in (gauss_value, lemma_sum_a, lemma_sum_b):
        v = fn(p)
        assert abs(v.imag) < 1e-12 * abs(v)
    assert gauss_value(p) == pytest.approx(complex(mpmath.hyp2f1(p.a, p.b, 6, 1)), rel=1e-12)


def test_series_terms_ratio():
    p = HypergeometricParams(0.3, 0.9, 2.2)
    t = series_terms(p, 6)
    assert t[0] == 1
    for n in range(5):
        assert t[n + 1] == pytest.approx(t[n] * p.term_ratio(n))
    assert np.isclose(t[3], pochhammer(0.3, 3) * pochhammer(0.9, 3) / (pochhammer(2.2, 3) * 6))
