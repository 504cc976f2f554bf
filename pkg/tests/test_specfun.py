"""Hypergeometric layer: closed-form spot values, randomized identity
suites, error-estimate conservativeness, and failure modes."""

import math

import numpy as np
import pytest
from scipy import integrate

from expwell import (
    DomainError,
    NoConvergence,
    PoleInParameter,
    clausen_3f2,
    gauss_2f1,
    hermite_fn,
    kummer_1f1,
)

SEED = 20260810


# ------------------------------------------------------------- gauss_2f1 ---

def test_2f1_binomial_reduction_spot():
    assert gauss_2f1(3.0, 5.0, 5.0, 0.5).value == pytest.approx(8.0, abs=1e-12)


def test_2f1_log_closed_form():
    assert gauss_2f1(1.0, 1.0, 2.0, 0.5).value == pytest.approx(2.0 * math.log(2.0), abs=1e-12)


def test_2f1_second_summation_theorem_point():
    # c = (a+b+1)/2 at w = 1/2 reduces to a gamma ratio; for (1, 2; 2; 1/2)
    # both the theorem and the binomial reduction give 2
    assert gauss_2f1(1.0, 2.0, 2.0, 0.5).value == pytest.approx(2.0, abs=1e-12)


def test_2f1_binomial_reduction_randomized():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        a = rng.uniform(-5.0, 5.0)
        b = rng.uniform(0.5, 6.0)
        w = rng.uniform(-0.5, 0.5)
        got = gauss_2f1(a, b, b, w).value
        worst = max(worst, abs(got - (1.0 - w) ** (-a)))
    assert worst < 1e-10


def test_2f1_contiguous_relation_randomized():
    # c F(a,b;c;w) - c F(a+1,b;c;w) + b w F(a+1,b+1;c+1;w) = 0
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(1000):
        a = rng.uniform(-3.0, 3.0)
        b = rng.uniform(-3.0, 3.0)
        c = rng.uniform(0.5, 8.0)
        w = rng.uniform(-0.6, 0.6)
        lhs = (
            c * gauss_2f1(a, b, c, w).value
            - c * gauss_2f1(a + 1.0, b, c, w).value
            + b * w * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, w).value
        )
        scale = max(1.0, abs(c * gauss_2f1(a, b, c, w).value))
        worst = max(worst, abs(lhs) / scale)
    assert worst < 1e-9


def test_2f1_pole_and_domain_errors():
    with pytest.raises(PoleInParameter):
        gauss_2f1(1.0, 1.0, 0.0, 0.3)
    with pytest.raises(PoleInParameter):
        gauss_2f1(1.0, 1.0, -2.0 + 1e-9, 0.3)
    with pytest.raises(DomainError):
        gauss_2f1(1.0, 1.0, 2.0, 0.8)


def test_2f1_no_convergence_budget():
    with pytest.raises(NoConvergence):
        gauss_2f1(8.0, 7.0, 1.5, 0.74, max_terms=12)


# ----------------------------------------------------------- clausen_3f2 ---

def test_3f2_empty_series_at_zero():
    res = clausen_3f2(1.3, 2.2, 0.7, 1.1, 3.0, 0.0)
    assert res.value == 1.0


def test_3f2_cancellation_matches_2f1_randomized():
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(1000):
        a1 = rng.uniform(-3.0, 3.0)
        a2 = rng.uniform(-3.0, 3.0)
        a3 = rng.uniform(0.5, 5.0)  # shared upper/lower parameter
        b1 = rng.uniform(0.5, 8.0)
        w = rng.uniform(0.0, 0.6)
        got = clausen_3f2(a1, a2, a3, b1, a3, w).value
        ref = gauss_2f1(a1, a2, b1, w).value
        worst = max(worst, abs(got - ref))
    assert worst < 1e-10


def test_3f2_pole_and_domain():
    with pytest.raises(PoleInParameter):
        clausen_3f2(1.0, 1.0, 1.0, -3.0, 2.0, 0.5)
    with pytest.raises(DomainError):
        clausen_3f2(1.0, 1.0, 1.0, 2.0, 2.0, -0.1)


# ------------------------------------------------------------ kummer_1f1 ---

def test_1f1_exponential_reduction():
    assert kummer_1f1(2.0, 2.0, 1.0).value == pytest.approx(math.e, abs=1e-12)


def test_1f1_at_zero():
    assert kummer_1f1(1.7, 0.4, 0.0).value == 1.0


def test_1f1_terminating_polynomial():
    # 1F1(-1; 1/2; w) = 1 - 2w
    res = kummer_1f1(-1.0, 0.5, 0.25)
    assert res.value == pytest.approx(0.5, abs=1e-14)
    assert res.error_estimate < 1e-14


def test_1f1_argument_cap():
    with pytest.raises(DomainError):
        kummer_1f1(1.0, 2.0, 51.0)
    kummer_1f1(1.0, 2.0, 80.0, max_abs_arg=100.0)  # configurable


# ------------------------------------------------------------ hermite_fn ---

def test_hermite_polynomial_cases():
    assert hermite_fn(2.0, 1.0).value == pytest.approx(2.0, abs=1e-12)
    assert hermite_fn(0.0, 2.7).value == pytest.approx(1.0, abs=1e-13)
    assert hermite_fn(3.0, 0.5).value == pytest.approx(-5.0, abs=1e-12)
    assert hermite_fn(1.0, -1.3).value == pytest.approx(-2.6, abs=1e-12)


def _hermite_quadrature_oracle(nu: float, z: float) -> float:
    """Independent integral representation, valid for nu > -1:
    H_nu(z) = 2^(nu+1)/sqrt(pi) e^(z^2) int_0^inf e^(-t^2) t^nu
              cos(2 z t - pi nu / 2) dt."""
    val, _ = integrate.quad(
        lambda t: math.exp(-t * t) * t**nu * math.cos(2.0 * z * t - math.pi * nu / 2.0),
        0.0,
        30.0,
        epsabs=1e-14,
        epsrel=1e-14,
        limit=300,
    )
    return 2.0 ** (nu + 1.0) / math.sqrt(math.pi) * math.exp(z * z) * val


def test_hermite_noninteger_order_vs_quadrature():
    got = hermite_fn(1.5, 0.7).value
    ref = _hermite_quadrature_oracle(1.5, 0.7)
    assert got == pytest.approx(ref, abs=1e-11)
    # frozen regression value from the quadrature oracle
    assert got == pytest.approx(1.0862002679316, abs=1e-10)


@pytest.mark.parametrize("nu,z", [(0.5, -1.2), (2.3, 0.4), (4.1, 1.8), (0.25, 2.1)])
def test_hermite_vs_quadrature_grid(nu, z):
    assert hermite_fn(nu, z).value == pytest.approx(
        _hermite_quadrature_oracle(nu, z), rel=1e-10, abs=1e-11
    )


def test_hermite_recurrence_randomized():
    # H_{nu+1}(z) = 2 z H_nu(z) - 2 nu H_{nu-1}(z)
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(1000):
        nu = rng.uniform(0.5, 5.0)
        z = rng.uniform(-2.0, 2.0)
        lhs = hermite_fn(nu + 1.0, z).value
        rhs = 2.0 * z * hermite_fn(nu, z).value - 2.0 * nu * hermite_fn(nu - 1.0, z).value
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    assert worst < 1e-8


# -------------------------------------------------- error-estimate audit ---

def test_error_estimate_bounds_refined_reevaluation():
    """The reported error_estimate must bound the difference against a
    re-evaluation with a tighter tolerance and larger budget."""
    rng = np.random.default_rng(SEED + 4)
    for _ in range(300):
        a = rng.uniform(-4.0, 6.0)
        b = rng.uniform(-4.0, 6.0)
        c = rng.uniform(0.3, 9.0)
        w = rng.uniform(-0.7, 0.7)
        loose = gauss_2f1(a, b, c, w, tol=1e-9)
        tight = gauss_2f1(a, b, c, w, tol=1e-15, max_terms=40_000)
        assert abs(loose.value - tight.value) <= loose.error_estimate + 1e-16


def test_series_result_bookkeeping():
    res = gauss_2f1(1.0, 1.0, 2.0, 0.5)
    assert res.error_estimate >= 0.0
    assert math.isfinite(res.error_estimate)
    assert res.terms_used <= 10_000
    assert float(res) == res.value
