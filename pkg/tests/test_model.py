"""Physics layer: potential values and shape, coordinate map, transformed
equation parameters, residual operator, count diagnostics."""

import math

import numpy as np
import pytest

import expwell as ew
from expwell import DomainError
from expwell.model import frobenius_exponents, upper_params

SEED = 20260810


# -------------------------------------------------------------- potential ---

def test_potential_exact_rational_point(p_ref):
    # at y = 2 ln(4/3): exp(-y/delta) = 3/4, so V = 2 V0 - V0 = V0
    y = 2.0 * math.log(4.0 / 3.0)
    assert ew.potential(p_ref, y) == pytest.approx(-4.0, abs=1e-12)


def test_potential_vanishes_at_infinity(p_ref):
    assert abs(ew.potential(p_ref, 200.0)) < 1e-10


def test_potential_small_y_expansion(p_ref):
    # near the origin 1 - exp(-y/d) = (y/d)(1 - y/2d + y^2/6d^2 - ...), so
    # V = V0 sqrt(d/y) (1 - y/2d + y^2/6d^2)^(-1/2) - V0 + O(y^(3/2));
    # the divergent part is V0 sqrt(d/y), offset by the O(1) constant -V0
    y = 0.01
    u = y / p_ref.delta
    expansion = (
        p_ref.v0 / math.sqrt(u * (1.0 - u / 2.0 + u * u / 6.0)) - p_ref.v0
    )
    got = ew.potential(p_ref, y)
    assert got == pytest.approx(expansion, abs=0.05)
    lead = p_ref.v0 * math.sqrt(p_ref.delta / y)
    assert abs(got - lead) < 4.5  # the O(1) remainder, about |V0|


def test_potential_monotone_negative_and_tail_bound(p_ref):
    ys = np.geomspace(1e-4, 60.0, 400)
    vals = ew.potential(p_ref, ys)
    assert np.all(vals < 0.0)
    assert np.all(np.diff(vals) > 0.0)  # strictly increasing toward 0
    tail = ys >= 2.0 * p_ref.delta
    assert np.all(np.abs(vals[tail]) <= abs(p_ref.v0) * np.exp(-ys[tail] / p_ref.delta))


def test_potential_domain_error(p_ref):
    with pytest.raises(DomainError):
        ew.potential(p_ref, 0.0)
    with pytest.raises(DomainError):
        ew.potential(p_ref, -1.0)


# ------------------------------------------------------------- coordinate ---

def test_map_x_endpoints_and_known_point(p_ref):
    assert ew.map_x(p_ref, 0.0) == 0.0
    assert ew.map_x(p_ref, p_ref.delta * math.log(2.0)) == pytest.approx(
        math.sqrt(0.5), abs=1e-14
    )
    # strictly below 1 wherever 1-x is representable in doubles
    assert 0.0 <= ew.map_x(p_ref, 60.0) < 1.0
    assert ew.map_x(p_ref, 1e4) == pytest.approx(1.0, abs=1e-15)


def test_map_roundtrip(p_ref):
    ys = np.geomspace(1e-6, 50.0, 200)
    back = ew.inverse_map_y(p_ref, ew.map_x(p_ref, ys))
    assert np.max(np.abs(back - ys) / np.maximum(1.0, ys)) < 1e-12


def test_map_monotone_bijection(p_ref):
    rng = np.random.default_rng(SEED)
    ys = np.sort(rng.uniform(0.0, 80.0, 500))
    xs = ew.map_x(p_ref, ys)
    assert np.all(np.diff(xs) > 0.0)


# ---------------------------------------------------- transformed equation ---

def test_heun_params_reference_point(p_ref):
    hp = ew.heun_params(p_ref, -0.4166327)
    assert hp.b == -1.0
    assert hp.c == pytest.approx(1.0 + 2.0 * math.sqrt(8.0 * 0.4166327), abs=1e-10)
    assert hp.c == pytest.approx(4.6513, abs=1e-3)


@pytest.mark.parametrize("E", [-0.03, -0.5, -2.0, -7.3])
def test_heun_params_invariants(p_ref, E):
    hp = ew.heun_params(p_ref, E)
    fuchs = 1.0 + hp.beta_h + hp.gamma_h - hp.a - hp.b
    assert hp.c == pytest.approx(fuchs, abs=1e-10)
    acc = hp.k**2 + hp.k * (hp.a - hp.c) - hp.beta_h * hp.gamma_h
    assert abs(acc) < 1e-12 * max(1.0, hp.beta_h * abs(hp.gamma_h))


def test_exponent_identities(p_ref):
    rng = np.random.default_rng(SEED + 1)
    for _ in range(200):
        E = -rng.uniform(1e-4, 12.0)
        a1, a2 = frobenius_exponents(p_ref, E)
        al, be = upper_params(p_ref, E)
        assert al + be == pytest.approx(2.0 * (a1 + a2), rel=1e-12)
        assert al * be == pytest.approx(-((a1 - a2) ** 2), rel=1e-10, abs=1e-10)


# ------------------------------------------------------- residual operator ---

def test_residual_free_equation_sine(p_ref):
    # psi = sin(k y) solves the free equation at E = hbar^2 k^2 / 2m
    k = 1.7
    E = (p_ref.hbar * k) ** 2 / (2.0 * p_ref.m)
    rep = ew.schrodinger_residual(
        p_ref, E, lambda y: math.sin(k * y), domain=(0.1, 15.0),
        potential_fn=lambda y: 0.0,
    )
    assert rep.max_norm < 1e-6


def test_residual_flags_non_solution(p_ref):
    rep = ew.schrodinger_residual(p_ref, -1.0, lambda y: y * math.exp(-y))
    assert rep.max_norm > 0.3  # O(1) defect for a deliberate mismatch


def test_residual_breakdown_on_zero_function(p_ref):
    with pytest.raises(ew.NumericalBreakdown):
        ew.schrodinger_residual(p_ref, -1.0, lambda y: 0.0)


def test_residual_report_structure(p_ref):
    rep = ew.schrodinger_residual(p_ref, -1.0, lambda y: y * math.exp(-y), n_points=50)
    assert rep.grid.shape == (50,)
    assert np.all(np.diff(rep.grid) > 0.0)
    assert rep.max_norm == pytest.approx(np.max(rep.rel_defects))
    assert rep.l2_norm >= 0.0


# ------------------------------------------------------ count diagnostics ---

def test_bargmann_finite_and_dual_scheme(p_ref):
    val = ew.bargmann_integral(p_ref)
    assert math.isfinite(val) and val > 0.0
    assert val == pytest.approx(ew.bargmann_integral(p_ref, scheme="gauss"), abs=1e-8)
    # frozen dual-quadrature regression value
    assert val == pytest.approx(21.888897248378, abs=1e-9)


def test_bargmann_linear_in_v0(p_ref):
    doubled = ew.PhysParams(p_ref.m, p_ref.hbar, 2.0 * p_ref.v0, p_ref.delta)
    assert ew.bargmann_integral(doubled) == pytest.approx(
        2.0 * ew.bargmann_integral(p_ref), rel=1e-9
    )


def test_calogero_constant_closed_form():
    assert ew.calogero_constant() == pytest.approx(
        math.pi * (2.0 - math.sqrt(2.0)), abs=1e-6
    )
    assert ew.calogero_constant() == pytest.approx(
        ew.calogero_constant(scheme="gauss"), abs=1e-10
    )


def test_calogero_integral_value_and_scaling(p_ref):
    val = ew.calogero_integral(p_ref)
    assert val == pytest.approx(2.0 * 2.0 * math.pi * (2.0 - math.sqrt(2.0)), abs=1e-5)
    four_x = ew.PhysParams(p_ref.m, p_ref.hbar, 4.0 * p_ref.v0, p_ref.delta)
    assert ew.calogero_integral(four_x) == pytest.approx(2.0 * val, rel=1e-9)
    wider = ew.PhysParams(p_ref.m, p_ref.hbar, p_ref.v0, 3.0 * p_ref.delta)
    assert ew.calogero_integral(wider) == pytest.approx(3.0 * val, rel=1e-9)


def test_chadan_estimate_values(p_ref):
    assert ew.chadan_estimate(p_ref) == pytest.approx(3.3137, abs=1e-3)
    unit = ew.PhysParams(1.0, 1.0, -1.0, 1.0)
    assert ew.chadan_estimate(unit) == pytest.approx(2.0 * (math.sqrt(2.0) - 1.0), abs=1e-12)
    quad = ew.PhysParams(p_ref.m, p_ref.hbar, 4.0 * p_ref.v0, p_ref.delta)
    assert ew.chadan_estimate(quad) == pytest.approx(2.0 * ew.chadan_estimate(p_ref), rel=1e-12)


def test_chadan_ties_to_calogero(p_ref):
    via_integral = (
        math.sqrt(2.0 * p_ref.m) / p_ref.hbar * ew.calogero_integral(p_ref) / math.pi
    )
    assert ew.chadan_estimate(p_ref) == pytest.approx(via_integral, abs=1e-6)


def test_generation_threshold_values(p_ref):
    thr4 = ew.generation_threshold(p_ref, 4)
    assert thr4 == pytest.approx(4.0 * (3.0 + 2.0 * math.sqrt(2.0)) / p_ref.delta**2, rel=1e-12)
    assert thr4 == pytest.approx(5.8284, abs=1e-4)
    unit = ew.PhysParams(1.0, 1.0, -1.0, 1.0)
    assert ew.generation_threshold(unit, 4) == pytest.approx(23.3137, abs=1e-3)
    assert ew.generation_threshold(p_ref, 3) == pytest.approx(3.27849, abs=1e-4)
    with pytest.raises(DomainError):
        ew.generation_threshold(p_ref, 0)


# ------------------------------------------------------------- validation ---

def test_phys_params_validation():
    with pytest.raises(DomainError):
        ew.PhysParams(m=-1.0)
    with pytest.raises(DomainError):
        ew.PhysParams(hbar=0.0)
    with pytest.raises(DomainError):
        ew.PhysParams(delta=-2.0)
    with pytest.raises(DomainError):
        ew.PhysParams(v0=0.0)
    repulsive = ew.PhysParams(v0=4.0)  # allowed for potential evaluation
    with pytest.raises(DomainError):
        ew.chadan_estimate(repulsive)
    with pytest.raises(DomainError):
        frobenius_exponents(repulsive, -1.0)
