"""Numerical refutation of the incorrect closed-form solutions that
circulate for this potential.

The claims under test are (a) that the transformed equation is solved by a
Hermite-function / Kummer-function combination

    u(x) = (c1 H_rho(z) + c2 1F1(-rho/2; 1/2; z^2)) exp(-sqrt(2 rho) z),
    z = sgn(V0) sqrt(sigma x) + sqrt(2 rho),

(b) that the well supports infinitely many bound states at
E_n = n^(-2/3) (-m V0 / hbar^2)^(1/3) V0 / 2, and (c) that the bound-state
wavefunctions are the polynomial reductions

    psi_n = (H_n(z) - sqrt(2n) H_{n-1}(z)) exp(-sqrt(2n) z - sigma x / 2),
    z = sqrt(2n) - sqrt(sigma x).

All three fail numerically: (a) and (c) leave O(1) relative defects in the
corresponding ODEs for every parameter assignment scanned, (c) additionally
does not vanish at the origin (psi_1 there is -exp(-2) independent of
sigma), and (b) contradicts the exact finite level count.  Every residual
operator is validated by a positive control (the correct solution passes on
the same grid) before it is used against the wrong one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import model, spectrum, wavefunc
from .errors import DomainError, NotAnEigenvalue, NumericalBreakdown
from .model import HeunParams, PhysParams, ResidualReport
from .specfun import hermite_fn, kummer_1f1


@dataclass(frozen=True)
class WrongSolutionParams:
    """Parameters of the claimed solution: order rho >= 0, scale sigma > 0,
    superposition coefficients, and the level index n used by the claimed
    spectrum and polynomial reductions."""

    rho: float
    sigma: float
    c1: float = 1.0
    c2: float = 0.0
    n: int = 1

    def __post_init__(self):
        if self.rho < 0.0:
            raise DomainError(f"rho must be >= 0, got {self.rho}")
        if self.sigma <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")


def wrong_u(wp: WrongSolutionParams, x: float, *, sign: float = -1.0) -> float:
    """The claimed Hermite/Kummer solution, exactly as printed.

    ``sign`` is sgn(V0); attractive wells fix it to -1, but +1 is also
    scanned because the original convention is ambiguous (a wrong solution
    must fail under both readings).
    """
    if not (0.0 < x < 1.0):
        raise DomainError(f"wrong_u expects x in (0, 1), got {x}")
    z = sign * math.sqrt(wp.sigma * x) + math.sqrt(2.0 * wp.rho)
    val = 0.0
    if wp.c1 != 0.0:
        val += wp.c1 * hermite_fn(wp.rho, z).value
    if wp.c2 != 0.0:
        val += wp.c2 * kummer_1f1(-wp.rho / 2.0, 0.5, z * z).value
    return val * math.exp(-math.sqrt(2.0 * wp.rho) * z)


def heun_residual(
    u: Callable[[float], float],
    hp: HeunParams,
    grid: Sequence[float] | None = None,
) -> ResidualReport:
    """Relative defect of u against the transformed equation

        u'' + u' (a/(x+1) + b/x + c/(x-1)) - u (k - bg x)/(x(x+1)(x-1))

    on grid points in (0, 1) kept at least 1e-3 away from the singular
    points.  Five-point finite differences; defects are relative to the
    largest of the three terms at each point.
    """
    xs = np.asarray(grid if grid is not None else np.linspace(0.05, 0.95, 41), dtype=float)
    if np.any(xs <= 1e-3) or np.any(xs >= 1.0 - 1e-3):
        raise DomainError("grid must stay >= 1e-3 away from x = 0 and x = 1")
    bg = hp.beta_h * hp.gamma_h
    residuals = np.empty(len(xs))
    scales = np.empty(len(xs))
    for i, x in enumerate(xs):
        h = 0.02 * min(x, 1.0 - x, 0.2)
        f = [u(x + j * h) for j in (-2, -1, 0, 1, 2)]
        upp = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
        up = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
        t1 = upp
        t2 = up * (hp.a / (x + 1.0) + hp.b / x + hp.c / (x - 1.0))
        t3 = -f[2] * (hp.k - bg * x) / (x * (x + 1.0) * (x - 1.0))
        residuals[i] = t1 + t2 + t3
        scales[i] = max(abs(t1), abs(t2), abs(t3))
    usable = scales > 1e-250
    if not np.any(usable):
        raise NumericalBreakdown("u is numerically zero on the whole grid")
    rel = np.zeros(len(xs))
    rel[usable] = np.abs(residuals[usable]) / scales[usable]
    return ResidualReport(
        grid=xs,
        residuals=residuals,
        scales=scales,
        rel_defects=rel,
        l2_norm=float(np.sqrt(np.mean(rel[usable] ** 2))),
        max_norm=float(np.max(rel[usable])),
    )


def wrong_energy(n: int, p: PhysParams) -> float:
    """The claimed (unbounded) spectrum E_n = n^(-2/3) (-mV0/hbar^2)^(1/3) V0/2,
    used only as input to the refutation residuals."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    p.require_attractive()
    return n ** (-2.0 / 3.0) * (-p.m * p.v0 / p.hbar**2) ** (1.0 / 3.0) * p.v0 / 2.0


def _hermite_poly(n: int, z: float) -> float:
    """Physicists' Hermite polynomial by the exact three-term recurrence."""
    if n == 0:
        return 1.0
    h0, h1 = 1.0, 2.0 * z
    for k in range(1, n):
        h0, h1 = h1, 2.0 * z * h1 - 2.0 * k * h0
    return h1


def wrong_psi(n: int, sigma: float, x: float) -> float:
    """The claimed bound-state wavefunction

        psi_n = (H_n(z) - sqrt(2n) H_{n-1}(z)) exp(-sqrt(2n) z - sigma x/2),
        z = sqrt(2n) - sqrt(sigma x),

    scaled by the constant -1/sqrt(2) that the printed ground-state form
    (1 - sqrt(2) z) exp(-sqrt(2) z - sigma x/2) fixes at n = 1.  With that
    normalization psi_1(x=0) = -exp(-2) exactly, for every sigma.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if x < 0.0:
        raise DomainError(f"x must be >= 0, got {x}")
    r2n = math.sqrt(2.0 * n)
    z = r2n - math.sqrt(sigma * x)
    poly = _hermite_poly(n, z) - r2n * _hermite_poly(n - 1, z)
    return -(poly / math.sqrt(2.0)) * math.exp(-r2n * z - sigma * x / 2.0)


def wrong_psi_ground(sigma: float, x: float) -> float:
    """The printed ground-state form (1 - sqrt(2) z) exp(-sqrt(2) z - sigma x/2);
    identical to wrong_psi(1, ...)."""
    z = math.sqrt(2.0) - math.sqrt(sigma * x)
    return (1.0 - math.sqrt(2.0) * z) * math.exp(-math.sqrt(2.0) * z - sigma * x / 2.0)


@dataclass(frozen=True)
class RefuteConfig:
    """Grids and thresholds of the refutation run.  The residual floors are
    measured regression values (the observed minima sit near 1, far above
    them), not theoretical bounds."""

    # sigma capped so |z|^2 stays inside the Kummer evaluator's domain for
    # both sign readings at every grid x
    rho_grid: tuple[float, ...] = tuple(np.linspace(0.5, 5.0, 10))
    sigma_grid: tuple[float, ...] = tuple(np.geomspace(0.5, 12.0, 10))
    schrod_sigma_grid: tuple[float, ...] = tuple(np.geomspace(0.1, 10.0, 8))
    schrod_levels: tuple[int, ...] = (1, 2, 3)
    heun_energy: float | None = None      # None: the middle spectrum root
    wrong_heun_floor: float = 0.05
    wrong_schrod_floor: float = 0.1
    control_heun_max: float = 1e-3
    control_schrod_max: float = 1e-4
    asymmetry_min: float = 100.0
    claimed_levels_shown: int = 6


@dataclass(frozen=True)
class RefuteReport:
    """Outcome of every refutation check, with the numeric evidence."""

    params: PhysParams
    heun_control_max: float            # worst correct-solution Heun defect
    heun_wrong_min: float              # best wrong-solution Heun defect
    heun_cells: int
    schrod_control_max: float          # worst correct-psi Schroedinger defect
    schrod_wrong_min: float            # best wrong-psi Schroedinger defect
    origin_value: float                # wrong psi_1 at x = 0
    origin_sigma_spread: float         # max deviation across the sigma grid
    exact_count: int
    count_estimate: float
    claimed_energies: tuple[float, ...]
    negative_control_ok: bool          # off-root correct psi rejected
    controls_pass: bool
    wrong_fail: bool                   # every wrong solution above its floor
    asymmetry_ratio: float
    thresholds: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.controls_pass and self.wrong_fail

    def to_dict(self) -> dict:
        return {
            "params": {
                "m": self.params.m,
                "hbar": self.params.hbar,
                "v0": self.params.v0,
                "delta": self.params.delta,
            },
            "heun": {
                "control_max_defect": self.heun_control_max,
                "wrong_min_defect": self.heun_wrong_min,
                "cells_scanned": self.heun_cells,
            },
            "schrodinger": {
                "control_max_defect": self.schrod_control_max,
                "wrong_min_defect": self.schrod_wrong_min,
            },
            "origin": {
                "wrong_psi1_at_origin": self.origin_value,
                "sigma_independence_spread": self.origin_sigma_spread,
                "required_by_boundary_condition": 0.0,
            },
            "count": {
                "exact": self.exact_count,
                "estimate": self.count_estimate,
                "claimed": "infinite",
                "claimed_first_energies": list(self.claimed_energies),
            },
            "negative_control_ok": self.negative_control_ok,
            "asymmetry_ratio": self.asymmetry_ratio,
            "controls_pass": self.controls_pass,
            "wrong_fail": self.wrong_fail,
            "passed": self.passed,
            "thresholds": self.thresholds,
        }


def _correct_u_factory(p: PhysParams, E: float) -> Callable[[float], float]:
    """The transformed-equation side of the correct wavefunction: psi divided
    by the reduction factor (1+x)^alpha1 (1-x)^alpha2."""
    sp = spectrum.spectral_params(p, E)
    C = spectrum.mixing_coefficient(sp)

    def u(x: float) -> float:
        from .specfun import gauss_2f1

        w = 0.5 * (1.0 - x)
        F1 = gauss_2f1(sp.alpha, sp.beta, 1.0 + 2.0 * sp.alpha2, w)
        F2 = gauss_2f1(sp.alpha, sp.beta, 2.0 * sp.alpha2, w)
        return F1.value + C * F2.value

    return u


def refute_report(p: PhysParams, config: RefuteConfig | None = None) -> RefuteReport:
    """Run every refutation check against parameter set ``p`` and collect
    the evidence.  Raises nothing for wrong-solution failures (they are the
    point); infrastructure errors propagate."""
    p.require_attractive()
    cfg = config or RefuteConfig()
    levels = spectrum.find_levels(p)
    if levels.count == 0:
        raise DomainError("refutation harness needs at least one bound state")
    roots = levels.energies
    e_heun = cfg.heun_energy if cfg.heun_energy is not None else roots[len(roots) // 2]

    # (v) positive controls first: the residual operators must accept the
    # correct solution before their verdict on the wrong one counts
    heun_control = 0.0
    for E in roots:
        hp = model.heun_params(p, E)
        rep = heun_residual(_correct_u_factory(p, E), hp)
        heun_control = max(heun_control, rep.max_norm)

    schrod_control = 0.0
    for E in roots:
        sp = spectrum.spectral_params(p, E)
        rep = model.schrodinger_residual(
            p, E, lambda y: wavefunc.psi_raw(p, sp, y), domain=(1e-3, 10.0 * p.delta)
        )
        schrod_control = max(schrod_control, rep.max_norm)

    # (i) Heun residual of the claimed Hermite/Kummer solution over the
    # (rho, sigma) grid, both basis functions, both sign readings
    hp = model.heun_params(p, e_heun)
    heun_wrong = math.inf
    cells = 0
    for rho in cfg.rho_grid:
        for sigma in cfg.sigma_grid:
            for c1, c2 in ((1.0, 0.0), (0.0, 1.0)):
                for sign in (-1.0, 1.0):
                    wp = WrongSolutionParams(rho=rho, sigma=sigma, c1=c1, c2=c2)
                    rep = heun_residual(lambda x: wrong_u(wp, x, sign=sign), hp)
                    heun_wrong = min(heun_wrong, rep.max_norm)
                    cells += 1

    # (ii) Schroedinger residual of the claimed wavefunctions at the claimed
    # energies, under both coordinate readings of the printed variable
    schrod_wrong = math.inf
    for n in cfg.schrod_levels:
        E_n = wrong_energy(n, p)
        for sigma in cfg.schrod_sigma_grid:
            direct = lambda y: wrong_psi(n, sigma, y)
            mapped = lambda y: wrong_psi(n, sigma, model.map_x(p, y))
            for psi in (direct, mapped):
                rep = model.schrodinger_residual(
                    p, E_n, psi, domain=(1e-3, 10.0 * p.delta)
                )
                schrod_wrong = min(schrod_wrong, rep.max_norm)

    # (iii) origin value of the claimed ground state: -exp(-2), sigma-free
    origin_vals = [wrong_psi(1, s, 0.0) for s in cfg.schrod_sigma_grid]
    origin_value = origin_vals[0]
    origin_spread = max(abs(v - origin_value) for v in origin_vals)

    # (iv) finite count against the claimed unbounded sequence
    claimed = tuple(wrong_energy(n, p) for n in range(1, cfg.claimed_levels_shown + 1))

    # negative control: the correct wavefunction at an off-root energy must
    # be rejected by the eigenvalue gate (the ODE residual alone is blind to
    # boundary conditions)
    if levels.count >= 2:
        e_off = 0.5 * (roots[0] + roots[1])
    else:
        e_off = 0.5 * roots[0]
    try:
        wavefunc.normalize(p, e_off)
        negative_ok = False
    except NotAnEigenvalue:
        negative_ok = True

    controls_pass = (
        heun_control < cfg.control_heun_max
        and schrod_control < cfg.control_schrod_max
        and negative_ok
    )
    wrong_fail = (
        heun_wrong > cfg.wrong_heun_floor
        and schrod_wrong > cfg.wrong_schrod_floor
        and abs(origin_value) > 0.01
    )
    worst_control = max(heun_control, schrod_control)
    ratio = min(heun_wrong, schrod_wrong) / worst_control if worst_control > 0 else math.inf

    return RefuteReport(
        params=p,
        heun_control_max=heun_control,
        heun_wrong_min=heun_wrong,
        heun_cells=cells,
        schrod_control_max=schrod_control,
        schrod_wrong_min=schrod_wrong,
        origin_value=origin_value,
        origin_sigma_spread=origin_spread,
        exact_count=levels.count,
        count_estimate=levels.estimate,
        claimed_energies=claimed,
        negative_control_ok=negative_ok,
        controls_pass=controls_pass,
        wrong_fail=wrong_fail,
        asymmetry_ratio=ratio,
        thresholds={
            "wrong_heun_floor": cfg.wrong_heun_floor,
            "wrong_schrod_floor": cfg.wrong_schrod_floor,
            "control_heun_max": cfg.control_heun_max,
            "control_schrod_max": cfg.control_schrod_max,
            "asymmetry_min": cfg.asymmetry_min,
        },
    )
