"""Physics layer for the bottomless exponential well

    V(y) = V0 / sqrt(1 - exp(-y/delta)) - V0,        V0 < 0, y > 0.

The potential diverges like V0 sqrt(delta/y) at the origin (an attractive
but sub-critical singularity) and decays like V0 exp(-y/delta)/2 at large
distance, so it is short-range and supports a finite number of bound states.

This module owns the potential itself, the coordinate map
x(y) = sqrt(1 - exp(-y/delta)) onto [0, 1), the parameters of the Heun-form
equation obtained under that map, a finite-difference Schroedinger residual
operator used both for verification and refutation, and the three classic
bound-state-count diagnostics (Bargmann integral, Calogero integral, and the
Chadan-style closed-form estimate derived from it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _quad
from .errors import DomainError, NumericalBreakdown

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PhysParams:
    """Physical configuration of one well instance.

    Units are whatever consistent system the caller works in; nothing is
    non-dimensionalized internally.
    """

    m: float = 1.0
    hbar: float = 1.0
    v0: float = -4.0
    delta: float = 2.0

    def __post_init__(self):
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"mass must be positive, got {self.m}")
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not (self.delta > 0.0 and math.isfinite(self.delta)):
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not (math.isfinite(self.v0) and self.v0 != 0.0):
            raise DomainError(f"V0 must be finite and non-zero, got {self.v0}")

    @property
    def energy_scale(self) -> float:
        """hbar^2 / (m delta^2), the natural energy unit of the well."""
        return self.hbar**2 / (self.m * self.delta**2)

    @property
    def coupling(self) -> float:
        """2 m delta^2 / hbar^2, the prefactor of every exponent formula."""
        return 2.0 * self.m * self.delta**2 / self.hbar**2

    def require_attractive(self):
        if self.v0 >= 0.0:
            raise DomainError("V0 must be negative")


@dataclass(frozen=True)
class HeunParams:
    """Parameters of the second-order equation satisfied by u(x) where
    psi = (1+x)^a1 (1-x)^a2 u(x):

        u'' + u' (a/(x+1) + b/x + c/(x-1)) - u (k - bg*x)/(x(x+1)(x-1)) = 0

    with bg = beta_h * gamma_h.  The exponents obey the Fuchsian relation
    c = 1 + beta_h + gamma_h - a - b and the accessory parameter k solves
    k^2 + k(a - c) - beta_h*gamma_h = 0 (a double root for this potential).
    """

    a: float
    b: float
    c: float
    beta_h: float
    gamma_h: float
    k: float


@dataclass(frozen=True)
class ResidualReport:
    """Grid-sampled ODE defect statistics.

    ``residuals`` holds the signed raw defects, ``scales`` the per-point
    reference magnitude (the larger of the two balanced ODE terms), and
    ``rel_defects`` their ratio.  max_norm is the maximum relative defect
    over the usable grid points; l2_norm is the RMS of the relative defects.
    """

    grid: np.ndarray
    residuals: np.ndarray
    scales: np.ndarray
    rel_defects: np.ndarray
    l2_norm: float
    max_norm: float


def frobenius_exponents(p: PhysParams, E: float) -> tuple[float, float]:
    """(alpha1, alpha2) controlling psi ~ (1+x)^alpha1 near x=-1 and
    psi ~ (1-x)^alpha2 near x=1:

        alpha1 = sqrt(2 m delta^2 (-E - 2 V0) / hbar^2)
        alpha2 = sqrt(-2 m delta^2 E / hbar^2)

    alpha2/delta is the exponential decay rate of a bound state at energy E.
    """
    p.require_attractive()
    if not (E < 0.0 and math.isfinite(E)):
        raise DomainError(f"bound-state energy must be negative, got {E}")
    A = p.coupling
    return math.sqrt(A * (-E - 2.0 * p.v0)), math.sqrt(A * (-E))


def upper_params(p: PhysParams, E: float) -> tuple[float, float]:
    """The pair (alpha, beta) = a1 + a2 +/- sqrt(8 m delta^2 (-E - V0)/hbar^2)
    appearing as upper parameters of every hypergeometric series here.

    Their product is -(alpha1 - alpha2)^2, an identity the tests verify.
    """
    a1, a2 = frobenius_exponents(p, E)
    s = math.sqrt(4.0 * p.coupling * (-E - p.v0))
    return a1 + a2 + s, a1 + a2 - s


def potential(p: PhysParams, y):
    """V(y) = V0 / sqrt(1 - exp(-y/delta)) - V0 for y > 0.

    Evaluated as V0 * t / (s(1+s)) with t = exp(-y/delta), s = sqrt(1-t),
    which is free of cancellation both near the origin and in the far tail.
    Accepts a scalar or an array.
    """
    arr = np.asarray(y, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("potential requires y > 0")
    t = np.exp(-arr / p.delta)
    s = np.sqrt(-np.expm1(-arr / p.delta))
    out = p.v0 * t / (s * (1.0 + s))
    return float(out) if np.isscalar(y) else out


def map_x(p: PhysParams, y):
    """Coordinate map x(y) = sqrt(1 - exp(-y/delta)), a bijection of
    [0, inf) onto [0, 1)."""
    arr = np.asarray(y, dtype=float)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("map_x requires y >= 0")
    out = np.sqrt(-np.expm1(-arr / p.delta))
    return float(out) if np.isscalar(y) else out


def inverse_map_y(p: PhysParams, x):
    """Inverse of map_x: y = -delta log(1 - x^2) for x in [0, 1)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise DomainError("inverse_map_y requires 0 <= x < 1")
    out = -p.delta * np.log1p(-(arr * arr))
    return float(out) if np.isscalar(x) else out


def heun_params(p: PhysParams, E: float) -> HeunParams:
    """Parameters of the transformed equation at trial energy E.

    The exponent identification is a = 1 + 2 alpha1, b = -1, c = 1 + 2 alpha2
    (b, not a, carries the -1), the numerator parameters are the upper pair
    (alpha, beta), and k = alpha2 - alpha1 is the double root of
    k^2 + k(a-c) - alpha*beta = 0.  The identification is validated end to
    end by the Schroedinger residual of the assembled wavefunction, not
    trusted on its own.
    """
    a1, a2 = frobenius_exponents(p, E)
    al, be = upper_params(p, E)
    return HeunParams(
        a=1.0 + 2.0 * a1,
        b=-1.0,
        c=1.0 + 2.0 * a2,
        beta_h=al,
        gamma_h=be,
        k=a2 - a1,
    )


def schrodinger_residual(
    p: PhysParams,
    E: float,
    psi: Callable[[float], float],
    domain: tuple[float, float] = (1e-3, 20.0),
    n_points: int = 160,
    potential_fn: Callable | None = None,
) -> ResidualReport:
    """Per-point defect of  psi'' + (2m/hbar^2)(E - V(y)) psi  on a geometric
    grid over ``domain``.

    The second derivative uses a five-point central stencil with per-point
    step h = max(1e-5, 1e-3 y), balancing truncation against cancellation
    near the singular origin.  Defects are reported relative to the larger
    of |psi''| and |(2m/hbar^2)(E-V) psi| at each point.  ``potential_fn``
    overrides the well potential (pass ``lambda y: 0.0`` to check free
    solutions); the default is the potential of ``p``.
    """
    y_lo, y_hi = domain
    if not (0.0 < y_lo < y_hi):
        raise DomainError(f"bad residual domain {domain}")
    if n_points < 2:
        raise DomainError("need at least two residual points")
    vfun = potential_fn if potential_fn is not None else (lambda y: potential(p, y))
    pref = 2.0 * p.m / p.hbar**2

    grid = np.geomspace(y_lo, y_hi, n_points)
    residuals = np.empty(n_points)
    scales = np.empty(n_points)
    for i, y in enumerate(grid):
        h = max(1e-5, 1e-3 * y)
        f = [psi(y + j * h) for j in (-2, -1, 0, 1, 2)]
        d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
        t2 = pref * (E - vfun(y)) * f[2]
        residuals[i] = d2 + t2
        scales[i] = max(abs(d2), abs(t2))

    usable = scales > 1e-250
    if not np.any(usable):
        raise NumericalBreakdown("psi is numerically zero over the whole residual grid")
    rel = np.zeros(n_points)
    rel[usable] = np.abs(residuals[usable]) / scales[usable]
    return ResidualReport(
        grid=grid,
        residuals=residuals,
        scales=scales,
        rel_defects=rel,
        l2_norm=float(np.sqrt(np.mean(rel[usable] ** 2))),
        max_norm=float(np.max(rel[usable])),
    )


# ---------------------------------------------------------------------------
# bound-state-count diagnostics
#
# Both integrals factor into |V0|- and delta-dependent prefactors times a
# universal dimensionless constant over the reduced potential
# g(u) = 1/sqrt(1-exp(-u)) - 1; the constants are computed once by
# quadrature with the singular endpoint regularized by substitution.
# ---------------------------------------------------------------------------


def _reduced_potential(u: float) -> float:
    # 1/sqrt(1-exp(-u)) - 1, in the cancellation-free form t/(s(1+s))
    t = math.exp(-u)
    s = math.sqrt(-math.expm1(-u))
    return t / (s * (1.0 + s))


def _tail_pieces(f, breaks: Sequence[float], scheme: str) -> float:
    run = _quad.adaptive if scheme == "adaptive" else _quad.fixed_gauss
    return sum(run(f, a, b) for a, b in zip(breaks[:-1], breaks[1:]))


@lru_cache(maxsize=None)
def _bargmann_constant(scheme: str = "adaptive") -> float:
    # integral of u g(u): u = t^2 near zero turns the sqrt(u) integrand smooth
    head = (_quad.adaptive if scheme == "adaptive" else _quad.fixed_gauss)(
        lambda t: 2.0 * t**3 * _reduced_potential(t * t), 0.0, 1.0
    )
    tail = _tail_pieces(lambda u: u * _reduced_potential(u), (1.0, 5.0, 20.0, 80.0), scheme)
    return head + tail  # remainder beyond u=80 is ~ 81*exp(-80)/2, far below 1e-12


@lru_cache(maxsize=None)
def calogero_constant(scheme: str = "adaptive") -> float:
    """The universal constant  integral_0^inf sqrt(g(u)) du  over the reduced
    potential; u = t^4 regularizes the u^(-1/4) endpoint singularity.

    Numerically this equals pi (2 - sqrt 2), the value required for the
    Chadan-style estimate below to be consistent with the integral test.
    """
    run = _quad.adaptive if scheme == "adaptive" else _quad.fixed_gauss
    head = run(lambda t: 4.0 * t**3 * math.sqrt(_reduced_potential(t**4)), 0.0, 1.0)
    tail = _tail_pieces(lambda u: math.sqrt(_reduced_potential(u)), (1.0, 5.0, 20.0, 80.0), scheme)
    return head + tail


def bargmann_integral(p: PhysParams, scheme: str = "adaptive") -> float:
    """(2m/hbar^2) integral_0^inf y |V(y)| dy, the classic upper-bound
    diagnostic for the number of bound states; finite because the potential
    is short-range."""
    p.require_attractive()
    return 2.0 * p.m / p.hbar**2 * abs(p.v0) * p.delta**2 * _bargmann_constant(scheme)


def calogero_integral(p: PhysParams, scheme: str = "adaptive") -> float:
    """integral_0^inf sqrt(-V(y)) dy = sqrt(|V0|) delta * calogero_constant()."""
    p.require_attractive()
    return math.sqrt(abs(p.v0)) * p.delta * calogero_constant(scheme)


def chadan_estimate(p: PhysParams) -> float:
    """Closed-form level-count estimate 2 (sqrt 2 - 1) sqrt(m delta^2 |V0| / hbar^2).

    Equals (1/pi) sqrt(2m/hbar^2) * calogero_integral(p); callers compare the
    exact level count against its ceiling.
    """
    p.require_attractive()
    return 2.0 * (SQRT2 - 1.0) * math.sqrt(p.m * p.delta**2 * abs(p.v0) / p.hbar**2)


def generation_threshold(p: PhysParams, n_levels_required: int) -> float:
    """Minimal |V0| for which the count estimate allows ``n_levels_required``
    levels:  (n / (2 (sqrt 2 - 1)))^2 hbar^2 / (m delta^2).

    With n = 4 this is the threshold for third-harmonic generation,
    4 (3 + 2 sqrt 2) hbar^2 / (m delta^2) ~ 23.3 hbar^2 / (m delta^2).
    """
    if n_levels_required < 1:
        raise DomainError("n_levels_required must be >= 1")
    return (n_levels_required / (2.0 * (SQRT2 - 1.0))) ** 2 * p.hbar**2 / (p.m * p.delta**2)
