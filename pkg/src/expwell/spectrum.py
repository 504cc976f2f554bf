"""Exact bound-state spectrum of the well.

The spectrum condition is that the decaying solution also vanishes at the
origin.  Three equivalent forms of it are provided:

* ``origin_amplitude`` - the origin value of the (unnormalized) bound-state
  wavefunction, a pole-free function of E used internally for bracketing;
* ``s_of_e`` - the conventional spectrum function
  S(E) = 1 - [(ab + 2 a2 q)/(2 a2 q)] 2F1(a, b; 1+2a2; 1/2) / 2F1(a, b; 2a2; 1/2),
  proportional to the origin amplitude between the poles of the ratio;
* ``s3f2_of_e`` - a single Clausen 3F2 evaluation, used as a cross-check.

``find_levels`` scans a geometric energy grid, brackets the sign changes of
the origin amplitude, refines each by bisection, and returns the complete
(finite) level list together with the closed-form count estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import model
from .errors import DivisionDegenerate, DomainError, PoleInParameter, ScanIncomplete
from .model import PhysParams
from .specfun import clausen_3f2, gauss_2f1


@dataclass(frozen=True)
class SpectralParams:
    """Exponents and hypergeometric parameters at one trial energy.

    q = alpha2 - alpha1 is the accessory constant of the transformed
    equation, the double root of q^2 + 2q(alpha1 - alpha2) - alpha*beta = 0;
    with it the spectrum function's coefficient reduces to
    (alpha1 + alpha2)/(2 alpha2) and S(E) = 0 becomes exactly the
    vanishing-at-origin condition.
    """

    alpha1: float
    alpha2: float
    alpha: float
    beta: float
    q: float


@dataclass(frozen=True)
class LevelSet:
    """All bound-state energies of one parameter set, sorted ascending
    (deepest first), with the count estimate and the scan floor actually
    examined."""

    params: PhysParams
    energies: tuple[float, ...]
    estimate: float
    scan_floor: float

    @property
    def count(self) -> int:
        return len(self.energies)


@dataclass(frozen=True)
class ScanConfig:
    """Knobs of the level scan.

    ``eps_top`` is the shallowest |E| examined (default 1e-6 energy-scale
    units); levels that have just emerged and sit above it are out of reach
    by construction.  ``scan_floor`` < 0 fixes the deepest energy; None lets
    the scan extend downward by doubling until a full decade below the
    deepest root is empty or the count reaches the estimate's ceiling.
    """

    eps_top: float | None = None
    points_per_decade: int = 400
    refine_rtol: float = 1e-10
    scan_floor: float | None = None
    pole_pad: float = 1e-4
    max_extensions: int = 16


def spectral_params(p: PhysParams, E: float) -> SpectralParams:
    """Exponents (alpha1, alpha2), upper parameters (alpha, beta) and the
    accessory constant q at trial energy E < 0."""
    a1, a2 = model.frobenius_exponents(p, E)
    al, be = model.upper_params(p, E)
    return SpectralParams(alpha1=a1, alpha2=a2, alpha=al, beta=be, q=a2 - a1)


def _origin_pieces(p: PhysParams, E: float):
    """F1, F2 at the origin argument 1/2 plus the spectral parameters."""
    sp = spectral_params(p, E)
    F1 = gauss_2f1(sp.alpha, sp.beta, 1.0 + 2.0 * sp.alpha2, 0.5)
    F2 = gauss_2f1(sp.alpha, sp.beta, 2.0 * sp.alpha2, 0.5)
    return sp, F1, F2


def mixing_coefficient(sp: SpectralParams) -> float:
    """Coefficient of the second hypergeometric term in the bound-state
    wavefunction: 2 a2 (a1 - a2) / (alpha beta - 2 a2 (a1 - a2))."""
    d = sp.alpha1 - sp.alpha2
    return 2.0 * sp.alpha2 * d / (sp.alpha * sp.beta - 2.0 * sp.alpha2 * d)


def origin_amplitude(p: PhysParams, E: float) -> float:
    """Origin value of the decaying solution (up to a positive prefactor):
    F1 + C F2 at argument 1/2.  Vanishes exactly at the bound-state
    energies and has no poles for E < 0 away from the E -> 0 edge."""
    sp, F1, F2 = _origin_pieces(p, E)
    return F1.value + mixing_coefficient(sp) * F2.value


def s_of_e(p: PhysParams, E: float) -> float:
    """Spectrum function S(E); its roots on the negative axis are the
    bound-state energies.

    Raises DivisionDegenerate where the denominator 2F1 vanishes (S has a
    pole there); scanners skip such points.
    """
    sp, F1, F2 = _origin_pieces(p, E)
    if abs(F2.value) <= 10.0 * F2.error_estimate:
        raise DivisionDegenerate(
            f"denominator 2F1 vanishes near E={E!r} (value {F2.value:.3e})"
        )
    ab = sp.alpha * sp.beta
    coef = (ab + 2.0 * sp.alpha2 * sp.q) / (2.0 * sp.alpha2 * sp.q)
    return 1.0 - coef * F1.value / F2.value


def s3f2_of_e(p: PhysParams, E: float) -> float:
    """The spectrum condition as a single Clausen function:
    3F2(alpha, beta, 1 - ab/q; -ab/q, 1 + 2 alpha2; 1/2).

    Vanishes exactly where s_of_e vanishes; kept as an independent
    cross-validation path.  Raises PoleInParameter when -ab/q sits on a
    non-positive integer (alpha1 - alpha2 integral).
    """
    sp = spectral_params(p, E)
    ab_over_q = sp.alpha * sp.beta / sp.q
    return clausen_3f2(
        sp.alpha, sp.beta, 1.0 - ab_over_q, -ab_over_q, 1.0 + 2.0 * sp.alpha2, 0.5
    ).value


def _geom_energy_grid(e_top: float, e_floor: float, points_per_decade: int) -> np.ndarray:
    """Geometric grid of negative energies from e_top down to e_floor
    (both negative, |e_top| < |e_floor|), ordered deepest first."""
    decades = math.log10(abs(e_floor) / abs(e_top))
    n = max(2, int(math.ceil(decades * points_per_decade)) + 1)
    return -np.geomspace(abs(e_floor), abs(e_top), n)


def _bisect_root(f, lo: float, hi: float, flo: float, rtol: float) -> float:
    """Bisection on [lo, hi] (lo < hi, f(lo)=flo, sign change guaranteed)."""
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(1.0, abs(mid)):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def find_levels(p: PhysParams, scan: ScanConfig | None = None) -> LevelSet:
    """Locate every bound state of ``p``.

    The sign changes of the origin amplitude are bracketed on a geometric
    |E| grid (the amplitude is proportional to S(E) between S's poles, so
    the root set is identical, but it has no spurious sign flips at the
    poles of the ratio).  Each bracket is refined by bisection to
    |dE| < refine_rtol * max(1, |E|).  Grid points inside the pole pad of
    the shallow-energy edge (2 alpha2 < pole_pad) are skipped.
    """
    p.require_attractive()
    cfg = scan or ScanConfig()
    e_top = -(cfg.eps_top if cfg.eps_top is not None else 1e-6 * p.energy_scale)
    auto_floor = cfg.scan_floor is None
    floor = cfg.scan_floor if cfg.scan_floor is not None else -8.0 * (abs(p.v0) + p.energy_scale)
    if floor >= e_top:
        raise DomainError(f"scan floor {floor} must lie below eps_top {e_top}")
    estimate = model.chadan_estimate(p)
    max_count = max(1, math.ceil(estimate))

    def amp(E: float) -> float | None:
        a2 = math.sqrt(p.coupling * (-E))
        if 2.0 * a2 < cfg.pole_pad:
            return None
        try:
            return origin_amplitude(p, E)
        except PoleInParameter:
            return None

    for _ in range(cfg.max_extensions):
        grid = _geom_energy_grid(e_top, floor, cfg.points_per_decade)
        vals = [amp(E) for E in grid]

        roots: list[float] = []
        for i in range(len(grid) - 1):
            fa, fb = vals[i], vals[i + 1]
            if fa is None or fb is None:
                continue
            if fa == 0.0:
                roots.append(float(grid[i]))
            elif fa * fb < 0.0:
                r = _bisect_root(
                    lambda E: _amp_strict(p, E, cfg.pole_pad),
                    float(grid[i]),
                    float(grid[i + 1]),
                    fa,
                    cfg.refine_rtol,
                )
                roots.append(r)

        if not auto_floor:
            break
        if roots:
            deepest = roots[0]
            if floor <= 10.0 * deepest or len(roots) >= max_count:
                break  # a full empty decade below the deepest root was scanned
        else:
            if abs(floor) >= 200.0 * (abs(p.v0) + p.energy_scale):
                break  # no level this deep can exist; accept an empty set
        floor *= 2.0
    else:
        raise ScanIncomplete(
            f"scan floor did not stabilize after {cfg.max_extensions} extensions"
        )

    return LevelSet(params=p, energies=tuple(roots), estimate=estimate, scan_floor=floor)


def _amp_strict(p: PhysParams, E: float, pole_pad: float) -> float:
    """origin_amplitude for the bisection path; a pole inside a bracket is a
    genuine scan failure rather than a skippable sample."""
    a2 = math.sqrt(p.coupling * (-E))
    if 2.0 * a2 < pole_pad:
        raise ScanIncomplete(f"bracket at E={E} runs into the shallow-edge pole pad")
    try:
        return origin_amplitude(p, E)
    except PoleInParameter as exc:
        raise ScanIncomplete(f"pole exclusion inside a bracket at E={E}") from exc


def level_scan_curve(
    p: PhysParams,
    e_lo: float,
    e_hi: float,
    n_points: int = 400,
) -> list[tuple[float, float | None, bool]]:
    """(E, S(E), is_pole) samples for plotting the spectrum function.

    Points where the denominator vanishes (poles of S) or where a
    hypergeometric parameter is excluded carry value None and flag True.
    """
    if not (e_lo < e_hi < 0.0):
        raise DomainError("need e_lo < e_hi < 0")
    out: list[tuple[float, float | None, bool]] = []
    for E in -np.geomspace(abs(e_lo), abs(e_hi), n_points):
        try:
            out.append((float(E), s_of_e(p, E), False))
        except (DivisionDegenerate, PoleInParameter):
            out.append((float(E), None, True))
    return out


def with_v0(p: PhysParams, v0: float) -> PhysParams:
    """Copy of ``p`` at a different well depth."""
    return replace(p, v0=v0)
