"""Independent eigenvalue computation by two-sided shooting.

This module integrates the radial Schroedinger equation directly with an
adaptive embedded Runge-Kutta pair and matches logarithmic derivatives at an
interior point.  It shares no code with the hypergeometric layer, so
agreement between its eigenvalues and the analytic spectrum is a genuine
cross-check of both.

The origin is handled with the regular-solution series start
psi = y + a y^{5/2}, a = -(4/15)(2 m |V0| sqrt(delta) / hbar^2), which
removes the integrable sqrt-singularity of the potential from the
integrator's path.  The inward sweep runs in its growing direction (so it is
numerically stable) and is renormalized between segments to avoid overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import model
from .errors import DomainError, IntegrationFailure, ScanIncomplete
from .model import PhysParams


@dataclass(frozen=True)
class ShootingConfig:
    """Shooting-method knobs.  Fields left at None are resolved per call:
    y_start = 1e-6 delta, y_match = delta, y_max = max(40 delta, 40/kappa)
    with kappa = sqrt(-2mE)/hbar."""

    y_start: float | None = None
    y_match: float | None = None
    y_max: float | None = None
    rtol: float = 1e-10
    points_per_decade: int = 80
    eps_top: float | None = None
    scan_floor: float | None = None
    max_extensions: int = 16

    def resolve(self, p: PhysParams, E: float) -> tuple[float, float, float]:
        kappa = math.sqrt(-2.0 * p.m * E) / p.hbar
        y_start = self.y_start if self.y_start is not None else 1e-6 * p.delta
        y_match = self.y_match if self.y_match is not None else p.delta
        y_max = self.y_max if self.y_max is not None else max(40.0 * p.delta, 40.0 / kappa)
        if not (0.0 < y_start < y_match < y_max):
            raise DomainError(
                f"need 0 < y_start < y_match < y_max, got {y_start}, {y_match}, {y_max}"
            )
        return y_start, y_match, y_max


def _rhs(p: PhysParams, E: float):
    # scalar-math closure: the integrator calls this thousands of times, so
    # the array machinery of model.potential is deliberately bypassed
    pref = 2.0 * p.m / p.hbar**2
    v0, dl = p.v0, p.delta

    def f(y, uv):
        t = math.exp(-y / dl)
        s = math.sqrt(-math.expm1(-y / dl))
        v = v0 * t / (s * (1.0 + s))
        return (uv[1], pref * (v - E) * uv[0])

    return f


def _series_start(p: PhysParams, y: float) -> tuple[float, float]:
    a = -(4.0 / 15.0) * (2.0 * p.m * abs(p.v0) * math.sqrt(p.delta) / p.hbar**2)
    return y + a * y**2.5, 1.0 + 2.5 * a * y**1.5


def _integrate(p, E, y0, y1, u, v, rtol, dense=False):
    sol = solve_ivp(
        _rhs(p, E), (y0, y1), [u, v], method="DOP853", rtol=rtol, atol=1e-300,
        dense_output=dense,
    )
    if not sol.success:
        raise IntegrationFailure(f"solve_ivp failed on [{y0}, {y1}] at E={E}: {sol.message}")
    return sol


def _outward(p, E, y_start, y_match, rtol, dense=False):
    u, v = _series_start(p, y_start)
    return _integrate(p, E, y_start, y_match, u, v, rtol, dense)


def _inward_segments(p, E, y_match, y_max, rtol):
    """Breakpoints for the inward sweep chosen so the exponential growth per
    segment stays far from overflow."""
    kappa = math.sqrt(-2.0 * p.m * E) / p.hbar
    n_seg = max(1, int(kappa * (y_max - y_match) / 150.0) + 1)
    return np.geomspace(y_max, y_match, n_seg + 1), kappa


def _inward(p, E, y_match, y_max, rtol, keep_solutions=False):
    bpts, kappa = _inward_segments(p, E, y_match, y_max, rtol)
    u, v = 1.0, -kappa
    sols, scales = [], []
    for i in range(len(bpts) - 1):
        sol = _integrate(p, E, float(bpts[i]), float(bpts[i + 1]), u, v, rtol,
                         dense=keep_solutions)
        u, v = float(sol.y[0, -1]), float(sol.y[1, -1])
        scale = max(abs(u), abs(v))
        if scale == 0.0 or not math.isfinite(scale):
            raise IntegrationFailure(f"inward sweep degenerated at E={E}")
        if keep_solutions:
            sols.append(sol)
            scales.append(scale)
        u, v = u / scale, v / scale
    return (u, v, sols, scales) if keep_solutions else (u, v)


def mismatch(p: PhysParams, E: float, cfg: ShootingConfig | None = None) -> float:
    """Scale-free logarithmic-derivative mismatch of the outward (regular at
    the origin) and inward (decaying at infinity) solutions at y_match.

    Returns (uL vR - vL uR) / (|uL vR| + |vL uR|); its sign changes exactly
    at the eigenvalues.
    """
    p.require_attractive()
    if not (E < 0.0 and math.isfinite(E)):
        raise DomainError(f"need E < 0, got {E}")
    cfg = cfg or ShootingConfig()
    y_start, y_match, y_max = cfg.resolve(p, E)
    solL = _outward(p, E, y_start, y_match, cfg.rtol)
    uL, vL = float(solL.y[0, -1]), float(solL.y[1, -1])
    uR, vR = _inward(p, E, y_match, y_max, cfg.rtol)
    num = uL * vR - vL * uR
    den = abs(uL * vR) + abs(vL * uR)
    if den == 0.0 or not math.isfinite(den):
        raise IntegrationFailure(f"degenerate Wronskian at E={E}")
    return num / den


def shoot_eigenvalues(p: PhysParams, cfg: ShootingConfig | None = None) -> list[float]:
    """All eigenvalues found by bracketing sign changes of the mismatch on a
    geometric |E| grid and refining by bisection to 1e-10 relative.

    The grid policy mirrors the analytic scan: from eps_top (default
    1e-6 energy-scale units) down to an automatically extended floor.
    """
    p.require_attractive()
    cfg = cfg or ShootingConfig()
    e_top = -(cfg.eps_top if cfg.eps_top is not None else 1e-6 * p.energy_scale)
    auto_floor = cfg.scan_floor is None
    floor = cfg.scan_floor if cfg.scan_floor is not None else -8.0 * (abs(p.v0) + p.energy_scale)
    max_count = max(1, math.ceil(model.chadan_estimate(p)))

    def f(E: float) -> float:
        return mismatch(p, E, cfg)

    for _ in range(cfg.max_extensions):
        decades = math.log10(abs(floor) / abs(e_top))
        n = max(2, int(math.ceil(decades * cfg.points_per_decade)) + 1)
        grid = -np.geomspace(abs(floor), abs(e_top), n)
        vals = [f(float(E)) for E in grid]

        roots: list[float] = []
        for i in range(len(grid) - 1):
            fa, fb = vals[i], vals[i + 1]
            if fa == 0.0:
                roots.append(float(grid[i]))
            elif fa * fb < 0.0:
                lo, hi, flo = float(grid[i]), float(grid[i + 1]), fa
                for _ in range(200):
                    mid = 0.5 * (lo + hi)
                    if hi - lo <= 1e-10 * max(1.0, abs(mid)):
                        break
                    fm = f(mid)
                    if fm == 0.0:
                        lo = hi = mid
                        break
                    if flo * fm < 0.0:
                        hi = mid
                    else:
                        lo, flo = mid, fm
                roots.append(0.5 * (lo + hi))

        if not auto_floor:
            break
        if roots:
            if floor <= 10.0 * roots[0] or len(roots) >= max_count:
                break
        elif abs(floor) >= 200.0 * (abs(p.v0) + p.energy_scale):
            break
        floor *= 2.0
    else:
        raise ScanIncomplete(f"mismatch scan floor did not stabilize at {floor}")

    return roots


def refine_eigenvalue(
    p: PhysParams,
    e_lo: float,
    e_hi: float,
    cfg: ShootingConfig | None = None,
    rtol: float = 1e-12,
) -> float:
    """Bisect the mismatch inside a bracket [e_lo, e_hi] known to contain
    exactly one eigenvalue; used for cheap re-refinement under perturbed
    configurations without a full rescan."""
    if not (e_lo < e_hi < 0.0):
        raise DomainError(f"need e_lo < e_hi < 0, got {e_lo}, {e_hi}")
    cfg = cfg or ShootingConfig()
    flo = mismatch(p, e_lo, cfg)
    fhi = mismatch(p, e_hi, cfg)
    if flo == 0.0:
        return e_lo
    if fhi == 0.0:
        return e_hi
    if flo * fhi > 0.0:
        raise ScanIncomplete(f"no mismatch sign change on [{e_lo}, {e_hi}]")
    lo, hi = e_lo, e_hi
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(1.0, abs(mid)):
            return mid
        fm = mismatch(p, mid, cfg)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def eigenfunction(
    p: PhysParams,
    E: float,
    cfg: ShootingConfig | None = None,
    n_samples: int = 1200,
) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized eigenfunction samples assembled from both sweeps at an
    eigenvalue, for node counting and shape checks.

    The outward branch is rescaled to the inward branch at y_match; at a
    true eigenvalue the derivatives then agree automatically.
    """
    cfg = cfg or ShootingConfig()
    y_start, y_match, y_max = cfg.resolve(p, E)

    ys_out = np.geomspace(y_start, y_match, n_samples // 3)
    solL = _outward(p, E, y_start, y_match, cfg.rtol, dense=True)
    psi_out = solL.sol(ys_out)[0]
    uL, vL = float(solL.y[0, -1]), float(solL.y[1, -1])

    uR, vR, sols, scales = _inward(p, E, y_match, y_max, cfg.rtol, keep_solutions=True)
    # stitch on whichever component is better conditioned at the match point
    ratio = uR / uL if abs(uL) >= abs(vL) else vR / vL
    psi_out = psi_out * ratio

    ys_in_parts, psi_in_parts = [], []
    run = 1.0
    for sol, scale in zip(sols, scales):
        lo, hi = sol.t[-1], sol.t[0]
        ys = np.geomspace(lo, hi, max(8, n_samples // (3 * len(sols))))
        vals = sol.sol(ys)[0] / run
        ys_in_parts.append(ys)
        psi_in_parts.append(vals)
        run *= scale
    ys_in = np.concatenate(ys_in_parts)
    psi_in = np.concatenate(psi_in_parts)
    order = np.argsort(ys_in)
    ys_in, psi_in = ys_in[order], psi_in[order]
    # the concatenated inward samples are normalized to the match point
    # (value uR there); undo nothing else, signs are already consistent
    keep = ys_in > y_match
    y_all = np.concatenate([ys_out, ys_in[keep]])
    psi_all = np.concatenate([psi_out, psi_in[keep]])
    return y_all, psi_all


def count_nodes(y: np.ndarray, psi: np.ndarray, floor_frac: float = 1e-8) -> int:
    """Strict sign changes of psi, ignoring samples below floor_frac of the
    peak amplitude (integration noise in the far tail)."""
    peak = float(np.max(np.abs(psi)))
    mask = np.abs(psi) > floor_frac * peak
    s = np.sign(psi[mask])
    return int(np.sum(s[1:] * s[:-1] < 0))
