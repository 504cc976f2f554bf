"""Bound-state wavefunctions, normalization, matrix elements and V0 sweeps.

A bound state at energy E (a root of the spectrum function) is

    psi(y) = (1+z)^alpha1 (1-z)^alpha2 [ 2F1(a, b; 1+2a2; (1-z)/2)
                                         + C 2F1(a, b; 2a2; (1-z)/2) ]

with z = sqrt(1 - exp(-y/delta)) and C the mixing coefficient from the
spectrum module.  The (1-z) factor is real-valued by convention: for
non-integer alpha2 a (z-1)^alpha2 reading would differ only by a constant
phase, which normalization absorbs.

Conventions fixed here (and echoed in the CLI docs):

* level indices are 1-based with 1 = shallowest (the order the level list
  is usually quoted in); energies are stored ascending, deepest first;
* the transition matrix element is the dipole form <psi_i | y | psi_j>;
* each normalized state is positive on its first lobe from the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _quad, model, spectrum
from .errors import (
    DomainError,
    NotAnEigenvalue,
    ParamMismatch,
    QuadratureFailure,
    TooFewLevels,
)
from .model import PhysParams
from .spectrum import LevelSet, ScanConfig, SpectralParams
from .specfun import gauss_2f1


def psi_raw(p: PhysParams, sp: SpectralParams, y: float) -> float:
    """Unnormalized wavefunction at distance y > 0 for the spectral
    parameters ``sp``.

    Physically meaningful only when sp was built at a spectrum root, but
    evaluable at any E < 0 (off-root values are what the vanishing-at-origin
    diagnostics look at).
    """
    if not (y > 0.0 and math.isfinite(y)):
        raise DomainError(f"psi_raw requires y > 0, got {y}")
    t = math.exp(-y / p.delta)
    one_minus_z = t / (1.0 + math.sqrt(1.0 - t))  # stable 1 - z
    z = 1.0 - one_minus_z
    w = 0.5 * one_minus_z
    F1 = gauss_2f1(sp.alpha, sp.beta, 1.0 + 2.0 * sp.alpha2, w)
    F2 = gauss_2f1(sp.alpha, sp.beta, 2.0 * sp.alpha2, w)
    C = spectrum.mixing_coefficient(sp)
    return (1.0 + z) ** sp.alpha1 * one_minus_z**sp.alpha2 * (F1.value + C * F2.value)


@dataclass(frozen=True)
class BoundState:
    """A normalized bound state; calling it evaluates psi_n(y).

    ``index`` is the 1-based level number with 1 = shallowest (None when the
    state was normalized in isolation and its position is unknown).
    ``norm_constant`` is positive; ``sign`` implements the first-lobe-positive
    convention.
    """

    params: PhysParams
    energy: float
    sp: SpectralParams
    norm_constant: float
    sign: int
    index: int | None = None

    def __call__(self, y: float) -> float:
        return self.sign * self.norm_constant * psi_raw(self.params, self.sp, y)

    @property
    def decay_rate(self) -> float:
        """Asymptotic decay rate sqrt(-2mE)/hbar = alpha2/delta."""
        return self.sp.alpha2 / self.params.delta


def _tail_start(p: PhysParams, sp: SpectralParams) -> float:
    kappa = sp.alpha2 / p.delta
    return max(20.0 * p.delta, 30.0 / kappa)


def _state_integral(p, sp, weight, other_sp=None, scheme="adaptive"):
    """integral_0^inf psi_a(y) * weight(y) * psi_b(y) dy with the singular
    endpoint regularized by y = t^2 and an analytic exponential tail bound
    appended beyond y_max."""
    sp_b = other_sp if other_sp is not None else sp

    def f(y):
        return psi_raw(p, sp, y) * weight(y) * psi_raw(p, sp_b, y)

    run = _quad.adaptive if scheme == "adaptive" else _quad.fixed_gauss
    head = run(lambda t: 2.0 * t * f(t * t), 1e-9, math.sqrt(p.delta))
    y_max = max(_tail_start(p, sp), _tail_start(p, sp_b))
    body = 0.0
    edges = np.geomspace(p.delta, y_max, 8)
    for lo, hi in zip(edges[:-1], edges[1:]):
        body += run(f, float(lo), float(hi))
    # beyond y_max both factors are within O(exp(-y/delta)) of pure
    # exponentials, so the remainder is bounded by the closed form below
    kappa_sum = (sp.alpha2 + sp_b.alpha2) / p.delta
    wmax = abs(weight(y_max)) + abs(weight(y_max + 1.0 / kappa_sum))
    tail_bound = (
        abs(psi_raw(p, sp, y_max) * psi_raw(p, sp_b, y_max)) * (wmax + 1.0 / kappa_sum) / kappa_sum
    )
    total = head + body
    if not math.isfinite(total):
        raise QuadratureFailure("state integral diverged")
    return total, tail_bound


def normalize(
    p: PhysParams,
    E: float,
    *,
    index: int | None = None,
    root_tol: float = 1e-6,
    scheme: str = "adaptive",
) -> BoundState:
    """Normalize the bound state at energy E (|S(E)| must be below
    ``root_tol``) and fix the first-lobe-positive sign convention."""
    if abs(spectrum.s_of_e(p, E)) >= root_tol:
        raise NotAnEigenvalue(
            f"E={E} is not a spectrum root to tolerance {root_tol} "
            f"(S={spectrum.s_of_e(p, E):.3e})"
        )
    sp = spectrum.spectral_params(p, E)
    norm2, tail = _state_integral(p, sp, lambda y: 1.0, scheme=scheme)
    norm2 += tail  # the tail of psi^2 is positive; include its bound
    if norm2 <= 0.0:
        raise QuadratureFailure("non-positive norm integral")
    const = 1.0 / math.sqrt(norm2)

    ys = np.geomspace(1e-4 * p.delta, _tail_start(p, sp), 200)
    vals = np.array([psi_raw(p, sp, float(y)) for y in ys])
    peak = float(np.max(np.abs(vals)))
    first = next(v for v in vals if abs(v) > 0.05 * peak)
    sign = 1 if first > 0 else -1
    return BoundState(params=p, energy=E, sp=sp, norm_constant=const, sign=sign, index=index)


def build_states(p: PhysParams, levels: LevelSet, **kwargs) -> tuple[BoundState, ...]:
    """Normalize every level, attaching 1-based shallowest-first indices.

    Returned in the level set's ascending (deepest-first) energy order.
    """
    n = levels.count
    return tuple(
        normalize(p, E, index=n - i, **kwargs) for i, E in enumerate(levels.energies)
    )


def matrix_element(
    p: PhysParams, s1: BoundState, s2: BoundState, scheme: str = "adaptive"
) -> float:
    """Dipole transition matrix element <psi_1 | y | psi_2>."""
    if s1.params != p or s2.params != p:
        raise ParamMismatch("bound states belong to a different parameter set")
    val, tail = _state_integral(p, s1.sp, lambda y: y, other_sp=s2.sp, scheme=scheme)
    val *= s1.sign * s1.norm_constant * s2.sign * s2.norm_constant
    return val


def overlap(p: PhysParams, s1: BoundState, s2: BoundState) -> float:
    """<psi_1 | psi_2>, for orthogonality checks."""
    if s1.params != p or s2.params != p:
        raise ParamMismatch("bound states belong to a different parameter set")
    val, _ = _state_integral(p, s1.sp, lambda y: 1.0, other_sp=s2.sp)
    return val * s1.sign * s1.norm_constant * s2.sign * s2.norm_constant


def energy_intervals(ls: LevelSet) -> list[float]:
    """Consecutive differences of the ascending-sorted energies."""
    if ls.count < 2:
        raise TooFewLevels(f"need at least 2 levels, have {ls.count}")
    return list(np.diff(ls.energies))


def count_interior_nodes(state: BoundState, n_samples: int = 1500) -> int:
    """Interior zeros of a normalized state on a dense geometric grid."""
    p = state.params
    ys = np.geomspace(1e-3 * p.delta, _tail_start(p, state.sp), n_samples)
    vals = np.array([state(float(y)) for y in ys])
    peak = float(np.max(np.abs(vals)))
    mask = np.abs(vals) > 1e-8 * peak
    s = np.sign(vals[mask])
    return int(np.sum(s[1:] * s[:-1] < 0))


@dataclass(frozen=True)
class SweepTable:
    """Level structure tabulated against V0 (the data behind the standard
    levels / intervals / matrix-element plots).

    ``m12`` pairs the two shallowest levels (indices 1 and 2); ``m12_deep``
    pairs the two deepest (ground and first excited).  Both are None where
    fewer than two levels exist or the point failed.  ``emergence_points``
    are the |V0| values (refined to ``emergence_tol``) where the level count
    increments.  ``failures`` maps grid indices to error messages.
    """

    v0_grid: tuple[float, ...]
    levels: tuple[tuple[float, ...], ...]
    intervals: tuple[tuple[float, ...], ...]
    m12: tuple[float | None, ...]
    m12_deep: tuple[float | None, ...]
    emergence_points: tuple[float, ...]
    failures: dict[int, str]


def _sweep_point(p: PhysParams, scan: ScanConfig | None, with_m12: bool):
    ls = spectrum.find_levels(p, scan)
    ivals = tuple(float(d) for d in np.diff(ls.energies)) if ls.count >= 2 else ()
    m12 = m12_deep = None
    if with_m12 and ls.count >= 2:
        s1 = normalize(p, ls.energies[-1], index=1)
        s2 = normalize(p, ls.energies[-2], index=2)
        m12 = matrix_element(p, s1, s2)
        g1 = normalize(p, ls.energies[0], index=ls.count)
        g2 = normalize(p, ls.energies[1], index=ls.count - 1)
        m12_deep = matrix_element(p, g1, g2)
    return ls, ivals, m12, m12_deep


def sweep_v0(
    p_base: PhysParams,
    v0_values,
    *,
    scan: ScanConfig | None = None,
    with_m12: bool = True,
    emergence_tol: float = 1e-3,
) -> SweepTable:
    """Run the level scan (and matrix elements) across a grid of well
    depths, refine the emergence points by bisection in |V0|, and collect
    everything into a SweepTable.

    Per-point failures are recorded, not raised; the sweep always completes.
    """
    v0s = sorted(float(v) for v in v0_values)
    if not v0s or v0s[-1] >= 0.0:
        raise DomainError("all sweep V0 values must be negative")
    v0s = v0s[::-1]  # ascending |V0|

    counts: list[int | None] = []
    levels, intervals, m12s, m12ds = [], [], [], []
    failures: dict[int, str] = {}
    for i, v in enumerate(v0s):
        p = spectrum.with_v0(p_base, v)
        try:
            ls, ivals, m12, m12_deep = _sweep_point(p, scan, with_m12)
        except Exception as exc:  # flagged, sweep continues
            failures[i] = f"{type(exc).__name__}: {exc}"
            counts.append(None)
            levels.append(())
            intervals.append(())
            m12s.append(None)
            m12ds.append(None)
            continue
        counts.append(ls.count)
        levels.append(tuple(ls.energies))
        intervals.append(ivals)
        m12s.append(m12)
        m12ds.append(m12_deep)

    emergence = []
    for i in range(len(v0s) - 1):
        ca, cb = counts[i], counts[i + 1]
        if ca is None or cb is None or cb <= ca:
            continue
        for target in range(ca + 1, cb + 1):
            lo, hi = abs(v0s[i]), abs(v0s[i + 1])  # count < target at lo, >= target at hi
            while hi - lo > emergence_tol:
                mid = 0.5 * (lo + hi)
                try:
                    c = spectrum.find_levels(spectrum.with_v0(p_base, -mid), scan).count
                except Exception:
                    break
                if c >= target:
                    hi = mid
                else:
                    lo = mid
            emergence.append(0.5 * (lo + hi))

    return SweepTable(
        v0_grid=tuple(v0s),
        levels=tuple(levels),
        intervals=tuple(intervals),
        m12=tuple(m12s),
        m12_deep=tuple(m12ds),
        emergence_points=tuple(emergence),
        failures=failures,
    )
