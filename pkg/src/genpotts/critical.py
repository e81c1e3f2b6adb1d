"""Mean-field equation solutions, critical temperatures and the free-energy landscape.

The inverse-temperature function beta_of_u is cup-shaped on (0, 1) whenever
(q, z) lies outside the strip {q = 2} x [2, 4]: it falls from its u->0 limit
beta_one = q^(z-1)/(z-1) to an interior minimum beta_zero and then climbs to
infinity.  Positive solutions of the mean-field equation at a given beta are
therefore the preimages of beta on the two monotone branches.  The critical
inverse temperature beta_c is where the nontrivial branch minimum of the
free energy ties with the uniform one (first order), or simply beta_one on
the strip (second order, continuous departure).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .model import U_MAX, ModelParams, beta_of_u, free_energy_1d, free_energy_1d_du2

_U_LO = 1e-12          # left end of root brackets
_SADDLE_CURVATURE = 1e-9  # |d2k/du2| below this counts as a saddle
_CRITICAL_BAND = 1e-9     # |beta - beta_c| below this makes no phase claim


class TransitionOrder(Enum):
    FIRST = "first"
    SECOND = "second"


class StationaryKind(Enum):
    MINIMUM = "min"
    MAXIMUM = "max"
    SADDLE = "saddle"


class LimitKind(Enum):
    EQUIDISTRIBUTION = "equidistribution"
    SYMMETRIC_MIXTURE = "symmetric_mixture"
    CRITICAL = "critical"


@dataclass(frozen=True)
class CriticalTemperatures:
    """The bifurcation temperatures of one (q, z): beta_zero < beta_c <= beta_one
    in the first-order regime, beta_zero absent and beta_c = beta_one otherwise."""

    beta_zero: float | None
    beta_one: float
    beta_c: float
    order: TransitionOrder


@dataclass(frozen=True)
class MfSolutionSet:
    """All solutions of the mean-field equation at fixed (q, z, beta), sorted; 0 is always present."""

    solutions: tuple[float, ...]

    @property
    def positive(self) -> tuple[float, ...]:
        return self.solutions[1:]

    @property
    def largest(self) -> float:
        return self.solutions[-1]


@dataclass(frozen=True)
class StationaryPoint:
    u: float
    value: float
    kind: StationaryKind


@dataclass(frozen=True)
class LandscapeProfile:
    """Stationary points of the 1-d free energy with min/max/saddle classification."""

    points: tuple[StationaryPoint, ...]
    global_min_u: float


@dataclass(frozen=True)
class LimitDescription:
    """Weak limit of the empirical color distribution: uniform below beta_c, a
    symmetric mixture of the q tilted vectors above it, no claim at beta_c."""

    kind: LimitKind
    u_value: float


def beta_one(q: float, z: float) -> float:
    """u->0 limit q^(z-1)/(z-1) of beta_of_u; above it u=0 is a local maximum."""
    _check_qz(q, z)
    return q**(z - 1.0) / (z - 1.0)


def spinodal_lower(q: float, z: float) -> float:
    """Left bifurcation line, where the curvature at u=0 changes sign: 1/beta = (z-1)/q^(z-1).

    Identical to beta_one; exposed under the bifurcation-diagram name.
    """
    return beta_one(q, z)


def is_second_order(q: float, z: float) -> bool:
    """Continuous transitions occur exactly on the strip q = 2, 2 <= z <= 4 (exact equality on q)."""
    _check_qz(q, z)
    return q == 2.0 and 2.0 <= z <= 4.0


def transition_order(q: float, z: float) -> TransitionOrder:
    return TransitionOrder.SECOND if is_second_order(q, z) else TransitionOrder.FIRST


def _check_qz(q: float, z: float) -> None:
    if not (np.isfinite(q) and q >= 2):
        raise ValueError(f"q must be >= 2, got {q!r}")
    if not (np.isfinite(z) and z >= 2):
        raise ValueError(f"z must be >= 2, got {z!r}")


def _key(q: float, z: float) -> tuple[float, float]:
    return (round(float(q), 12), round(float(z), 12))


_argmin_cache: dict[tuple[float, float], float] = {}
_beta_c_cache: dict[tuple[float, float], CriticalTemperatures] = {}
_cache_lock = threading.Lock()


def _argmin_beta_of_u(q: float, z: float) -> float:
    """Location of the interior minimum of beta_of_u (first-order regime only).

    Bracket on a coarse grid (geometric near 0, where the minimum sits for
    shallow dips), then bounded derivative-free minimization to 1e-13.
    """
    key = _key(q, z)
    with _cache_lock:
        cached = _argmin_cache.get(key)
    if cached is not None:
        return cached

    grid = np.unique(np.concatenate([
        np.geomspace(1e-9, 0.2, 700),
        np.linspace(0.2, U_MAX, 1400),
    ]))
    vals = beta_of_u(grid, q, z)
    i = int(np.argmin(vals))
    if i == 0 or i == len(grid) - 1:
        raise RuntimeError(f"no interior minimum of beta_of_u found for (q, z) = ({q}, {z})")
    res = minimize_scalar(
        lambda t: beta_of_u(t, q, z),
        bounds=(grid[i - 1], grid[i + 1]),
        method="bounded",
        options={"xatol": 1e-13},
    )
    u0 = float(res.x)
    with _cache_lock:
        _argmin_cache[key] = u0
    return u0


def beta_zero(q: float, z: float) -> float:
    """Smallest inverse temperature with a nontrivial mean-field solution.

    The interior minimum of beta_of_u; undefined on the second-order strip,
    where the minimum sits at the boundary u = 0.
    """
    _check_qz(q, z)
    if is_second_order(q, z):
        raise ValueError(f"beta_zero is undefined on the second-order strip, got (q, z) = ({q}, {z})")
    return float(beta_of_u(_argmin_beta_of_u(q, z), q, z))


def _root_on_branch(beta: float, q: float, z: float, lo: float, hi: float) -> float:
    return float(brentq(lambda t: beta_of_u(t, q, z) - beta, lo, hi, xtol=1e-12))


def _u2_upper(beta: float, q: float, z: float, lo: float) -> float | None:
    """Root on the increasing branch [lo, U_MAX], capped at U_MAX for huge beta."""
    if beta_of_u(lo, q, z) - beta > 0.0:
        return None
    if beta_of_u(U_MAX, q, z) - beta <= 0.0:
        return U_MAX  # true root is within 1e-12 of 1, beyond double resolution
    return _root_on_branch(beta, q, z, lo, U_MAX)


def mf_solutions(params: ModelParams) -> MfSolutionSet:
    """All mean-field solutions at (q, z, beta): always 0, plus up to two positive roots.

    Positive roots are preimages of beta on the two monotone branches of
    beta_of_u, located by bracketing root-finding to 1e-12 in u.
    """
    q, z, beta = params.q, params.z, params.beta
    sols = [0.0]
    b1 = beta_one(q, z)
    if is_second_order(q, z):
        if beta > b1:
            root = _u2_upper(beta, q, z, _U_LO)
            if root is not None:
                sols.append(root)
        return MfSolutionSet(tuple(sols))

    u0 = _argmin_beta_of_u(q, z)
    b0 = beta_of_u(u0, q, z)
    if beta < b0:
        return MfSolutionSet(tuple(sols))
    if b0 < beta < b1 and beta_of_u(_U_LO, q, z) - beta > 0.0:
        # the second condition only fails within ~1e-11 of beta_one, where the
        # lower root has already collapsed into 0
        sols.append(_root_on_branch(beta, q, z, _U_LO, u0))
    upper = _u2_upper(beta, q, z, u0)
    if upper is not None:
        sols.append(upper)
    sols = sorted(sols)
    deduped = [sols[0]]
    for s in sols[1:]:
        if s - deduped[-1] > 1e-11:
            deduped.append(s)
    return MfSolutionSet(tuple(deduped))


def largest_solution(params: ModelParams) -> float:
    return mf_solutions(params).largest


def beta_c(q: float, z: float, beta_tol: float = 1e-10) -> CriticalTemperatures:
    """Critical inverse temperature and transition order for one (q, z).

    Second-order strip: beta_c = beta_one exactly.  Otherwise bisection in
    beta over [beta_zero, beta_one] on the free-energy gap between the upper
    mean-field solution and u = 0; that gap is strictly decreasing in beta.
    """
    _check_qz(q, z)
    b1 = beta_one(q, z)
    if is_second_order(q, z):
        return CriticalTemperatures(None, b1, b1, TransitionOrder.SECOND)

    u0 = _argmin_beta_of_u(q, z)
    b0 = float(beta_of_u(u0, q, z))

    def gap(beta: float) -> float:
        p = ModelParams(q, z, beta)
        u2 = _u2_upper(beta, q, z, u0)
        return float(free_energy_1d(u2, p) - free_energy_1d(0.0, p))

    lo, hi = b0, b1
    if gap(lo) <= 0.0:
        # degenerate dip (shrinks to the triple point); the tie is at its bottom
        return CriticalTemperatures(b0, b1, b0, TransitionOrder.FIRST)
    for _ in range(300):
        if hi - lo <= beta_tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return CriticalTemperatures(b0, b1, 0.5 * (lo + hi), TransitionOrder.FIRST)


def beta_c_cached(q: float, z: float) -> CriticalTemperatures:
    """Memoized beta_c, safe for concurrent use; keys rounded to 12 decimals."""
    key = _key(q, z)
    with _cache_lock:
        hit = _beta_c_cache.get(key)
    if hit is not None:
        return hit
    result = beta_c(q, z)
    with _cache_lock:
        _beta_c_cache[key] = result
    return result


def landscape(params: ModelParams) -> LandscapeProfile:
    """Stationary points of the 1-d free energy, classified by curvature sign.

    Curvature within 1e-9 of zero counts as a saddle (exact saddles occur only
    at beta = beta_zero).  A lone positive stationary point below the upper
    spinodal is the merged pair of roots at beta_zero, a saddle by structure
    even when the numerically located point carries slight curvature.  The
    global minimizer breaks exact ties toward 0.
    """
    q, z = params.q, params.z
    sols = mf_solutions(params)
    merged_pair = (
        not is_second_order(q, z)
        and len(sols.positive) == 1
        and params.beta < beta_one(q, z)
    )
    pts = []
    for u in sols.solutions:
        curv = float(free_energy_1d_du2(u, params))
        if abs(curv) < _SADDLE_CURVATURE or (u > 0 and merged_pair and abs(curv) < 1e-6):
            kind = StationaryKind.SADDLE
        elif curv > 0:
            kind = StationaryKind.MINIMUM
        else:
            kind = StationaryKind.MAXIMUM
        pts.append(StationaryPoint(u, float(free_energy_1d(u, params)), kind))
    best = min(pt.value for pt in pts)
    global_min_u = min(pt.u for pt in pts if pt.value <= best + 1e-12)
    return LandscapeProfile(tuple(pts), global_min_u)


def limit_distribution(params: ModelParams) -> LimitDescription:
    """Weak limit of the empirical distribution: uniform below beta_c, symmetric
    mixture with the largest mean-field solution above, no claim within 1e-9."""
    bc = beta_c_cached(params.q, params.z).beta_c
    if abs(params.beta - bc) <= _CRITICAL_BAND:
        return LimitDescription(LimitKind.CRITICAL, 0.0)
    if params.beta < bc:
        return LimitDescription(LimitKind.EQUIDISTRIBUTION, 0.0)
    return LimitDescription(LimitKind.SYMMETRIC_MIXTURE, largest_solution(params))
