"""Independent oracles used by the test suite.

Everything here reaches the target quantity by brute force (dense grids,
direct minimization, bisection on a scanned predicate) and never calls the
solver code paths it is used to check.
"""

from __future__ import annotations

import numpy as np

from genpotts.model import ModelParams, free_energy_1d


def grid_global_min_u(params: ModelParams, step: float = 1e-5) -> float:
    """Brute-force argmin of the 1-d free energy over a dense u grid."""
    grid = np.arange(0.0, 1.0 - 1e-9, step)
    return float(grid[np.argmin(free_energy_1d(grid, params))])


def grid_beta_c(q: float, z: float, u_step: float = 1e-5, beta_tol: float = 1e-9,
                jump: float = 0.05) -> float:
    """Critical inverse temperature by scanning the free energy on a dense u grid.

    The global minimizer jumps from ~0 to a macroscopic value as beta crosses
    the transition; the jump location is bracketed on [tiny, q^(z-1)/(z-1)]
    (the closed-form upper spinodal, where the uniform point stops being a
    local minimum) and pinned down by bisection on the scanned predicate.
    """
    grid = np.arange(0.0, 1.0 - 1e-9, u_step)

    def ordered(beta: float) -> bool:
        vals = free_energy_1d(grid, ModelParams(q, z, beta))
        return grid[int(np.argmin(vals))] > jump

    lo, hi = 1e-6, q ** (z - 1.0) / (z - 1.0)
    if not ordered(hi):
        raise RuntimeError("oracle bracket failed: no jump up to the upper spinodal")
    while hi - lo > beta_tol:
        mid = 0.5 * (lo + hi)
        if ordered(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def central_diff(f, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def classical_two_state_beta_c(q: int) -> float:
    """Known closed form 2 (q-1) log(q-1) / (q-2) for the quadratic model, q >= 3."""
    return 2.0 * (q - 1.0) * np.log(q - 1.0) / (q - 2.0)
