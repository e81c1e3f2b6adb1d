"""Exact-oracle comparison suites behind `genpotts verify`.

Each suite pits an implementation against an independent route to the same
quantity (finite differences, brute-force sums, exact enumeration) and
reports the worst observed error against its tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import finitevol as fv
from .fuzzy import limit_kernel_row
from .model import ModelParams, free_energy_1d, free_energy_1d_du, free_energy_1d_du2


@dataclass(frozen=True)
class VerifyResult:
    suite: str
    passed: bool
    max_error: float
    tolerance: float
    detail: str


# (q, z, beta-multiplier of q^(z-1)/(z-1)); chosen away from stationary-point
# collisions with the u grid so relative finite-difference errors stay meaningful
GRADIENT_POINTS = [
    (2.0, 2.0, 0.3), (3.0, 2.0, 0.3), (2.5, 3.0, 0.3), (4.0, 3.0, 0.3), (2.0, 5.0, 0.3),
    (5.0, 2.0, 0.3), (3.0, 4.0, 0.3), (6.0, 3.0, 0.3), (2.0, 3.5, 0.3), (8.0, 5.0, 0.3),
    (2.0, 2.0, 1.7), (3.0, 2.0, 1.7), (2.5, 3.0, 1.7), (4.0, 3.0, 1.7), (2.0, 5.0, 1.7),
    (5.0, 2.0, 1.7), (3.0, 4.0, 1.7), (6.0, 3.0, 1.7), (2.0, 3.5, 1.7), (8.0, 5.0, 1.7),
]


def gradient_suite(step: float = 1e-6, tol: float = 1e-6) -> VerifyResult:
    """First and second u-derivatives of the 1-d free energy against central
    finite differences of the function itself."""
    us = np.arange(0.05, 0.951, 0.05)
    worst = 0.0
    for q, z, mult in GRADIENT_POINTS:
        params = ModelParams(q, z, mult * q ** (z - 1.0) / (z - 1.0))
        d1 = free_energy_1d_du(us, params)
        fd1 = (free_energy_1d(us + step, params) - free_energy_1d(us - step, params)) / (2 * step)
        d2 = free_energy_1d_du2(us, params)
        fd2 = (free_energy_1d_du(us + step, params) - free_energy_1d_du(us - step, params)) / (2 * step)
        worst = max(
            worst,
            float(np.max(np.abs(d1 - fd1) / np.abs(d1))),
            float(np.max(np.abs(d2 - fd2) / np.abs(d2))),
        )
    return VerifyResult("gradient", worst <= tol, worst, tol,
                        f"{len(GRADIENT_POINTS)} parameter points x 19 u values")


def marginal_suite(tol: float = 1e-12) -> VerifyResult:
    """Brute-force sums of the coupling measure against both closed-form marginals."""
    worst = 0.0
    for clique_size in (2, 3):
        for p_open in (0.3, 0.7):
            e_sigma, e_omega = fv.coupling_marginal_errors(5, clique_size, 2, p_open)
            worst = max(worst, e_sigma, e_omega)
    return VerifyResult("marginal-coupling", worst <= tol, worst, tol,
                        "N=5, clique sizes {2,3}, q=2, p in {0.3,0.7}")


def variance_suite(tol: float = 1e-10) -> VerifyResult:
    """Exact variance identity between the clique-interaction model and its
    random-cluster partner."""
    worst = 0.0
    for q, z in [(2, 2), (2, 3), (3, 2)]:
        for beta in (0.0, 0.5, 1.0, 2.0):
            for n_sites in (2, 4, 6):
                if n_sites < z:
                    continue
                chk = fv.variance_identity_check(n_sites, ModelParams(q, z, beta))
                worst = max(worst, abs(chk.lhs - chk.rhs))
    return VerifyResult("variance-identity", worst <= tol, worst, tol,
                        "N <= 6, (q,z) in {(2,2),(2,3),(3,2)}, beta in {0,0.5,1,2}")


KERNEL_POINTS = [
    # (z, beta, nu_2): partition (1, 2) with q = 3; all effective temperatures
    # sit far from the internal critical point of the size-2 class
    (2.5, 0.5, 0.5),
    (2.5, 1.0, 0.5),
    (3.0, 0.5, 0.5),
    (3.0, 1.0, 0.5),
    (3.0, 1.0, 0.7),
]


def kernel_convergence_suite(tol: float = 0.05) -> VerifyResult:
    """Exact finite-N fuzzy conditional against the limiting kernel: the gap must
    fall below tol at N = 500 and shrink along N in {125, 250, 500}."""
    worst = 0.0
    monotone = True
    for z, beta, nu2 in KERNEL_POINTS:
        params = ModelParams(3, z, beta)
        errs = []
        for n_sites in (125, 250, 500):
            m2 = round(nu2 * (n_sites - 1))
            m1 = n_sites - 1 - m2
            exact = fv.fuzzy_kernel_exact_row((m1, m2), params, (1, 2))
            lim = limit_kernel_row(np.array([m1, m2]) / (n_sites - 1), beta, z, (1, 2))
            errs.append(float(np.max(np.abs(exact - lim))))
        monotone = monotone and errs[0] > errs[1] > errs[2]
        worst = max(worst, errs[-1])
    passed = monotone and worst <= tol
    return VerifyResult("kernel-convergence", passed, worst, tol,
                        "5 continuity points, N in {125,250,500}, monotone decrease required")


SUITES = {
    "gradient": gradient_suite,
    "marginal": marginal_suite,
    "variance": variance_suite,
    "kernel-convergence": kernel_convergence_suite,
}


def run_suites(names=None) -> list[VerifyResult]:
    selected = list(SUITES) if not names else list(names)
    results = []
    for name in selected:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        results.append(SUITES[name]())
    return results
