"""Scalar building blocks of the mean-field q-color model with interaction exponent z.

A color configuration on N sites is weighted by exp(-N*F(L_N)) where L_N is
the empirical color distribution and

    F(nu) = -(beta/z) * sum_i nu_i^z .

Adding the relative entropy against the uniform distribution gives the free
energy whose global minimizers describe the infinite-volume behavior.  All
candidate minimizers lie on the one-parameter family

    nu(u) = ((1 + (q-1)u)/q, (1-u)/q, ..., (1-u)/q),   u in [0, 1),

so the free energy restricts to a function of the scalar magnetization u;
this module evaluates that restriction, its derivatives, the associated
fixed-point (mean-field) equation, and the inversion giving the inverse
temperature at which a given u solves it.

Everything is a pure function of its arguments, in 64-bit floating point.
`q` is accepted as a real number >= 2 throughout; integer-only constraints
are enforced by downstream modules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

# u -> 1 is log-singular; evaluations are capped just inside the domain.
U_MAX = 1.0 - 1e-12
# below this, beta_of_u switches to its small-u series (the formula is 0/0 at u=0)
_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """Parameter triple (q, z, beta): colors, interaction exponent, inverse temperature."""

    q: float
    z: float
    beta: float

    def __post_init__(self):
        if not (np.isfinite(self.q) and self.q >= 2):
            raise ValueError(f"q must be a finite real >= 2, got {self.q!r}")
        if not (np.isfinite(self.z) and self.z >= 2):
            raise ValueError(f"z must be a finite real >= 2, got {self.z!r}")
        if not (np.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta!r}")


def require_int(value, name: str = "value") -> int:
    """Round-trip a float to an integer, rejecting anything not integral."""
    rounded = int(round(float(value)))
    if abs(value - rounded) > 1e-9:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return rounded


def as_prob_vector(weights, m: int | None = None) -> np.ndarray:
    """Validate a probability vector: nonnegative entries summing to 1 within 1e-12."""
    nu = np.asarray(weights, dtype=float)
    if nu.ndim != 1 or nu.size == 0:
        raise ValueError("probability vector must be one-dimensional and nonempty")
    if m is not None and nu.size != m:
        raise ValueError(f"dimension mismatch: expected {m} entries, got {nu.size}")
    if np.any(nu < 0):
        raise ValueError("probability vector has negative entries")
    if abs(float(nu.sum()) - 1.0) > 1e-12:
        raise ValueError(f"probability vector sums to {nu.sum()!r}, not 1")
    return nu


def uniform_vector(m: int) -> np.ndarray:
    return np.full(m, 1.0 / m)


def _expected_len(q: float) -> int | None:
    """Length constraint on color distributions: only binding for integer q."""
    rounded = int(round(q))
    return rounded if abs(q - rounded) <= 1e-9 else None


def hamiltonian(nu, params: ModelParams) -> float:
    """Mean-field energy -(beta/z) * sum_i nu_i^z; always <= 0."""
    nu = as_prob_vector(nu, _expected_len(params.q))
    return float(-(params.beta / params.z) * np.sum(nu**params.z))


def relative_entropy(nu, m: int) -> float:
    """Relative entropy of nu against the uniform distribution on m symbols.

    Uses the 0*log(0) := 0 convention; the result lies in [0, log m].
    """
    nu = as_prob_vector(nu, m)
    return float(np.sum(xlogy(nu, m * nu)))


def free_energy(nu, params: ModelParams) -> float:
    """Energy plus entropy: -(beta/z) sum nu_i^z + sum nu_i log(q nu_i)."""
    nu = as_prob_vector(nu, _expected_len(params.q))
    energy = -(params.beta / params.z) * np.sum(nu**params.z)
    entropy = np.sum(xlogy(nu, params.q * nu))
    return float(energy + entropy)


def embed(u: float, q) -> np.ndarray:
    """One-parameter symmetric-broken distribution ((1+(q-1)u)/q, (1-u)/q, ...)."""
    q = require_int(q, "q")
    if q < 2:
        raise ValueError("q must be >= 2")
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u!r}")
    nu = np.full(q, (1.0 - u) / q)
    nu[0] = (1.0 + (q - 1.0) * u) / q
    return nu


def _bracket_terms(u, q: float):
    """The two recurring factors 1 + (q-1)u and 1 - u."""
    u = np.asarray(u, dtype=float)
    return 1.0 + (q - 1.0) * u, 1.0 - u


def free_energy_1d(u, params: ModelParams):
    """Free energy along the symmetric-broken family, as a function of u in [0, 1).

    Equals free_energy(embed(u, q)) for integer q; at u=0 the value is
    -(beta/z) * q^(1-z).  Accepts scalars or arrays.
    """
    q, z, beta = params.q, params.z, params.beta
    b, a = _bracket_terms(u, q)
    entropy = (b * np.log(b) + (q - 1.0) * xlogy(a, a)) / q
    energy = (beta / z) * q**(-z) * (b**z + (q - 1.0) * a**z)
    return entropy - energy


def free_energy_1d_du(u, params: ModelParams):
    """First u-derivative of free_energy_1d; vanishes at u=0 for all parameters."""
    q, z, beta = params.q, params.z, params.beta
    b, a = _bracket_terms(u, q)
    drive = -((q - 1.0) / q**z) * beta * (b**(z - 1.0) - a**(z - 1.0))
    restore = ((q - 1.0) / q) * (np.log(b) - np.log(a))
    return drive + restore


def free_energy_1d_du2(u, params: ModelParams):
    """Second u-derivative; its sign at u=0 flips at beta = q^(z-1)/(z-1)."""
    q, z, beta = params.q, params.z, params.beta
    b, a = _bracket_terms(u, q)
    drive = -((q - 1.0) / q**z) * beta * (z - 1.0) * ((q - 1.0) * b**(z - 2.0) + a**(z - 2.0))
    restore = (q - 1.0) / (a * b)
    return drive + restore


def mf_exponent(u, params: ModelParams):
    """Exponent of the mean-field fixed-point map: -(beta/q^(z-1)) * [(1+(q-1)u)^(z-1) - (1-u)^(z-1)].

    Nonpositive for u in [0, 1]; zero exactly at u=0.
    """
    q, z, beta = params.q, params.z, params.beta
    b, a = _bracket_terms(u, q)
    return -(beta / q**(z - 1.0)) * (b**(z - 1.0) - a**(z - 1.0))


def mf_map(u, params: ModelParams):
    """Right side of the mean-field equation u = (1 - e^D) / (1 + (q-1) e^D)."""
    q = params.q
    d = mf_exponent(u, params)
    return -np.expm1(d) / (1.0 + (q - 1.0) * np.exp(d))


def beta_of_u(u, q: float, z: float):
    """Inverse temperature at which u solves the mean-field equation.

    Direct formula q^(z-1) * [log(1+(q-1)u) - log(1-u)] / [(1+(q-1)u)^(z-1) - (1-u)^(z-1)],
    evaluated through log1p/expm1 so the near-cancellation at small u is exact;
    below u = 1e-8 a second-order series around the u->0 limit q^(z-1)/(z-1)
    is used instead.  u is capped at 1 - 1e-12 against the log singularity.

    Accepts scalars or arrays; raises for u outside (0, 1).
    """
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise ValueError("u must lie strictly inside (0, 1)")
    capped = np.minimum(arr, U_MAX)
    num = np.log1p((q - 1.0) * capped) - np.log1p(-capped)
    den = np.exp((z - 1.0) * np.log1p(-capped)) * np.expm1((z - 1.0) * num)
    direct = q**(z - 1.0) * num / den

    limit = q**(z - 1.0) / (z - 1.0)
    # numerator qu(1 + n1 u + n2 u^2), denominator (z-1)qu(1 + d1 u + d2 u^2)
    n1 = -(q - 2.0) / 2.0
    n2 = ((q - 1.0)**3 + 1.0) / (3.0 * q)
    d1 = (z - 2.0) * (q - 2.0) / 2.0
    d2 = (z - 2.0) * (z - 3.0) * ((q - 1.0)**3 + 1.0) / (6.0 * q)
    c1 = n1 - d1
    c2 = n2 - n1 * d1 + d1 * d1 - d2
    series = limit * (1.0 + c1 * arr + c2 * arr * arr)

    out = np.where(arr < _SERIES_CUTOFF, series, direct)
    return float(out) if out.ndim == 0 else out


def aux_potential(x, params: ModelParams):
    """Strictly convex coordinate potential beta*x^(z-1) - log(q x) on (0, 1].

    Minimizer coordinates of the free energy share a level of this function,
    which pins them to at most two distinct values.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x > 1.0):
        raise ValueError("x must lie in (0, 1]")
    out = params.beta * x**(params.z - 1.0) - np.log(params.q * x)
    return float(out) if out.ndim == 0 else out


def aux_potential_argmin(params: ModelParams) -> float:
    """Unique minimizer (beta(z-1))^(-1/(z-1)) of the coordinate potential."""
    if params.beta <= 0.0:
        raise ValueError("the coordinate potential has no minimum at beta = 0")
    return float((params.beta * (params.z - 1.0)) ** (-1.0 / (params.z - 1.0)))
