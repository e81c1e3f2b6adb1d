"""Exact and Monte Carlo finite-N machinery.

Exact computations never touch raw configurations: everything runs over type
classes (color count vectors), whose multinomial log-weights collapse the
q^N configuration space to polynomially many states.  The Monte Carlo side
provides a single-site heat-bath chain for the color model (hot loop in
`kernels`) and the two-step coupled chain linking the clique-interaction
model to its random-cluster representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from . import kernels
from .model import ModelParams, as_prob_vector, require_int

MAX_TYPE_STATES = 5_000_000   # cap on enumerated type classes
MAX_CLIQUES = 1_000_000       # cap on |Delta| = C(N, z) for samplers
MAX_CLIQUE_STATES = 1 << 22   # cap on 2^|Delta| for exact clique-config sums


class EnumerationCapError(ValueError):
    """An exact enumeration would exceed its configured state cap."""


# ---------------------------------------------------------------------------
# RNG: counter-based streams so chains are reproducible across thread counts
# ---------------------------------------------------------------------------

def chain_rng(seed: int, chain: int = 0) -> np.random.Generator:
    """Philox stream keyed by (seed, chain); same key, same sample path."""
    key = (int(seed) & 0xFFFFFFFFFFFFFFFF) | (int(chain) << 64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# Type-class enumeration
# ---------------------------------------------------------------------------

def n_compositions(total: int, parts: int) -> int:
    return math.comb(total + parts - 1, parts - 1)


def compositions(total: int, parts: int):
    """All ordered splits of `total` into `parts` nonnegative integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def composition_array(total: int, parts: int, cap: int = MAX_TYPE_STATES) -> np.ndarray:
    count = n_compositions(total, parts)
    if count > cap:
        raise EnumerationCapError(
            f"{count} type classes for ({total}, {parts}) exceed the cap {cap}"
        )
    out = np.fromiter(
        itertools.chain.from_iterable(compositions(total, parts)),
        dtype=np.int64,
        count=count * parts,
    )
    return out.reshape(count, parts)


def _log_multinomial(counts: np.ndarray) -> np.ndarray:
    total = counts.sum(axis=1)
    return gammaln(total + 1.0) - gammaln(counts + 1.0).sum(axis=1)


def _log_boltzmann(counts: np.ndarray, n_sites: int, z: float, beta: float) -> np.ndarray:
    """log of exp(-N F(n/N)) = (beta/z) N^(1-z) sum_i n_i^z, plus the multinomial factor."""
    power = (counts.astype(float) ** z).sum(axis=1)
    return _log_multinomial(counts) + (beta / z) * n_sites ** (1.0 - z) * power


def exact_type_distribution(
    n_sites: int, params: ModelParams, cap: int = MAX_TYPE_STATES
) -> dict[tuple[int, ...], float]:
    """Exact law of the color count vector: multinomial(N; n) * exp(-N F(n/N)), normalized.

    Computed in log space with log-sum-exp normalization; q must be integer.
    """
    q = require_int(params.q, "q")
    comps = composition_array(n_sites, q, cap)
    lw = _log_boltzmann(comps, n_sites, params.z, params.beta)
    probs = np.exp(lw - logsumexp(lw))
    return {tuple(int(c) for c in row): float(p) for row, p in zip(comps, probs)}


# ---------------------------------------------------------------------------
# Conditional kernel of the fuzzy model at finite N
# ---------------------------------------------------------------------------

def log_tilt_expectation(
    beta_eff: float, r: int, m_sites: int, z: float, cap: int = MAX_TYPE_STATES
) -> float:
    """log of the expected exponential tilt E[exp(beta_eff * L(1)^(z-1))] under the
    m-site r-state model at inverse temperature beta_eff.  Empty class: 0 (= log 1)."""
    r = require_int(r, "r")
    m_sites = require_int(m_sites, "m_sites")
    if r < 1 or m_sites < 0:
        raise ValueError("need r >= 1 and m_sites >= 0")
    if m_sites == 0:
        return 0.0
    comps = composition_array(m_sites, r, cap)
    lw = _log_boltzmann(comps, m_sites, z, beta_eff)
    tilt = beta_eff * (comps[:, 0] / m_sites) ** (z - 1.0)
    return float(logsumexp(lw + tilt) - logsumexp(lw))


def tilt_expectation(beta_eff: float, r: int, m_sites: int, z: float) -> float:
    return float(math.exp(log_tilt_expectation(beta_eff, r, m_sites, z)))


def fuzzy_kernel_row(nu_bar, n_sites: int, params: ModelParams, partition) -> np.ndarray:
    """Large-N representation of the fuzzy conditional kernel row.

    Class l, holding N_l = (N-1) nu_l of the conditioned sites, contributes
    r_l * E[exp tilt] under its internal N_l-site model at inverse temperature
    beta * (N_l/N)^(z-1).  The (N-1) nu_l must be integers (they are counts).
    """
    sizes = [require_int(r, "class size") for r in partition]
    nu_bar = as_prob_vector(nu_bar, len(sizes))
    raw = nu_bar * (n_sites - 1)
    counts = np.rint(raw)
    if np.any(np.abs(raw - counts) > 1e-9):
        raise ValueError(f"(N-1) * nu must be integer counts, got {raw.tolist()}")
    logs = []
    for r, m in zip(sizes, counts.astype(int)):
        beta_eff = params.beta * (m / n_sites) ** (params.z - 1.0)
        logs.append(math.log(r) + log_tilt_expectation(beta_eff, r, m, params.z))
    logs = np.asarray(logs)
    return np.exp(logs - logsumexp(logs))


def fuzzy_kernel(k: int, nu_bar, n_sites: int, params: ModelParams, partition) -> float:
    return float(fuzzy_kernel_row(nu_bar, n_sites, params, partition)[k])


def _log_class_sum(
    m_sites: int, r: int, n_total: int, z: float, beta: float, cap: int = MAX_TYPE_STATES
) -> float:
    """log sum over colorings of m_sites sites inside one class of r colors, with
    Boltzmann weight exp((beta/z) N^(1-z) sum_j c_j^z) at full system size N."""
    if m_sites == 0:
        return 0.0
    comps = composition_array(m_sites, r, cap)
    power = (comps.astype(float) ** z).sum(axis=1)
    lw = _log_multinomial(comps) + (beta / z) * n_total ** (1.0 - z) * power
    return float(logsumexp(lw))


def fuzzy_kernel_exact_row(fuzzy_counts, params: ModelParams, partition) -> np.ndarray:
    """Exact single-site fuzzy conditional given the class counts of the other N-1 sites.

    Conditioned on the class labels, colors in different classes decouple, so
    the joint weight factorizes over classes and the conditional for site one
    reduces to per-class ratios of type-class sums with one extra site.
    """
    q = require_int(params.q, "q")
    sizes = validate_sizes_against_q(partition, q)
    counts = [require_int(c, "class count") for c in fuzzy_counts]
    if len(counts) != len(sizes) or any(c < 0 for c in counts):
        raise ValueError("fuzzy counts must be nonnegative, one per class")
    n_sites = sum(counts) + 1
    logs = []
    for r, m in zip(sizes, counts):
        d = _log_class_sum(m + 1, r, n_sites, params.z, params.beta) - _log_class_sum(
            m, r, n_sites, params.z, params.beta
        )
        logs.append(d)
    logs = np.asarray(logs)
    return np.exp(logs - logsumexp(logs))


def fuzzy_kernel_exact(k: int, fuzzy_counts, params: ModelParams, partition) -> float:
    return float(fuzzy_kernel_exact_row(fuzzy_counts, params, partition)[k])


def validate_sizes_against_q(partition, q: int) -> list[int]:
    sizes = [require_int(r, "class size") for r in partition]
    if any(r < 1 for r in sizes) or sum(sizes) != q:
        raise ValueError(f"class sizes {sizes} must be positive and sum to q = {q}")
    return sizes


# ---------------------------------------------------------------------------
# Heat-bath chain for the color model
# ---------------------------------------------------------------------------

_SWEEP_CHUNK = 256  # sweeps per kernel call; fixed so the uniform stream is reproducible


def heatbath_weight_table(n_sites: int, z: float, beta: float) -> np.ndarray:
    """Unnormalized weight of moving one site onto a color held by m others:
    exp((beta N / z) [((m+1)/N)^z - (m/N)^z]), shifted so the largest entry is 1."""
    m = np.arange(n_sites, dtype=float)
    g = (beta * n_sites / z) * (((m + 1.0) / n_sites) ** z - (m / n_sites) ** z)
    return np.exp(g - g.max())


def sample_occupancies(
    n_sites: int,
    params: ModelParams,
    seed: int,
    sweeps: int,
    init: str = "random",
    chain: int = 0,
) -> np.ndarray:
    """Run `sweeps` full heat-bath sweeps; row s holds the color counts after sweep s.

    Deterministic in (seed, chain) regardless of backend: uniforms come from a
    Philox stream and both kernel backends consume them identically.
    """
    q = require_int(params.q, "q")
    if n_sites < 1 or sweeps < 0:
        raise ValueError("need n_sites >= 1 and sweeps >= 0")
    rng = chain_rng(seed, chain)
    if init == "random":
        colors = rng.integers(0, q, n_sites, dtype=np.int64)
    elif init == "ordered":
        colors = np.zeros(n_sites, dtype=np.int64)
    else:
        raise ValueError(f"unknown init {init!r}")
    counts = np.bincount(colors, minlength=q).astype(np.int64)
    table = heatbath_weight_table(n_sites, params.z, params.beta)
    out = np.empty((sweeps, q), dtype=np.int64)
    done = 0
    while done < sweeps:
        step = min(_SWEEP_CHUNK, sweeps - done)
        uniforms = rng.random(step * n_sites)
        kernels.run_sweeps(colors, counts, table, uniforms, out[done:done + step])
        done += step
    return out


def gibbs_sampler(n_sites: int, params: ModelParams, seed: int, sweeps: int, init: str = "random"):
    """Stream of color count vectors, one per sweep (see sample_occupancies)."""
    for row in sample_occupancies(n_sites, params, seed, sweeps, init=init):
        yield tuple(int(c) for c in row)


# ---------------------------------------------------------------------------
# Clique configurations, components, and the coupled two-step chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CliqueConfig:
    """Open z-cliques over vertices 0..n_vertices-1 (only the open ones are stored)."""

    n_vertices: int
    clique_size: int
    open_cliques: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ComponentReport:
    component_sizes: tuple[int, ...]  # descending, summing to n_vertices
    n_components: int


class DisjointSet:
    """Union-find with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def clique_array(n_vertices: int, clique_size: int, cap: int = MAX_CLIQUES) -> np.ndarray:
    """All z-element vertex subsets as an (M, z) index array."""
    clique_size = require_int(clique_size, "clique size")
    if clique_size < 2 or clique_size > n_vertices:
        raise ValueError("clique size must satisfy 2 <= z <= n_vertices")
    total = math.comb(n_vertices, clique_size)
    if total > cap:
        raise EnumerationCapError(f"{total} cliques exceed the cap {cap}")
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n_vertices), clique_size)),
        dtype=np.int64,
        count=total * clique_size,
    )
    return flat.reshape(total, clique_size)


def _components_from_open(n_vertices: int, open_rows) -> tuple[np.ndarray, int]:
    """Component label per vertex (isolated vertices are their own components)."""
    ds = DisjointSet(n_vertices)
    for row in open_rows:
        first = int(row[0])
        for v in row[1:]:
            ds.union(first, int(v))
    roots = np.fromiter((ds.find(v) for v in range(n_vertices)), dtype=np.int64, count=n_vertices)
    _, labels = np.unique(roots, return_inverse=True)
    return labels, int(labels.max()) + 1 if n_vertices else 0


def rcm_components(config: CliqueConfig) -> ComponentReport:
    """Connected components induced by open cliques (sharing a vertex connects),
    counting isolated vertices as singleton components."""
    for clique in config.open_cliques:
        if len(set(clique)) != config.clique_size or not all(
            0 <= v < config.n_vertices for v in clique
        ):
            raise ValueError(f"clique {clique} is not {config.clique_size} distinct vertices in range")
    labels, n_comp = _components_from_open(config.n_vertices, config.open_cliques)
    sizes = np.bincount(labels, minlength=n_comp)
    return ComponentReport(tuple(sorted((int(s) for s in sizes), reverse=True)), n_comp)


def _es_chain(n_vertices: int, clique_size: int, q: int, p_open: float, seed: int,
              chain: int = 0, cap: int = MAX_CLIQUES):
    """Internal coupled chain: yields (sigma, open clique rows) per sweep.

    Step one (cliques given colors): each monochromatic clique opens with
    probability p_open, all others close.  Step two (colors given cliques):
    every vertex component is recolored uniformly at random.
    """
    q = require_int(q, "q")
    if not 0.0 <= p_open <= 1.0:
        raise ValueError("p_open must lie in [0, 1]")
    cliques = clique_array(n_vertices, clique_size, cap)
    m = len(cliques)
    rng = chain_rng(seed, chain)
    sigma = rng.integers(0, q, n_vertices, dtype=np.int64)
    while True:
        mono = np.all(sigma[cliques] == sigma[cliques[:, :1]], axis=1)
        opens = mono & (rng.random(m) < p_open)
        open_rows = cliques[np.flatnonzero(opens)]
        yield sigma.copy(), open_rows
        labels, n_comp = _components_from_open(n_vertices, open_rows)
        colors = rng.integers(0, q, n_comp, dtype=np.int64)
        sigma = colors[labels]


def es_coupled_sampler(n_vertices: int, clique_size: int, q: int, p_open: float,
                       seed: int, sweeps: int | None = None, cap: int = MAX_CLIQUES):
    """Coupled (colors, open-cliques) chain whose stationary law is the joint
    coupling measure; the color marginal is the clique-interaction model with
    p_open = 1 - exp(-coupling)."""
    chain = _es_chain(n_vertices, clique_size, q, p_open, seed, cap=cap)
    stream = itertools.islice(chain, sweeps) if sweeps is not None else chain
    for sigma, open_rows in stream:
        config = CliqueConfig(
            n_vertices, clique_size, tuple(tuple(int(v) for v in row) for row in open_rows)
        )
        yield sigma, config


# ---------------------------------------------------------------------------
# Exact sums over clique configurations
# ---------------------------------------------------------------------------

def _popcount_lut() -> np.ndarray:
    return np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1).astype(np.int64)


_rcm_stats_cache: dict[tuple[int, int], tuple] = {}


def rcm_exact_stats(n_vertices: int, clique_size: int, cap: int = MAX_CLIQUE_STATES):
    """Per clique configuration (all 2^M of them): open count, component count,
    and sum of squared component fractions.

    Vectorized over configurations: each vertex carries a connectivity bitmask
    that is OR-merged across open cliques to a fixed point.  Needs
    n_vertices <= 8 (masks live in uint8).  Results are cached (and must not
    be mutated): the same statistics serve every (q, beta).
    """
    cached = _rcm_stats_cache.get((n_vertices, clique_size))
    if cached is not None:
        return cached
    if n_vertices > 8:
        raise EnumerationCapError("exact clique-configuration sums support at most 8 vertices")
    cliques = clique_array(n_vertices, clique_size, cap=MAX_CLIQUES)
    m = len(cliques)
    n_conf = 1 << m
    if n_conf > cap:
        raise EnumerationCapError(f"2^{m} clique configurations exceed the cap {cap}")

    conf = np.arange(n_conf, dtype=np.int64)
    open_bits = ((conf[:, None] >> np.arange(m)) & 1).astype(bool)
    n_open = open_bits.sum(axis=1).astype(np.int64)

    masks = np.broadcast_to(np.uint8(1) << np.arange(n_vertices, dtype=np.uint8), (n_conf, n_vertices)).copy()
    changed = True
    while changed:
        changed = False
        for j in range(m):
            rows = open_bits[:, j]
            verts = cliques[j]
            sub = masks[np.ix_(rows, verts)]
            merged = np.bitwise_or.reduce(sub, axis=1)
            if np.any(sub != merged[:, None]):
                masks[np.ix_(rows, verts)] = merged[:, None]
                changed = True

    pop = _popcount_lut()
    # a vertex is its component's representative iff no lower vertex is connected
    low_bits = (np.uint8(1) << np.arange(n_vertices, dtype=np.uint8)) - np.uint8(1)
    n_components = (masks & low_bits[None, :] == 0).sum(axis=1).astype(np.int64)
    # sum over vertices of |component(v)| equals sum over components of |C|^2
    sum_sq = pop[masks].sum(axis=1).astype(np.int64)
    result = (n_open, n_components, sum_sq)
    _rcm_stats_cache[(n_vertices, clique_size)] = result
    return result


def rcm_exact_stats_reference(n_vertices: int, clique_size: int):
    """Same statistics by direct union-find over every configuration (test oracle)."""
    cliques = [tuple(row) for row in clique_array(n_vertices, clique_size)]
    m = len(cliques)
    n_open = np.empty(1 << m, dtype=np.int64)
    n_comp = np.empty(1 << m, dtype=np.int64)
    sum_sq = np.empty(1 << m, dtype=np.int64)
    for conf in range(1 << m):
        open_rows = [cliques[j] for j in range(m) if conf >> j & 1]
        labels, k = _components_from_open(n_vertices, open_rows)
        sizes = np.bincount(labels, minlength=k)
        n_open[conf] = bin(conf).count("1")
        n_comp[conf] = k
        sum_sq[conf] = int((sizes**2).sum())
    return n_open, n_comp, sum_sq


def coupling_marginal_errors(n_vertices: int, clique_size: int, q: int, p_open: float,
                             cap: int = MAX_CLIQUE_STATES) -> tuple[float, float]:
    """Brute-force both marginals of the coupling measure.

    Sums the joint weight prod_D [(1-p) 1{closed} + p 1{open} 1{sigma constant on D}]
    over every (sigma, config) pair, and compares the two marginals against
    their closed forms: (1-p)^{#non-monochromatic cliques} for colors, and
    (1-p)^{#closed} p^{#open} q^{#components} for cliques.  Returns the two
    maximal absolute errors between normalized distributions.
    """
    q = require_int(q, "q")
    cliques = [tuple(row) for row in clique_array(n_vertices, clique_size)]
    m = len(cliques)
    n_conf = 1 << m
    if n_conf * q**n_vertices > cap:
        raise EnumerationCapError("joint enumeration exceeds the cap")
    conf = np.arange(n_conf, dtype=np.int64)
    open_bits = ((conf[:, None] >> np.arange(m)) & 1).astype(bool)
    n_open = open_bits.sum(axis=1)

    sigma_marg = np.empty(q**n_vertices)
    omega_marg = np.zeros(n_conf)
    sigma_target = np.empty(q**n_vertices)
    for s_idx, sigma in enumerate(itertools.product(range(q), repeat=n_vertices)):
        mono = np.array([len(set(sigma[v] for v in d)) == 1 for d in cliques])
        factors = np.where(open_bits, np.where(mono[None, :], p_open, 0.0), 1.0 - p_open)
        weights = factors.prod(axis=1)
        sigma_marg[s_idx] = weights.sum()
        omega_marg += weights
        sigma_target[s_idx] = (1.0 - p_open) ** int((~mono).sum())

    omega_target = np.empty(n_conf)
    for c in range(n_conf):
        open_rows = [cliques[j] for j in range(m) if c >> j & 1]
        _, k = _components_from_open(n_vertices, open_rows)
        o = int(n_open[c])
        omega_target[c] = (1.0 - p_open) ** (m - o) * p_open**o * float(q) ** k

    def norm(v):
        return v / v.sum()

    err_sigma = float(np.max(np.abs(norm(sigma_marg) - norm(sigma_target))))
    err_omega = float(np.max(np.abs(norm(omega_marg) - norm(omega_target))))
    return err_sigma, err_omega


# ---------------------------------------------------------------------------
# Clique-interaction Hamiltonian and the variance identity
# ---------------------------------------------------------------------------

def monochromatic_subsets(colors, clique_size: int) -> int:
    """Number of z-element site subsets on which the configuration is constant,
    by direct counting (small N only)."""
    colors = np.asarray(colors)
    return sum(
        1
        for d in itertools.combinations(range(len(colors)), clique_size)
        if len({int(colors[v]) for v in d}) == 1
    )


def hamiltonian_rewrite_gap(colors, params: ModelParams) -> float:
    """|(-N F(L_N)) - coupling * #monochromatic z-subsets| with the clique coupling
    beta (z-1)! / N^(z-1); bounded uniformly in N."""
    z = require_int(params.z, "z")
    colors = np.asarray(colors)
    n_sites = len(colors)
    counts = np.bincount(colors, minlength=require_int(params.q, "q")).astype(float)
    mean_field = (params.beta / z) * n_sites ** (1.0 - z) * float((counts**z).sum())
    coupling = params.beta * math.factorial(z - 1) / n_sites ** (z - 1.0)
    return abs(mean_field - coupling * monochromatic_subsets(colors, z))


def _clique_coupling(params: ModelParams, n_sites: int) -> float:
    z = require_int(params.z, "z")
    return params.beta * math.factorial(z - 1) / n_sites ** (z - 1.0)


def _clique_model_moments(n_sites: int, q: int, clique_size: int, coupling: float):
    """E[L(1)] and E[L(1)^2] under the clique-interaction color model, whose
    type-class weight is multinomial(N; n) * exp(coupling * sum_i C(n_i, z))."""
    comps = composition_array(n_sites, q)
    mono = np.zeros(len(comps))
    for i in range(q):
        mono += np.array([math.comb(int(c), clique_size) for c in comps[:, i]], dtype=float)
    lw = _log_multinomial(comps) + coupling * mono
    probs = np.exp(lw - logsumexp(lw))
    frac = comps[:, 0] / n_sites
    return float((probs * frac).sum()), float((probs * frac**2).sum())


@dataclass(frozen=True)
class VarianceCheck:
    lhs: float            # Var[L_N(1)] under the clique-interaction color model
    rhs: float            # ((q-1)/q^2) E_RCM[sum_i (|C_i|/N)^2]
    exact: bool
    diff_stderr: float | None  # MC only: stderr of the per-sweep coupled difference


def variance_identity_check(
    n_sites: int,
    params: ModelParams,
    exact: bool | None = None,
    seed: int = 0,
    sweeps: int = 20_000,
    cap: int = MAX_CLIQUE_STATES,
) -> VarianceCheck:
    """Both sides of the variance identity
    Var[L_N(1)] = ((q-1)/q^2) E_RCM[sum_i (|C_i|/N)^2].

    The identity is exact for the clique-interaction model with per-clique
    coupling beta (z-1)! / N^(z-1) and its random-cluster partner at
    p = 1 - exp(-coupling); integer z required.  Exact mode enumerates both
    sides (feasible while 2^C(N, z) stays under the cap); otherwise both are
    estimated from the coupled chain with the standard error of the per-sweep
    difference, which has mean zero under the coupling.
    """
    q = require_int(params.q, "q")
    z = require_int(params.z, "z")
    coupling = _clique_coupling(params, n_sites)
    p_open = float(-math.expm1(-coupling))
    m = math.comb(n_sites, z)
    if exact is None:
        exact = n_sites <= 8 and (1 << m) <= cap
    prefactor = (q - 1.0) / q**2

    if exact:
        mean, second = _clique_model_moments(n_sites, q, z, coupling)
        lhs = second - mean**2
        n_open, n_comp, sum_sq = rcm_exact_stats(n_sites, z, cap)
        weights = p_open**n_open * (1.0 - p_open) ** (m - n_open) * float(q) ** n_comp
        weights /= weights.sum()
        rhs = prefactor * float((weights * sum_sq).sum()) / n_sites**2
        return VarianceCheck(float(lhs), float(rhs), True, None)

    chain = _es_chain(n_sites, z, q, p_open, seed)
    burn = max(1, sweeps // 4)
    lhs_terms = np.empty(sweeps)
    rhs_terms = np.empty(sweeps)
    for t, (sigma, open_rows) in enumerate(itertools.islice(chain, burn + sweeps)):
        if t < burn:
            continue
        frac = float(np.count_nonzero(sigma == 0)) / n_sites
        labels, n_comp = _components_from_open(n_sites, open_rows)
        sizes = np.bincount(labels, minlength=n_comp)
        lhs_terms[t - burn] = (frac - 1.0 / q) ** 2
        rhs_terms[t - burn] = prefactor * float((sizes.astype(float) ** 2).sum()) / n_sites**2
    diff = lhs_terms - rhs_terms
    stderr = float(diff.std(ddof=1) / math.sqrt(len(diff)))
    return VarianceCheck(float(lhs_terms.mean()), float(rhs_terms.mean()), False, stderr)


# ---------------------------------------------------------------------------
# Percolation scan of the random-cluster model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PercolationEstimate:
    lam: float
    mean_max_fraction: float
    stderr: float


def percolation_scan(
    n_vertices: int,
    clique_size: int,
    q: int,
    lambda_grid,
    seed: int,
    samples: int,
    cap: int = MAX_CLIQUES,
) -> list[PercolationEstimate]:
    """Monte Carlo estimate of E[max_i |C_i| / N] under the random-cluster model
    with the sparse scaling p = lambda / N^(z-1), per grid value.

    Exploratory output: standard errors treat recorded sweeps as independent,
    which they are for q = 1 and only approximately otherwise.  One quarter of
    the requested samples is used as burn-in.  Deterministic per (seed, grid
    position), independent of any parallel scheduling.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    results = []
    for index, lam in enumerate(lambda_grid):
        lam = float(lam)
        if lam < 0:
            raise ValueError("lambda must be >= 0")
        p_open = min(lam / n_vertices ** (clique_size - 1.0), 1.0)
        chain = _es_chain(n_vertices, clique_size, q, p_open, seed, chain=index, cap=cap)
        burn = max(1, samples // 4)
        fractions = np.empty(samples)
        for t, (_, open_rows) in enumerate(itertools.islice(chain, burn + samples)):
            if t < burn:
                continue
            labels, n_comp = _components_from_open(n_vertices, open_rows)
            largest = int(np.bincount(labels, minlength=n_comp).max())
            fractions[t - burn] = largest / n_vertices
        results.append(
            PercolationEstimate(
                lam,
                float(fractions.mean()),
                float(fractions.std(ddof=1) / math.sqrt(samples)),
            )
        )
    return results
