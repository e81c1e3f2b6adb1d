"""Command-line surface: every analysis as a reproducible, scriptable run.

Single-result commands emit JSON on stdout; sweep commands emit CSV (header
row, floats at 17 significant digits) to --out or stdout.  Exit codes:
0 success, 1 verification failure, 2 validation error, 3 kernel evaluated at
a discontinuity.  All sampling commands are deterministic under --seed.
The environment variable GENPOTTS_THREADS sets the default worker count for
grid sweeps; rows are always written in input order.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import critical, finitevol, fuzzy, verify
from .collapse import SchemeError, block_sizes, gibbs_trajectory, load_scheme, r_star_trajectory
from .model import ModelParams, free_energy_1d, free_energy_1d_du

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_VALIDATION = 2
EXIT_DISCONTINUITY = 3


def f17(x) -> str:
    return format(float(x), ".17g")


def parse_grid(text: str) -> list[float]:
    """Grid syntax: comma list "2,3,4.5" or range "start:stop:step" (stop inclusive)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range grids need start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid range {text!r}")
        n = int(round((stop - start) / step))
        values = [start + i * step for i in range(n + 1)]
        return [v for v in values if v <= stop + 1e-12]
    return [float(p) for p in text.split(",") if p.strip()]


def parse_partition(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ValueError(f"partition must be comma-separated integers, got {text!r}") from exc


@contextmanager
def open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as handle:
            yield handle


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GENPOTTS_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Fan work out to the configured pool; results come back in input order."""
    workers = thread_count()
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_critical(args) -> int:
    ct = critical.beta_c(args.q, args.z, beta_tol=args.tol)
    payload: dict = {}
    if ct.beta_zero is not None:
        payload["beta_zero"] = ct.beta_zero
    payload.update(beta_one=ct.beta_one, beta_c=ct.beta_c, order=ct.order.value)
    print(json.dumps(payload))
    return EXIT_OK


def cmd_phase_diagram(args) -> int:
    q_grid = parse_grid(args.q_grid)
    z_grid = parse_grid(args.z_grid)
    points = [(q, z) for q in q_grid for z in z_grid]

    def solve(point):
        q, z = point
        ct = critical.beta_c(q, z, beta_tol=args.tol)
        return ct

    rows = ordered_map(solve, points)
    with open_out(args.out) as handle:
        writer = csv.writer(handle)
        writer.writerow(["q", "z", "beta_zero", "beta_one", "beta_c", "order"])
        for (q, z), ct in zip(points, rows):
            writer.writerow([
                f17(q), f17(z),
                "" if ct.beta_zero is None else f17(ct.beta_zero),
                f17(ct.beta_one), f17(ct.beta_c), ct.order.value,
            ])
    return EXIT_OK


def cmd_landscape(args) -> int:
    params = ModelParams(args.q, args.z, args.beta)
    grid = np.clip(np.asarray(parse_grid(args.u_grid)), 0.0, 1.0 - 1e-9)
    values = free_energy_1d(grid, params)
    slopes = free_energy_1d_du(grid, params)
    profile = critical.landscape(params)
    with open_out(args.out) as handle:
        writer = csv.writer(handle)
        writer.writerow(["u", "k", "k_prime"])
        for u, v, s in zip(grid, values, slopes):
            writer.writerow([f17(u), f17(v), f17(s)])
    stations = {
        "stationary_points": [
            {"u": pt.u, "k": pt.value, "kind": pt.kind.value} for pt in profile.points
        ],
        "global_min_u": profile.global_min_u,
    }
    if args.out not in (None, "-"):
        print(json.dumps(stations))
    return EXIT_OK


def cmd_fuzzy(args) -> int:
    verdict = fuzzy.classify(args.beta, args.q, args.z, parse_partition(args.partition))
    payload = {
        "gibbs_for_all_beta": verdict.gibbs_for_all_beta,
        "threshold_beta": verdict.threshold_beta,
        "governing_class": verdict.governing_class,
        "regime": verdict.regime.value,
        "is_gibbs": verdict.is_gibbs,
        "inherited_z2": verdict.inherited_z2,
        "discontinuities": [
            {"class_index": d.class_index, "nu": d.nu} for d in verdict.discontinuities
        ],
    }
    print(json.dumps(payload))
    return EXIT_OK


def cmd_kernel(args) -> int:
    partition = fuzzy.validate_partition(parse_partition(args.partition), args.q)
    nu = [float(p) for p in args.nu.split(",") if p.strip()]
    row = fuzzy.limit_kernel_row(nu, args.beta, args.z, partition)
    print(json.dumps({"probabilities": [float(p) for p in row]}))
    return EXIT_OK


def cmd_scheme(args) -> int:
    scheme, z = load_scheme(args.file)
    trajectory = gibbs_trajectory(args.beta, scheme, z)
    sizes_per_t = [block_sizes(p) for p in scheme.partitions]
    stars = r_star_trajectory(scheme, z)
    with open_out(args.out) as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", "sizes", "r_star", "status"])
        for t, status in enumerate(trajectory.statuses):
            star = ""
            if 1 <= t <= scheme.horizon - 1 and stars[t - 1] is not None:
                star = str(stars[t - 1])
            writer.writerow([t, "+".join(str(s) for s in sizes_per_t[t]), star, status.value])
    return EXIT_OK


def cmd_sample(args) -> int:
    params = ModelParams(args.q, args.z, args.beta)
    occ = finitevol.sample_occupancies(args.n, params, args.seed, args.sweeps, init=args.init)
    with open_out(args.out) as handle:
        writer = csv.writer(handle)
        writer.writerow(["sweep_index"] + [f"n_{i + 1}" for i in range(occ.shape[1])])
        for index in range(0, len(occ), args.record_every):
            writer.writerow([index, *(int(c) for c in occ[index])])
    return EXIT_OK


def cmd_rcm(args) -> int:
    grid = parse_grid(args.lambda_grid)
    results = finitevol.percolation_scan(
        args.n, args.z_int, args.q, grid, args.seed, args.samples, cap=args.max_states
    )
    with open_out(args.out) as handle:
        writer = csv.writer(handle)
        writer.writerow(["lambda", "mean_max_component_fraction", "stderr"])
        for r in results:
            writer.writerow([f17(r.lam), f17(r.mean_max_fraction), f17(r.stderr)])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suites(args.suite or None)
    failed = False
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.suite}: max_error={r.max_error:.3e} tolerance={r.tolerance:.0e} ({r.detail})")
        failed = failed or not r.passed
    return EXIT_VERIFICATION if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genpotts",
        description="Phase structure and Gibbsianness of the mean-field q-color model "
                    "with power-z interaction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed=False, out=True, tol=False, max_states=False):
        if out:
            p.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="RNG seed (Philox streams)")
        if tol:
            p.add_argument("--tol", type=float, default=1e-10,
                           help="bisection tolerance for critical temperatures")
        if max_states:
            p.add_argument("--max-states", type=int, default=finitevol.MAX_CLIQUES,
                           help="cap on enumerated states")

    p = sub.add_parser("critical", help="critical temperatures for one (q, z)")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    add_common(p, out=False, tol=True)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("phase-diagram", help="bifurcation temperatures over a (q, z) grid")
    p.add_argument("--q-grid", required=True, help="comma list or start:stop:step")
    p.add_argument("--z-grid", required=True, help="comma list or start:stop:step")
    add_common(p, tol=True)
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("landscape", help="1-d free energy on a u grid plus stationary points")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--u-grid", default="0:0.999:0.001")
    add_common(p)
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("fuzzy", help="Gibbs verdict for a spin partition")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--partition", required=True, help="class sizes, e.g. 2,3")
    add_common(p, out=False)
    p.set_defaults(func=cmd_fuzzy)

    p = sub.add_parser("kernel", help="limiting conditional kernel row at given class frequencies")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--nu", required=True, help="class frequencies, e.g. 0.4,0.6")
    add_common(p, out=False)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("scheme", help="Gibbs trajectory of a collapsing scheme")
    p.add_argument("--file", required=True, help="scheme JSON: {q, z, partitions}")
    p.add_argument("--beta", type=float, required=True)
    add_common(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("sample", help="heat-bath chain of the color model; CSV of counts per sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--sweeps", type=int, required=True)
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("--init", choices=["random", "ordered"], default="random")
    add_common(p, seed=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("rcm", help="random-cluster percolation scan at p = lambda / N^(z-1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z-int", type=int, required=True, help="clique size (integer z)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--lambda-grid", required=True)
    p.add_argument("--samples", type=int, default=100)
    add_common(p, seed=True, max_states=True)
    p.set_defaults(func=cmd_rcm)

    p = sub.add_parser("verify", help="run the exact-oracle comparison suites")
    p.add_argument("--suite", action="append", choices=sorted(verify.SUITES),
                   help="repeatable; default: all suites")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except fuzzy.DiscontinuityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONTINUITY
    except SchemeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
