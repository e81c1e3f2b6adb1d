"""Collapsing schemes: trajectories of fuzzy models under step-wise class merging.

A collapsing scheme is a strictly coarsening chain of partitions of the color
set {1, ..., q}, from all singletons down to a single block.  Each interior
time t carries a fuzzy model whose Gibbs verdict depends only on the size of
the smallest class in the first-order region; running the per-time verdicts
along the chain gives a Gibbs/non-Gibbs trajectory, which for "regular"
schemes switches at most once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .fuzzy import governing_size, internal_beta_c
from .model import require_int

Block = tuple[int, ...]
Partition = tuple[Block, ...]


class SchemeError(ValueError):
    """Invalid collapsing scheme; `t` indexes the offending partition."""

    def __init__(self, t: int, reason: str):
        self.t = t
        self.reason = reason
        super().__init__(f"invalid scheme at t = {t}: {reason}")


class Status(Enum):
    GIBBS = "gibbs"
    NON_GIBBS = "non_gibbs"
    TRIVIAL_ENDPOINT = "trivial_endpoint"


@dataclass(frozen=True)
class CollapsingScheme:
    q: int
    partitions: tuple[Partition, ...]

    @property
    def horizon(self) -> int:
        """Number of collapse steps T (partitions run from t = 0 to t = T)."""
        return len(self.partitions) - 1


@dataclass(frozen=True)
class Trajectory:
    """Per-time Gibbs status along a scheme; endpoints are the untransformed and
    the fully collapsed measure, reported as trivial."""

    statuses: tuple[Status, ...]
    governing_sizes: tuple[int | None, ...]  # per t = 1..T-1
    switches: tuple[int, ...]  # interior times where the status changes
    t_gibbs: int | None  # re-entry time, reported for regular schemes only


def canonical_partition(blocks) -> Partition:
    """Blocks with sorted members, ordered by smallest element."""
    return tuple(sorted(tuple(sorted(require_int(v, "color") for v in b)) for b in blocks))


def make_scheme(q, partitions) -> CollapsingScheme:
    q = require_int(q, "q")
    return CollapsingScheme(q, tuple(canonical_partition(p) for p in partitions))


def block_sizes(partition: Partition) -> tuple[int, ...]:
    return tuple(len(b) for b in partition)


def _check_partition(t: int, partition: Partition, q: int) -> None:
    seen: set[int] = set()
    for block in partition:
        if not block:
            raise SchemeError(t, "empty block")
        for v in block:
            if not 1 <= v <= q:
                raise SchemeError(t, f"color {v} outside 1..{q}")
            if v in seen:
                raise SchemeError(t, f"color {v} appears in two blocks")
            seen.add(v)
    if len(seen) != q:
        raise SchemeError(t, f"blocks cover {len(seen)} of {q} colors")


def validate_scheme(scheme: CollapsingScheme) -> None:
    """Check the chain structure; raises SchemeError naming the violation."""
    q = scheme.q
    parts = scheme.partitions
    if q < 2:
        raise SchemeError(0, f"q must be >= 2, got {q}")
    if len(parts) < 2:
        raise SchemeError(0, "a scheme needs at least the two endpoint partitions")
    for t, p in enumerate(parts):
        _check_partition(t, p, q)
    if parts[0] != tuple((v,) for v in range(1, q + 1)):
        raise SchemeError(0, "the first partition must be all singletons")
    if parts[-1] != (tuple(range(1, q + 1)),):
        raise SchemeError(len(parts) - 1, "the last partition must be the single block")
    for t in range(len(parts) - 1):
        cur, nxt = parts[t], parts[t + 1]
        owner = {v: i for i, block in enumerate(nxt) for v in block}
        for block in cur:
            if len({owner[v] for v in block}) != 1:
                raise SchemeError(t + 1, f"non-coarsening step: block {block} is split")
        if len(nxt) >= len(cur):
            raise SchemeError(t + 1, "non-strict step: the number of blocks must drop")


def r_star_trajectory(scheme: CollapsingScheme, z: float) -> list[int | None]:
    """Per interior time t = 1..T-1, the size of the smallest class in the
    first-order region (None when no class qualifies)."""
    validate_scheme(scheme)
    return [governing_size(block_sizes(p), z) for p in scheme.partitions[1:-1]]


def is_regular(scheme: CollapsingScheme, z: float) -> bool:
    """True when the governing-size trajectory is monotone nondecreasing and the
    scheme has no immediate collapse (T >= 2).  Missing entries (no governing
    class) rank below every size, so they may only form a prefix."""
    if scheme.horizon < 2:
        return False
    traj = [(-1 if r is None else r) for r in r_star_trajectory(scheme, z)]
    return all(a <= b for a, b in zip(traj, traj[1:]))


def gibbs_trajectory(beta: float, scheme: CollapsingScheme, z: float) -> Trajectory:
    """Gibbs status per time: non-Gibbs at interior t iff the governing class
    exists and beta >= its internal critical inverse temperature."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    traj = r_star_trajectory(scheme, z)
    interior = [
        Status.NON_GIBBS if (r is not None and beta >= internal_beta_c(r, z)) else Status.GIBBS
        for r in traj
    ]
    statuses = (Status.TRIVIAL_ENDPOINT, *interior, Status.TRIVIAL_ENDPOINT)
    switches = tuple(
        t for t in range(2, len(statuses) - 1) if statuses[t] != statuses[t - 1]
    )
    t_gibbs = None
    if is_regular(scheme, z) and interior and interior[0] is Status.NON_GIBBS:
        for t, st in enumerate(interior, start=1):
            if st is Status.GIBBS:
                t_gibbs = t
                break
    return Trajectory(statuses, tuple(traj), switches, t_gibbs)


def load_scheme(source) -> tuple[CollapsingScheme, float]:
    """Read a scheme from JSON: {"q": int, "z": real, "partitions": [[[int, ...], ...], ...]}.

    `source` may be a path, a JSON string, or an already-parsed dict.
    Returns the scheme together with the interaction exponent z.
    """
    if isinstance(source, dict):
        obj = source
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        obj = json.loads(text)
    unknown = set(obj) - {"q", "z", "partitions"}
    if unknown:
        raise SchemeError(0, f"unknown keys in scheme file: {sorted(unknown)}")
    for key in ("q", "z", "partitions"):
        if key not in obj:
            raise SchemeError(0, f"scheme file is missing key {key!r}")
    scheme = make_scheme(obj["q"], obj["partitions"])
    z = float(obj["z"])
    if z < 2:
        raise SchemeError(0, f"z must be >= 2, got {z}")
    validate_scheme(scheme)
    return scheme, z
