"""Brute-force reference for maximum k-defective cliques on small graphs.

Two independent strategies cross-check each other: a recursive
include/exclude search that only prunes on infeasibility, and a flat
bitmask sweep over every subset.  Neither imports any of the solver's
bound machinery; being slow and obviously correct is the point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph

SIZE_LIMIT = 24
SWEEP_LIMIT = 20


class OracleLimitError(RuntimeError):
    """Raised when a graph is too large for exhaustive verification."""


@dataclass
class OracleResult:
    size: int
    witness: tuple[int, ...]
    nodes_enumerated: int


def _prepare(g: Graph, required: Iterable[int], allowed: Iterable[int] | None):
    active = set(g.active_vertices())
    req = set(required)
    allow = active if allowed is None else set(allowed)
    if not req <= allow:
        raise ValueError("required set must be contained in allowed set")
    if not allow <= active:
        raise ValueError("allowed set contains inactive vertices")
    return req, allow


def brute_force(
    g: Graph,
    k: int,
    required: Iterable[int] = (),
    allowed: Iterable[int] | None = None,
) -> OracleResult:
    """Maximum-cardinality W with required ⊆ W ⊆ allowed and ≤ k missing edges.

    Recursive include/exclude enumeration.  The only cut is the trivial one:
    a partial set that already has more than k missing edges is abandoned,
    which is safe because missing edges never decrease when vertices are
    added.  If `required` itself is infeasible, size 0 is reported.
    """
    if g.active_count > SIZE_LIMIT:
        raise OracleLimitError(
            f"{g.active_count} active vertices exceed the oracle limit of {SIZE_LIMIT}"
        )
    req, allow = _prepare(g, required, allowed)
    base_missing = g.missing_edges(req)
    nodes = 0
    if base_missing > k:
        return OracleResult(0, (), 1)

    order = sorted(allow - req)
    chosen = sorted(req)
    best_size = len(chosen)
    best = tuple(chosen)
    adj = [g.neighbors(v) if g.is_active(v) else set() for v in range(g.n)]

    def visit(i: int, missing: int) -> None:
        nonlocal nodes, best_size, best
        nodes += 1
        if len(chosen) > best_size:
            best_size = len(chosen)
            best = tuple(chosen)
        if i == len(order):
            return
        v = order[i]
        added = sum(1 for u in chosen if u not in adj[v])
        if missing + added <= k:
            chosen.append(v)
            visit(i + 1, missing + added)
            chosen.pop()
        visit(i + 1, missing)

    visit(0, base_missing)
    return OracleResult(best_size, best, nodes)


def bitmask_reference(
    g: Graph,
    k: int,
    required: Iterable[int] = (),
    allowed: Iterable[int] | None = None,
) -> OracleResult:
    """Same answer as `brute_force`, computed by sweeping all subsets."""
    req, allow = _prepare(g, required, allowed)
    verts = sorted(allow)
    m = len(verts)
    if m > SWEEP_LIMIT:
        raise OracleLimitError(f"{m} allowed vertices exceed the sweep limit of {SWEEP_LIMIT}")
    index = {v: i for i, v in enumerate(verts)}
    # local adjacency restricted to `allow`, as bit rows over 0..m-1
    adj = [0] * m
    for i, v in enumerate(verts):
        for u in g.neighbors(v):
            j = index.get(u)
            if j is not None:
                adj[i] |= 1 << j
    req_mask = 0
    for v in req:
        req_mask |= 1 << index[v]

    best_size = -1
    best_mask = 0
    for mask in range(1 << m):
        if mask & req_mask != req_mask:
            continue
        size = mask.bit_count()
        if size <= best_size:
            continue
        missing = 0
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            missing += (rest & ~adj[i]).bit_count()
        if missing <= k:
            best_size = size
            best_mask = mask
    if best_size < 0:
        return OracleResult(0, (), 1 << m)
    witness = tuple(verts[i] for i in range(m) if best_mask >> i & 1)
    return OracleResult(best_size, witness, 1 << m)
