"""Preprocessing: delete vertices and edges that cannot beat the incumbent.

A vertex (or edge) is deleted when an upper bound on the best solution
containing it is at most the known lower bound.  Cheap clique-view bounds
run first; the coloring bound is consulted only for elements the cheap
bounds could not delete.  Work queues re-check the neighborhood of every
deletion, and full sweeps repeat until nothing changes, so the result is a
fixed point: no rule application can delete anything more.

Every deletion preserves all k-defective cliques strictly larger than the
lower bound, so the reduced graph is equivalent for the search that follows.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from . import bounds
from .graph import Graph

_TIME_CHECK_STRIDE = 256


@dataclass
class ReductionStats:
    """Book-keeping for one preprocessing run."""

    vertices_removed_ext: int = 0
    vertices_removed_color: int = 0
    edges_removed_ext: int = 0
    edges_removed_color: int = 0
    passes: int = 0
    elapsed: float = 0.0
    timed_out: bool = False

    @property
    def vertices_removed(self) -> int:
        return self.vertices_removed_ext + self.vertices_removed_color

    @property
    def edges_removed(self) -> int:
        return self.edges_removed_ext + self.edges_removed_color


def _expired(deadline: float | None) -> bool:
    return deadline is not None and time.monotonic() >= deadline


def check_vertices(
    g: Graph,
    k: int,
    lb: int,
    use_club: bool = False,
    stats: ReductionStats | None = None,
    deadline: float | None = None,
) -> int:
    """Queue-driven vertex deletion sweep; returns the number removed.

    Each vertex is first tested with the clique-view extension bound; if that
    does not delete it and `use_club` is set, the coloring bound over the rest
    of the graph is tried.  Deleting a vertex re-enqueues its neighbors.
    """
    queue = deque(g.active_vertices())
    queued = set(queue)
    removed = 0
    ticks = 0
    while queue:
        ticks += 1
        if ticks % _TIME_CHECK_STRIDE == 0 and _expired(deadline):
            if stats:
                stats.timed_out = True
            break
        v = queue.popleft()
        queued.discard(v)
        if not g.is_active(v):
            continue
        by_color = False
        fires = bounds.vertex_extension_bound(g, k, (), v) <= lb
        if not fires and use_club:
            fires = bounds.color_bound(g, k, (v,)) <= lb
            by_color = fires
        if not fires:
            continue
        neighborhood = list(g.neighbors(v))
        g.remove_vertex(v)
        removed += 1
        if stats:
            if by_color:
                stats.vertices_removed_color += 1
            else:
                stats.vertices_removed_ext += 1
        for u in neighborhood:
            if u not in queued:
                queue.append(u)
                queued.add(u)
    return removed


def check_edges(
    g: Graph,
    k: int,
    lb: int,
    use_club: bool = False,
    stats: ReductionStats | None = None,
    club_budget: int | None = None,
    deadline: float | None = None,
) -> int:
    """Queue-driven edge deletion sweep; returns the number removed.

    `club_budget` caps the number of coloring-bound evaluations per sweep
    (the pair rule is the expensive one); past the cap the sweep degrades to
    the clique-view test only, which stays safe.
    """
    queue = deque(g.edges())
    queued = set(queue)
    removed = 0
    evals = 0
    ticks = 0
    while queue:
        ticks += 1
        if ticks % _TIME_CHECK_STRIDE == 0 and _expired(deadline):
            if stats:
                stats.timed_out = True
            break
        u, v = queue.popleft()
        queued.discard((u, v))
        if not (g.is_active(u) and g.is_active(v) and g.adjacent(u, v)):
            continue
        by_color = False
        fires = bounds.pair_extension_bound(g, k, (), u, v) <= lb
        if not fires and use_club and (club_budget is None or evals < club_budget):
            evals += 1
            fires = bounds.color_bound(g, k, (u, v)) <= lb
            by_color = fires
        if not fires:
            continue
        g.remove_edge(u, v)
        removed += 1
        if stats:
            if by_color:
                stats.edges_removed_color += 1
            else:
                stats.edges_removed_ext += 1
        for x in (u, v):
            for w in g.neighbors(x):
                e = (x, w) if x < w else (w, x)
                if e not in queued:
                    queue.append(e)
                    queued.add(e)
    return removed


def preprocess(
    g: Graph,
    k: int,
    lb: int,
    *,
    use_club: bool = True,
    club_edge_budget: int | None = None,
    deadline: float | None = None,
) -> tuple[Graph, ReductionStats]:
    """Reduce g in place until no deletion rule applies; lb is read-only.

    Sweep order: cheap vertex rule, coloring vertex rule, cheap edge rule,
    then alternating vertex/edge sweeps (each retrying the cheap rule before
    the coloring rule on every element) until a full pass removes nothing.
    """
    stats = ReductionStats()
    t0 = time.monotonic()
    check_vertices(g, k, lb, use_club=False, stats=stats, deadline=deadline)
    if use_club and not stats.timed_out:
        check_vertices(g, k, lb, use_club=True, stats=stats, deadline=deadline)
    if not stats.timed_out:
        check_edges(g, k, lb, use_club=False, stats=stats, deadline=deadline)
    while not stats.timed_out:
        stats.passes += 1
        removed = check_vertices(g, k, lb, use_club=use_club, stats=stats, deadline=deadline)
        removed += check_edges(
            g, k, lb, use_club=use_club, stats=stats,
            club_budget=club_edge_budget, deadline=deadline,
        )
        if removed == 0:
            break
    stats.elapsed = time.monotonic() - t0
    return g, stats
