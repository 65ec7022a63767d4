"""Branch-and-bound search for a maximum k-defective clique.

The driver (`solve`) seeds a lower bound with a greedy heuristic, shrinks
the graph with the preprocessing rules, and then runs a binary-branching
recursion: pick a minimum-degree candidate, explore "take it" before
"delete it", prune whenever the configured upper bound cannot beat the
incumbent.

The recursion never mutates the input graph.  On dense graphs the engine
works on a private copy of the bitmask rows: deleting a vertex clears one
bit of an `alive` mask and deleting an edge saves-and-clears two rows, so
backtracking restores a node's state in O(changes).  On sparse graphs the
engine applies the same deletions through the graph's mutation journal and
rolls them back, with identical semantics.  Either way the input graph is
bit-exact when `solve` returns and the witness is verified against it.
"""

from __future__ import annotations

import heapq
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import bounds
from .graph import Graph
from .reduction import preprocess

_FASTLB_SEEDS = 16
_TRACE_CAP = 100_000


@dataclass
class SolverConfig:
    """Solver knobs; the two `club_*` flags select where the coloring bound runs."""

    k: int = 1
    time_limit: float = 1800.0
    seed: int = 0
    club_in_preprocess: bool = True
    club_in_bnb: bool = True
    density_threshold: float = 0.05
    trace: bool = False
    # Off by default: per-node reduction tests feasibility only.
    node_bound_reduction: bool = False
    club_edge_budget: int | None = None

    def fingerprint(self) -> str:
        return (
            f"pre={'club' if self.club_in_preprocess else 'base'}"
            f",bnb={'club' if self.club_in_bnb else 'base'}"
            f",seed={self.seed}"
        )


@dataclass
class SolveResult:
    best_size: int
    witness: list[int]
    status: str  # "optimal" | "timeout"
    tree_nodes: int
    preprocess_time: float
    total_time: float
    reduced_v: int
    reduced_e: int
    # (node, |S|, |C|, bound, expanded) tuples when tracing was requested
    trace: list[tuple[int, int, int, int, bool]] | None = None


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices in peeling order (repeatedly remove a minimum-degree vertex)."""
    deg = {v: g.degree(v) for v in g.active_vertices()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    gone: set[int] = set()
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if v in gone or d != deg[v]:
            continue
        gone.add(v)
        order.append(v)
        for u in g.neighbors(v):
            if u not in gone:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def _grow_from(g: Graph, k: int, seed: int) -> list[int]:
    """Greedily extend {seed}: always add the candidate with maximum degree
    inside the shrinking candidate subgraph, while feasibility holds."""
    s = [seed]
    miss_in = 0
    cand: set[int] = set()
    miss: dict[int, int] = {}
    seed_nbrs = g.neighbors(seed)
    for v in g.active_vertices():
        if v == seed:
            continue
        m = 0 if v in seed_nbrs else 1
        if m <= k:
            cand.add(v)
            miss[v] = m
    deg_c = {v: len(g.neighbors(v) & cand) for v in cand}

    while cand:
        x = min(cand, key=lambda v: (-deg_c[v], v))
        cand.discard(x)
        for u in g.neighbors(x):
            if u in cand:
                deg_c[u] -= 1
        s.append(x)
        miss_in += miss[x]
        x_nbrs = g.neighbors(x)
        infeasible = []
        for v in cand:
            if v not in x_nbrs:
                miss[v] += 1
            if miss_in + miss[v] > k:
                infeasible.append(v)
        for v in infeasible:
            cand.discard(v)
            for u in g.neighbors(v):
                if u in cand:
                    deg_c[u] -= 1
    return s


def greedy_lower_bound(
    g: Graph, k: int, *, seeds: int = _FASTLB_SEEDS, deadline: float | None = None
) -> tuple[int, list[int]]:
    """Feasible k-defective clique found greedily; (0, []) on an empty graph.

    Growth is attempted from the highest-core vertices of a degeneracy
    ordering and the best result is kept.
    """
    if g.active_count == 0:
        return 0, []
    order = degeneracy_order(g)
    best: list[int] = []
    for seed in reversed(order[-seeds:]):
        if deadline is not None and time.monotonic() >= deadline:
            break
        grown = _grow_from(g, k, seed)
        if len(grown) > len(best):
            best = grown
    if not best:
        best = [order[-1]]
    return len(best), sorted(best)


def node_reduction(
    g: Graph,
    k: int,
    s: Iterable[int],
    last: int | None = None,
    lb: int = 0,
    *,
    bound_based: bool = False,
) -> int:
    """Delete candidates (and candidate edges) that cannot feasibly join s.

    After this, every surviving candidate u has missing(s ∪ {u}) ≤ k and every
    surviving candidate edge (u, w) has missing(s ∪ {u, w}) ≤ k.  Deletions
    are journaled on g.  Returns the number of deletions.
    """
    s_list = sorted(set(s))
    kappa = k - g.missing_edges(s_list)
    if kappa < 0:
        raise ValueError("partial solution is infeasible")
    s_set = set(s_list)
    size = len(s_list)
    removed = 0

    miss: dict[int, int] = {}
    for v in g.active_vertices():
        if v in s_set:
            continue
        miss[v] = size - len(g.neighbors(v) & s_set)
        if miss[v] > kappa:
            g.remove_vertex(v)
            removed += 1
    survivors = [v for v in miss if g.is_active(v)]

    if bound_based and lb:
        for v in survivors:
            if bounds.vertex_extension_bound(g, k, s_list, v) <= lb:
                g.remove_vertex(v)
                removed += 1
        survivors = [v for v in survivors if g.is_active(v)]

    for v in survivors:
        limit = kappa - miss[v]
        doomed = [w for w in g.neighbors(v) if w > v and w in miss and miss[w] > limit]
        for w in doomed:
            g.remove_edge(v, w)
            removed += 1
    return removed


class _Engine:
    """Recursive branch-and-bound over one graph; owns all search state."""

    def __init__(
        self,
        g: Graph,
        k: int,
        lb: int,
        witness: Sequence[int],
        config: SolverConfig,
        deadline: float | None,
    ):
        self.g = g
        self.k = k
        self.best = lb
        self.witness = list(witness)
        self.config = config
        self.deadline = deadline
        self.nodes = 0
        self.timed_out = False
        self.s_list: list[int] = []
        self.s_mask = 0
        self.s_set: set[int] = set()
        self.miss_in_s = 0
        self.scratch_miss = [0] * max(g.n, 1)
        self.dense = g.dense
        if self.dense:
            # private copy-on-write view: rows mutate, `alive` is one int
            self.rows = list(g.bit_rows)
            self.alive = g.active_mask
            self.row_undo: list[tuple[int, int]] = []
        # Branching ties go to the lowest rank; seed 0 keeps vertex-id order.
        self.rank = list(range(g.n))
        if config.seed:
            perm = list(range(g.n))
            random.Random(config.seed).shuffle(perm)
            for r, v in enumerate(perm):
                self.rank[v] = r
        self.prune_hook: Callable[[tuple[int, ...], tuple[int, ...], int], None] | None = None
        self.trace: list[tuple[int, int, int, int, bool]] | None = [] if config.trace else None

    # -- state plumbing ----------------------------------------------

    def seed_solution(self, s: Iterable[int]) -> None:
        for v in sorted(set(s)):
            if not self.g.is_active(v):
                raise ValueError(f"vertex {v} is not active")
            self.s_list.append(v)
            self.s_mask |= 1 << v
            self.s_set.add(v)
        self.miss_in_s = self.g.missing_edges(self.s_list)
        if self.miss_in_s > self.k:
            raise ValueError("starting solution is infeasible")

    def _save(self):
        if self.dense:
            return self.alive, len(self.row_undo)
        return self.g.checkpoint()

    def _restore(self, token) -> None:
        if self.dense:
            self.alive, depth = token
            undo = self.row_undo
            rows = self.rows
            while len(undo) > depth:
                v, old = undo.pop()
                rows[v] = old
        else:
            self.g.rollback(token)

    def _kill_vertex(self, v: int) -> None:
        if self.dense:
            self.alive &= ~(1 << v)
        else:
            self.g.remove_vertex(v)

    def _kill_edge(self, u: int, w: int) -> None:
        if self.dense:
            rows = self.rows
            self.row_undo.append((u, rows[u]))
            self.row_undo.append((w, rows[w]))
            rows[u] &= ~(1 << w)
            rows[w] &= ~(1 << u)
        else:
            self.g.remove_edge(u, w)

    def _active_count(self) -> int:
        return self.alive.bit_count() if self.dense else self.g.active_count

    def current_subgraph(self) -> Graph:
        """Materialize the engine's current view as a fresh Graph (test use)."""
        g = self.g
        if not self.dense:
            sub = Graph(g.n, g.edges())
            for v in range(g.n):
                if not g.is_active(v) and sub.is_active(v):
                    sub.remove_vertex(v)
            return sub
        edges = []
        m = self.alive
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            row = self.rows[v] & self.alive & ~((1 << (v + 1)) - 1)
            while row:
                lo = row & -row
                row ^= lo
                edges.append((v, lo.bit_length() - 1))
        sub = Graph(g.n, edges, mode="dense")
        dead = ~self.alive
        for v in range(g.n):
            if dead >> v & 1:
                sub.remove_vertex(v)
        return sub

    # -- per-node work -------------------------------------------------

    def _collect(self) -> list[int]:
        """Candidates in ascending id; fills scratch_miss with their deficiency.
        Used once at the root; descendants thread candidate lists down and
        maintain the deficiencies incrementally."""
        g = self.g
        miss = self.scratch_miss
        size = len(self.s_list)
        cand = []
        if self.dense:
            rows = self.rows
            smask = self.s_mask
            m = self.alive & ~smask
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                cand.append(v)
                miss[v] = size - (rows[v] & smask).bit_count()
        else:
            s_set = self.s_set
            for v in g.active_vertices():
                if v in s_set:
                    continue
                cand.append(v)
                miss[v] = size - len(g.neighbor_sets[v] & s_set)
        return cand

    def _bump_miss(self, u: int, cand: list[int]) -> list[int]:
        """Record the deficiency increase caused by adding u to S: every
        candidate not adjacent to u gains one missing edge."""
        miss = self.scratch_miss
        bumped = []
        if self.dense:
            row = self.rows[u]
            for v in cand:
                if not row >> v & 1:
                    miss[v] += 1
                    bumped.append(v)
        else:
            nbrs = self.g.neighbor_sets[u]
            for v in cand:
                if v not in nbrs:
                    miss[v] += 1
                    bumped.append(v)
        return bumped

    def _unbump_miss(self, bumped: list[int]) -> None:
        miss = self.scratch_miss
        for v in bumped:
            miss[v] -= 1

    def _reduce(self, cand: list[int]) -> list[int]:
        """Feasibility reduction: drop candidates and candidate edges that
        cannot join S within the missing-edge budget."""
        miss = self.scratch_miss
        kappa = self.k - self.miss_in_s
        survivors = []
        for v in cand:
            if miss[v] > kappa:
                self._kill_vertex(v)
            else:
                survivors.append(v)

        if self.config.node_bound_reduction and self.best:
            kept = []
            for v in survivors:
                if self._extension_bound(v) <= self.best:
                    self._kill_vertex(v)
                else:
                    kept.append(v)
            survivors = kept

        if self.dense:
            rows = self.rows
            undo = self.row_undo
            level = [0] * (kappa + 1)
            for v in survivors:
                level[miss[v]] |= 1 << v
            suffix = [0] * (kappa + 2)
            for j in range(kappa, -1, -1):
                suffix[j] = suffix[j + 1] | level[j]
            for v in survivors:
                bad = rows[v] & suffix[kappa - miss[v] + 1] & ~((1 << (v + 1)) - 1)
                if bad:
                    undo.append((v, rows[v]))
                    rows[v] &= ~bad
                    back = ~(1 << v)
                    while bad:
                        low = bad & -bad
                        bad ^= low
                        w = low.bit_length() - 1
                        undo.append((w, rows[w]))
                        rows[w] &= back
        else:
            g = self.g
            member = set(survivors)
            for v in survivors:
                limit = kappa - miss[v]
                doomed = [w for w in g.neighbor_sets[v] if w > v and w in member and miss[w] > limit]
                for w in doomed:
                    self._kill_edge(v, w)
        return survivors

    def _extension_bound(self, v: int) -> int:
        """Clique-view bound on solutions containing S ∪ {v}, on the engine view."""
        k = self.k
        s_size = len(self.s_list)
        rem = k - self.miss_in_s - self.scratch_miss[v]
        if rem < 0:
            return s_size + 1
        if self.dense:
            nbrs = (self.rows[v] & self.alive & ~self.s_mask).bit_count()
            c_size = self._active_count() - s_size - 1
        else:
            nbrs = len(self.g.neighbors(v) - self.s_set)
            c_size = self.g.active_count - s_size - 1
        return s_size + 1 + nbrs + min(rem, c_size - nbrs)

    def _bound(self, cand: list[int]) -> int:
        """Upper bound for the current node, spent against the budget.

        The exact coloring value is only needed on the prune side of the
        `ub > best` comparison, so two shortcuts keep the answer identical
        while skipping work: if even the clique-view bound (color count :=
        class size) cannot beat the incumbent, prune without coloring; and
        once partially-accumulated buckets already beat the incumbent,
        branch without coloring the remaining classes (bucket counts only
        grow, and the budget spend is monotone in them).
        """
        k = self.k
        s_size = len(self.s_list)
        kappa = k - self.miss_in_s
        miss = self.scratch_miss
        use_color = self.config.club_in_bnb

        if self.dense:
            class_masks = [0] * (k + 1)
            for v in cand:
                class_masks[miss[v]] |= 1 << v
            sizes = [m.bit_count() for m in class_masks]
        else:
            classes: list[list[int]] = [[] for _ in range(k + 1)]
            for v in cand:
                classes[miss[v]].append(v)
            sizes = [len(c) for c in classes]

        cheap = [0] * (k + 1)
        for i, size in enumerate(sizes):
            if size:
                bounds.chunk_into_buckets(cheap, i, size, size, k)
        cheap_ub = bounds.spend_budget(cheap, kappa, s_size)
        if not use_color or cheap_ub <= self.best:
            return cheap_ub

        counts = [0] * (k + 1)
        for i in range(k + 1):
            size = sizes[i]
            if not size:
                continue
            if i == 0:
                # bucket 0 receives exactly one color-count-sized chunk, so
                # a color count beyond best - |S| already forces a branch
                stop = self.best - s_size
                if self.dense:
                    r = bounds.color_count_dense(self.rows, class_masks[0], stop)
                else:
                    r = bounds._class_color_count(self.g, classes[0], stop)
                if r > stop:
                    return self.best + 1
            elif self.dense:
                r = bounds.color_count_dense(self.rows, class_masks[i])
            else:
                r = bounds._class_color_count(self.g, classes[i])
            bounds.chunk_into_buckets(counts, i, size, r, k)
            partial = bounds.spend_budget(counts, kappa, s_size)
            if partial > self.best:
                return partial
        return bounds.spend_budget(counts, kappa, s_size)

    def _pick_branch_vertex(self, cand: list[int]) -> int:
        rank = self.rank
        if self.dense:
            rows = self.rows
            alive = self.alive
            return min(cand, key=lambda v: ((rows[v] & alive).bit_count(), rank[v]))
        sets = self.g.neighbor_sets
        return min(cand, key=lambda v: (len(sets[v]), rank[v]))

    # -- recursion -------------------------------------------------------

    def run(self, reduce_root: bool = False) -> int:
        limit = 4 * self.g.n + 1000
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)
        self._node(self._collect(), reduce_root)
        return self.best

    def _node(self, cand: list[int], just_added: bool) -> None:
        self.nodes += 1
        if self.deadline is not None and time.monotonic() >= self.deadline:
            self.timed_out = True
            return
        if len(self.s_list) > self.best:
            self.best = len(self.s_list)
            self.witness = list(self.s_list)

        token = self._save()
        if just_added:
            cand = self._reduce(cand)
        if self._active_count() <= self.best or not cand:
            self._restore(token)
            return

        ub = self._bound(cand)
        if self.trace is not None and len(self.trace) < _TRACE_CAP:
            self.trace.append((self.nodes, len(self.s_list), len(cand), ub, ub > self.best))
        if ub > self.best:
            u = self._pick_branch_vertex(cand)
            rest = [v for v in cand if v != u]
            miss_u = self.scratch_miss[u]
            self.s_list.append(u)
            self.s_mask |= 1 << u
            self.s_set.add(u)
            self.miss_in_s += miss_u
            bumped = self._bump_miss(u, rest)
            self._node(rest, True)
            self._unbump_miss(bumped)
            self.miss_in_s -= miss_u
            self.s_list.pop()
            self.s_mask &= ~(1 << u)
            self.s_set.discard(u)
            if not self.timed_out:
                inner = self._save()
                self._kill_vertex(u)
                self._node(rest, False)
                self._restore(inner)
        elif self.prune_hook is not None:
            self.prune_hook(tuple(self.s_list), tuple(cand), self.best)
        self._restore(token)


def branch_and_bound(
    g: Graph,
    k: int,
    s: Iterable[int] = (),
    lb: int = 0,
    config: SolverConfig | None = None,
    deadline: float | None = None,
) -> int:
    """Best size of a k-defective clique extending s in the current graph
    (at least lb).  The graph is unchanged on return."""
    config = config or SolverConfig()
    engine = _Engine(g, k, lb, [], config, deadline)
    start = sorted(set(s))
    engine.seed_solution(start)
    mark = g.checkpoint()
    try:
        return engine.run(reduce_root=bool(start))
    finally:
        g.rollback(mark)


def solve(g: Graph, k: int | None = None, config: SolverConfig | None = None) -> SolveResult:
    """Find a maximum k-defective clique of g.

    Runs the greedy lower bound, preprocessing, and the branch-and-bound
    recursion under one time limit.  On timeout the best feasible solution
    found so far is reported with status "timeout".  The input graph is left
    exactly as it was, and the witness is verified against it.
    """
    config = config or SolverConfig()
    if k is None:
        k = config.k
    if k < 0:
        raise ValueError("k must be non-negative")
    t0 = time.monotonic()
    deadline = t0 + config.time_limit
    mark = g.checkpoint()

    lb, witness = greedy_lower_bound(g, k, deadline=deadline)
    timed_out = time.monotonic() >= deadline

    pre_start = time.monotonic()
    if not timed_out:
        _, stats = preprocess(
            g, k, lb,
            use_club=config.club_in_preprocess,
            club_edge_budget=config.club_edge_budget,
            deadline=deadline,
        )
        timed_out = stats.timed_out
    preprocess_time = time.monotonic() - pre_start
    reduced_v, reduced_e = g.active_count, g.edge_count

    engine = _Engine(g, k, lb, witness, config, deadline)
    if not timed_out:
        engine.run()
    g.rollback(mark)

    final_witness = sorted(engine.witness)
    if final_witness and g.missing_edges(final_witness) > k:
        raise RuntimeError("internal error: reported witness is infeasible")
    return SolveResult(
        best_size=engine.best,
        witness=final_witness,
        status="timeout" if (timed_out or engine.timed_out) else "optimal",
        tree_nodes=engine.nodes,
        preprocess_time=round(preprocess_time, 6),
        total_time=round(time.monotonic() - t0, 6),
        reduced_v=reduced_v,
        reduced_e=reduced_e,
        trace=engine.trace,
    )
