"""Undirected simple graph with journaled deletion and exact rollback.

The solver removes vertices and edges while searching and must restore the
graph when backtracking, so every mutation is recorded in a journal and
`rollback` undoes entries in reverse order.  Deletion is logical: removed
vertices keep their own (frozen) adjacency, but disappear from every other
vertex's neighborhood, so neighborhood queries never see deleted elements.

Two adjacency representations are kept in sync:

* per-vertex neighbor sets (always present; O(1) adjacency tests), and
* per-vertex bitmask rows (dense mode only; one Python int per vertex),
  which the bound computations use for batched set arithmetic.

Dense mode is chosen when the graph is small enough and dense enough for
bitmask rows to pay off; both modes answer every query identically.
"""

from __future__ import annotations

from typing import Iterable, Iterator

DENSITY_THRESHOLD = 0.05
DENSE_VERTEX_LIMIT = 50_000


class Graph:
    """Mutable undirected simple graph over vertex ids 0..n-1."""

    __slots__ = (
        "n",
        "dense",
        "edge_count",
        "_sets",
        "_bits",
        "_active",
        "_active_mask",
        "_journal",
    )

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        density_threshold: float = DENSITY_THRESHOLD,
        dense_vertex_limit: int = DENSE_VERTEX_LIMIT,
        mode: str = "auto",
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        pairs = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            pairs.add((u, v) if u < v else (v, u))

        self.n = n
        self.edge_count = len(pairs)
        self._sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in pairs:
            self._sets[u].add(v)
            self._sets[v].add(u)

        if mode == "auto":
            self.dense = n <= dense_vertex_limit and self.density() >= density_threshold
        elif mode in ("dense", "sparse"):
            self.dense = mode == "dense"
        else:
            raise ValueError(f"unknown mode {mode!r}")

        self._active: set[int] = set(range(n))
        self._active_mask = (1 << n) - 1
        self._bits: list[int] | None = None
        if self.dense:
            bits = [0] * n
            for u, v in pairs:
                bits[u] |= 1 << v
                bits[v] |= 1 << u
            self._bits = bits
        self._journal: list[tuple] = []

    # -- queries ---------------------------------------------------------

    @property
    def active_count(self) -> int:
        return len(self._active)

    @property
    def active_mask(self) -> int:
        """Bitmask of active vertices (dense mode only)."""
        return self._active_mask

    def is_active(self, v: int) -> bool:
        return v in self._active

    @property
    def neighbor_sets(self) -> list[set[int]]:
        """Raw per-vertex neighbor sets (hot paths read these directly)."""
        return self._sets

    @property
    def bit_rows(self) -> list[int]:
        """Raw adjacency bitmask rows (dense mode only)."""
        return self._bits

    def active_vertices(self) -> list[int]:
        return sorted(self._active)

    def neighbors(self, v: int) -> set[int]:
        """Live neighbor set of an active vertex; callers must not mutate it."""
        self._require_active(v)
        return self._sets[v]

    def neighbors_mask(self, v: int) -> int:
        self._require_active(v)
        return self._bits[v]  # type: ignore[index]

    def degree(self, v: int) -> int:
        self._require_active(v)
        return len(self._sets[v])

    def adjacent(self, u: int, v: int) -> bool:
        self._require_active(u)
        self._require_active(v)
        return v in self._sets[u]

    def common_neighbors(self, u: int, v: int) -> set[int]:
        if u == v:
            raise ValueError("common_neighbors needs two distinct vertices")
        self._require_active(u)
        self._require_active(v)
        a, b = self._sets[u], self._sets[v]
        if len(a) > len(b):
            a, b = b, a
        return {w for w in a if w in b}

    def missing_edges(self, vertices: Iterable[int]) -> int:
        """Number of non-adjacent pairs inside the given active vertex set."""
        vs = list(vertices)
        for v in vs:
            self._require_active(v)
        m = len(vs)
        if m < 2:
            return 0
        if self.dense:
            mask = 0
            for v in vs:
                mask |= 1 << v
            inside = sum((self._bits[v] & mask).bit_count() for v in vs) // 2
        else:
            vset = set(vs)
            inside = sum(len(self._sets[v] & vset) for v in vs) // 2
        return m * (m - 1) // 2 - inside

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * self.edge_count / (self.n * (self.n - 1))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Active edges as (u, v) pairs with u < v, ascending."""
        for u in sorted(self._active):
            for v in sorted(self._sets[u]):
                if u < v:
                    yield (u, v)

    def snapshot(self) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        """Structural fingerprint (active vertices, active edges) for comparisons."""
        return frozenset(self._active), frozenset(self.edges())

    # -- mutation --------------------------------------------------------

    def remove_vertex(self, v: int) -> None:
        self._require_active(v)
        nbrs = tuple(sorted(self._sets[v]))
        for u in nbrs:
            self._sets[u].discard(v)
        if self.dense:
            clear = ~(1 << v)
            bits = self._bits
            for u in nbrs:
                bits[u] &= clear
            self._active_mask &= clear
        self.edge_count -= len(nbrs)
        self._active.discard(v)
        # v's own row is left frozen; it is exact again once v is restored.
        self._journal.append(("v", v, nbrs))

    def remove_edge(self, u: int, v: int) -> None:
        self._require_active(u)
        self._require_active(v)
        if v not in self._sets[u]:
            raise ValueError(f"edge ({u}, {v}) not present")
        self._sets[u].discard(v)
        self._sets[v].discard(u)
        if self.dense:
            self._bits[u] &= ~(1 << v)
            self._bits[v] &= ~(1 << u)
        self.edge_count -= 1
        self._journal.append(("e", u, v))

    def checkpoint(self) -> int:
        return len(self._journal)

    def rollback(self, mark: int) -> None:
        """Undo all mutations after `mark`, restoring the exact prior state."""
        journal = self._journal
        if not 0 <= mark <= len(journal):
            raise ValueError(f"invalid checkpoint {mark}")
        while len(journal) > mark:
            entry = journal.pop()
            if entry[0] == "e":
                _, u, v = entry
                self._sets[u].add(v)
                self._sets[v].add(u)
                if self.dense:
                    self._bits[u] |= 1 << v
                    self._bits[v] |= 1 << u
                self.edge_count += 1
            else:
                _, v, nbrs = entry
                bit = 1 << v
                for u in nbrs:
                    self._sets[u].add(v)
                if self.dense:
                    bits = self._bits
                    for u in nbrs:
                        bits[u] |= bit
                    self._active_mask |= bit
                self._active.add(v)
                self.edge_count += len(nbrs)

    # -- internals -------------------------------------------------------

    def _require_active(self, v: int) -> None:
        if v not in self._active:
            raise ValueError(f"vertex {v} is not active")

    def validate(self) -> None:
        """Self-check of all structural invariants (test use)."""
        deg_sum = 0
        for v in self._active:
            for u in self._sets[v]:
                assert u in self._active, f"inactive {u} in N({v})"
                assert v in self._sets[u], f"asymmetric edge ({v}, {u})"
                assert u != v, f"self-loop at {v}"
            deg_sum += len(self._sets[v])
            if self.dense:
                assert self._bits[v] == sum(1 << u for u in self._sets[v])
        assert deg_sum == 2 * self.edge_count
        if self.dense:
            assert self._active_mask == sum(1 << v for v in self._active)


def build_graph(n: int, edges: Iterable[tuple[int, int]], **kwargs) -> Graph:
    """Build a graph from raw input pairs, dropping duplicates and self-loops."""
    return Graph(n, edges, **kwargs)
