"""Benchmark instance constructions.

`johnson_graph` rebuilds the classic fixed-weight binary-code graphs from
their definition (vertices are weight-w words, edges join words at Hamming
distance ≥ d), so e.g. word_length=8, weight=4, distance=4 reproduces the
familiar 70-vertex, 1855-edge instance exactly.  The random and
planted-clique builders produce seeded stand-ins with prescribed vertex and
edge counts for benchmarks whose original files are not redistributable.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph


def johnson_graph(word_length: int, weight: int, distance: int) -> Graph:
    """Fixed-weight code graph: weight-`weight` words of `word_length` bits,
    adjacent iff their Hamming distance is at least `distance`."""
    words = list(combinations(range(word_length), weight))
    n = len(words)
    sets = [frozenset(w) for w in words]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            # equal-weight words: distance = 2 * (weight - |intersection|)
            if 2 * (weight - len(sets[i] & sets[j])) >= distance:
                edges.append((i, j))
    return Graph(n, edges)


def random_graph(n: int, density: float, seed: int, **kwargs) -> Graph:
    """Erdős–Rényi-style graph: each pair is an edge with probability `density`."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph(n, edges, **kwargs)


def random_graph_exact_edges(n: int, m: int, seed: int) -> Graph:
    """Uniform random graph with exactly m edges."""
    pairs = list(combinations(range(n), 2))
    if m > len(pairs):
        raise ValueError(f"cannot place {m} edges on {n} vertices")
    rng = random.Random(seed)
    return Graph(n, rng.sample(pairs, m))


def planted_clique_graph(n: int, m: int, clique_size: int, seed: int) -> Graph:
    """Random graph with exactly m edges containing a planted clique."""
    if clique_size > n:
        raise ValueError("clique larger than the graph")
    rng = random.Random(seed)
    members = rng.sample(range(n), clique_size)
    clique_edges = set(combinations(sorted(members), 2))
    if m < len(clique_edges):
        raise ValueError(f"{m} edges cannot hold a {clique_size}-clique")
    rest = [p for p in combinations(range(n), 2) if p not in clique_edges]
    extra = rng.sample(rest, m - len(clique_edges))
    return Graph(n, sorted(clique_edges) + extra)
