import random

import pytest

from kdclique import bounds
from kdclique.generators import random_graph
from kdclique.graph import Graph


@pytest.fixture(scope="session", autouse=True)
def _validate_colorings():
    # every coloring computed during the test run is re-checked for properness
    bounds.VALIDATE_COLORINGS = True
    yield
    bounds.VALIDATE_COLORINGS = False


# Worked-example fixture: 7 vertices, v0 adjacent to v1..v5 but not v6,
# {v1..v5} complete except the pairs (v1,v4) and (v3,v5), v6 adjacent to
# v1..v5.  With k=1 and S={v0} this walks every stage of the bound.
FIGURE_EDGES = (
    [(0, i) for i in range(1, 6)]
    + [(a, b) for a in range(1, 6) for b in range(a + 1, 6) if (a, b) not in ((1, 4), (3, 5))]
    + [(6, i) for i in range(1, 6)]
)


@pytest.fixture
def figure_graph():
    return Graph(7, FIGURE_EDGES)


def corpus_graph(index: int, mode: str = "auto") -> tuple[Graph, int]:
    """Deterministic random (graph, k) pair number `index` for corpus tests."""
    rng = random.Random(31_000 + index)
    n = rng.randint(6, 18)
    density = rng.choice((0.3, 0.5, 0.8))
    k = rng.choice((0, 1, 2, 3, 5))
    return random_graph(n, density, seed=77_000 + index, mode=mode), k


def is_defective_clique(g: Graph, vertices, k: int) -> bool:
    vs = list(vertices)
    pairs = len(vs) * (len(vs) - 1) // 2
    inside = sum(1 for i, u in enumerate(vs) for v in vs[i + 1 :] if g.adjacent(u, v))
    return pairs - inside <= k


def grow_random_feasible(g: Graph, k: int, rng: random.Random, max_size: int = 4) -> list[int]:
    """A small random feasible partial solution, for sampling search states."""
    active = g.active_vertices()
    if not active:
        return []
    s: list[int] = []
    for v in rng.sample(active, len(active)):
        if len(s) >= max_size:
            break
        if g.missing_edges(s + [v]) <= k:
            s.append(v)
    return sorted(s)
