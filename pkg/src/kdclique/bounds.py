"""Upper bounds on the largest k-defective clique extending a partial solution.

Two families of bounds are provided for a search state (S, C):

* `vertex_extension_bound` / `pair_extension_bound` treat the candidate set
  as if it were a clique, so only missing edges between candidates and S are
  charged.  They are cheap and drive the degree-based reduction rules.

* `color_bound` also charges missing edges *among* the candidates.  The
  candidates are split by deficiency (number of non-neighbors in S), each
  deficiency class is greedily colored into independent sets, and the color
  count caps how many vertices the class can contribute before internal
  missing edges start accruing.  Picking t vertices from r independent sets
  forces a staircase-shaped minimum of internal missing edges
  (`staircase_increment`); peeling color-count-sized chunks off each class
  converts that staircase into per-vertex costs, collected in `CostBuckets`
  and spent greedily against the remaining missing-edge budget.

The coloring-based bound is never larger than the clique-view bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph

# When True, every coloring is re-checked for properness (enabled in tests).
VALIDATE_COLORINGS = False

# Bitmask coloring beats the neighbor-scan version only while rows are short.
_MASK_COLOR_LIMIT = 4096


def staircase_increment(r: int, t: int) -> int:
    """Minimum missing edges among any t vertices drawn from r independent sets.

    Spreading the t picks as evenly as possible over the r sets is optimal:
    with d = t // r and c = t % r, c sets contribute d+1 picks and the rest
    contribute d, so the minimum is c*C(d+1,2) + (r-c)*C(d,2).
    """
    if r < 1:
        raise ValueError("need at least one independent set")
    if t < 0:
        raise ValueError("t must be non-negative")
    d, c = divmod(t, r)
    return c * (d * (d + 1) // 2) + (r - c) * (d * (d - 1) // 2)


@dataclass
class DeficiencyPartition:
    """Candidates grouped by deficiency i = |S| - |N(v) ∩ S|, for 0 ≤ i ≤ k."""

    classes: list[list[int]]
    dropped: list[int]
    color_counts: list[int] | None = None


@dataclass
class CostBuckets:
    """Candidates bucketed by incremental missing-edge cost.

    counts[l] is the number of candidates whose inclusion, taken in bucket
    order, costs at least l missing edges each; members are retained only
    when tracing is requested.
    """

    counts: list[int]
    members: list[list[int]] | None = None

    @property
    def total(self) -> int:
        return sum(self.counts)


def _check_state(g: Graph, s: Sequence[int], k: int) -> int:
    missing = g.missing_edges(s)
    if missing > k:
        raise ValueError(f"partial solution has {missing} missing edges, budget is {k}")
    return missing


def partition_by_deficiency(
    g: Graph, s: Iterable[int], c: Iterable[int], k: int
) -> DeficiencyPartition:
    """Split candidates by deficiency; anything beyond k goes to `dropped`."""
    s_list = sorted(set(s))
    c_list = sorted(set(c))
    if set(s_list) & set(c_list):
        raise ValueError("candidate set overlaps the partial solution")
    _check_state(g, s_list, k)

    classes: list[list[int]] = [[] for _ in range(k + 1)]
    dropped: list[int] = []
    size = len(s_list)
    if g.dense:
        smask = 0
        for v in s_list:
            smask |= 1 << v
        for v in c_list:
            d = size - (g.neighbors_mask(v) & smask).bit_count()
            (classes[d] if d <= k else dropped).append(v)
    else:
        s_set = set(s_list)
        for v in c_list:
            d = size - len(g.neighbors(v) & s_set)
            (classes[d] if d <= k else dropped).append(v)
    return DeficiencyPartition(classes, dropped)


# -- greedy coloring ----------------------------------------------------


def greedy_color(g: Graph, vertices: Iterable[int]) -> tuple[int, list[list[int]]]:
    """Partition the given vertices into independent sets of g.

    Vertices are colored in order of non-increasing degree inside the induced
    subgraph (ties by ascending id), each receiving the smallest color not
    used by an already-colored neighbor.
    """
    member = set(vertices)
    order = sorted(member, key=lambda v: (-len(g.neighbors(v) & member), v))
    color_of: dict[int, int] = {}
    classes: list[list[int]] = []
    for v in order:
        used = {color_of[u] for u in g.neighbors(v) if u in color_of}
        color = 0
        while color in used:
            color += 1
        color_of[v] = color
        if color == len(classes):
            classes.append([v])
        else:
            classes[color].append(v)
    if VALIDATE_COLORINGS:
        for cls in classes:
            for i, u in enumerate(cls):
                for w in cls[i + 1 :]:
                    assert not g.adjacent(u, w), f"adjacent {u},{w} share a color"
    return len(classes), classes


def color_count_dense(bits: list[int], class_mask: int, stop_above: int | None = None) -> int:
    """Number of greedy color classes for the vertices in `class_mask`.

    Operates directly on adjacency bitmask rows; same ordering and color
    choice as `greedy_color`.  With `stop_above` set, coloring aborts as
    soon as the class count exceeds it (the true count is at least the
    returned value); callers use this when any larger count decides the
    comparison they care about.
    """
    size = class_mask.bit_count()
    if size <= 2:
        if size < 2:
            return size
        v = class_mask.bit_length() - 1
        return 2 if bits[v] & class_mask else 1
    # pack (descending degree-in-class, ascending id) into plain ints to sort
    ranked = []
    m = class_mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        ranked.append(((size - (bits[v] & class_mask).bit_count()) << 20) | v)
    ranked.sort()
    color_masks: list[int] = []
    for packed in ranked:
        v = packed & 0xFFFFF
        row = bits[v]
        for i, cm in enumerate(color_masks):
            if not row & cm:
                color_masks[i] = cm | (1 << v)
                break
        else:
            color_masks.append(1 << v)
            if stop_above is not None and len(color_masks) > stop_above:
                return len(color_masks)
    if VALIDATE_COLORINGS:
        for cm in color_masks:
            mm = cm
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                mm ^= low
                assert not (bits[v] & cm & ~low), "adjacent vertices share a color"
    return len(color_masks)


def _color_count_sets(g: Graph, vertices: Sequence[int], stop_above: int | None = None) -> int:
    member = set(vertices)
    order = sorted(member, key=lambda v: (-len(g.neighbors(v) & member), v))
    color_of: dict[int, int] = {}
    highest = 0
    for v in order:
        used = {color_of[u] for u in g.neighbors(v) if u in color_of}
        color = 0
        while color in used:
            color += 1
        color_of[v] = color
        highest = max(highest, color + 1)
        if stop_above is not None and highest > stop_above:
            return highest
        if VALIDATE_COLORINGS:
            assert all(color_of.get(u) != color for u in g.neighbors(v) if u != v)
    return highest


def _class_color_count(g: Graph, vertices: Sequence[int], stop_above: int | None = None) -> int:
    if g.dense and g.n <= _MASK_COLOR_LIMIT:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return color_count_dense(g.bit_rows, mask, stop_above)
    return _color_count_sets(g, vertices, stop_above)


# -- cost buckets and the coloring bound ---------------------------------


def chunk_into_buckets(
    counts: list[int], deficiency: int, class_size: int, color_count: int, k: int
) -> None:
    """Peel color-count-sized chunks of one class into the cost buckets.

    The j-th chunk of a deficiency-i class costs i + j - 1 per vertex; chunks
    whose cost would exceed k are discarded.  A final partial chunk still
    lands in the next bucket if its cost allows.
    """
    remaining = class_size
    j = 1
    while remaining >= color_count and j - 1 + deficiency <= k:
        counts[j - 1 + deficiency] += color_count
        remaining -= color_count
        j += 1
    if remaining and j - 1 + deficiency <= k:
        counts[j - 1 + deficiency] += remaining


def cost_buckets(
    g: Graph,
    k: int,
    s: Iterable[int],
    c: Iterable[int],
    *,
    keep_members: bool = False,
) -> CostBuckets:
    """Bucket the candidates by their minimum incremental missing-edge cost."""
    part = partition_by_deficiency(g, s, c, k)
    counts = [0] * (k + 1)
    members: list[list[int]] | None = [[] for _ in range(k + 1)] if keep_members else None
    color_counts = []
    for i, cls in enumerate(part.classes):
        if not cls:
            color_counts.append(0)
            continue
        r = _class_color_count(g, cls)
        color_counts.append(r)
        chunk_into_buckets(counts, i, len(cls), r, k)
        if members is not None:
            pos = 0
            j = 1
            remaining = len(cls)
            while remaining >= r and j - 1 + i <= k:
                members[j - 1 + i].extend(cls[pos : pos + r])
                pos += r
                remaining -= r
                j += 1
            if remaining and j - 1 + i <= k:
                members[j - 1 + i].extend(cls[pos:])
    part.color_counts = color_counts
    return CostBuckets(counts, members)


def spend_budget(counts: Sequence[int], kappa: int, base: int) -> int:
    """Greedy budget spend over the buckets, mirroring the bound definition.

    Bucket 0 is free; bucket i is taken whole while i*|bucket| fits in the
    remaining budget, otherwise floor(budget / i) vertices are taken and the
    spend stops.
    """
    ub = base + counts[0]
    for i in range(1, len(counts)):
        cost = i * counts[i]
        if cost <= kappa:
            ub += counts[i]
            kappa -= cost
        else:
            ub += kappa // i
            break
    return ub


def minimum_added_missing_edges(counts: Sequence[int], t: int) -> int:
    """Minimum missing-edge cost of taking t vertices in bucket order."""
    total = 0
    taken = 0
    for cost, size in enumerate(counts):
        take = min(size, t - taken)
        total += cost * take
        taken += take
        if taken == t:
            return total
    raise ValueError(f"only {taken} bucketed vertices, cannot take {t}")


def _class_masks(g: Graph, s_list: list[int], c_mask: int, k: int) -> list[tuple[int, int]]:
    """Deficiency class masks (i, mask) for dense graphs; classes > k dropped."""
    bits = g.bit_rows
    size = len(s_list)
    if size == 0:
        raw = [(0, c_mask)]
    elif size == 1:
        a = bits[s_list[0]]
        raw = [(0, c_mask & a), (1, c_mask & ~a)]
    elif size == 2:
        a, b = bits[s_list[0]], bits[s_list[1]]
        raw = [(0, c_mask & a & b), (1, c_mask & (a ^ b)), (2, c_mask & ~a & ~b)]
    else:
        masks = [0] * (size + 1)
        smask = 0
        for v in s_list:
            smask |= 1 << v
        m = c_mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            masks[size - (bits[v] & smask).bit_count()] |= low
        raw = list(enumerate(masks))
    return [(i, mask) for i, mask in raw if mask and i <= k]


def color_bound(g: Graph, k: int, s: Iterable[int], c: Iterable[int] | None = None) -> int:
    """Coloring-based upper bound on the largest k-defective clique W with
    S ⊆ W ⊆ S ∪ C.  With c=None the candidate set is every other active vertex.
    """
    s_list = sorted(set(s))
    missing = _check_state(g, s_list, k)
    kappa = k - missing

    if g.dense and g.n <= _MASK_COLOR_LIMIT:
        smask = 0
        for v in s_list:
            smask |= 1 << v
        if c is None:
            c_mask = g.active_mask & ~smask
        else:
            c_mask = 0
            for v in c:
                if not g.is_active(v):
                    raise ValueError(f"candidate {v} is not active")
                c_mask |= 1 << v
            if c_mask & smask:
                raise ValueError("candidate set overlaps the partial solution")
        bits = g.bit_rows
        counts = [0] * (k + 1)
        for i, mask in _class_masks(g, s_list, c_mask, k):
            r = color_count_dense(bits, mask)
            chunk_into_buckets(counts, i, mask.bit_count(), r, k)
        return spend_budget(counts, kappa, len(s_list))

    c_iter = (set(g.active_vertices()) - set(s_list)) if c is None else c
    buckets = cost_buckets(g, k, s_list, c_iter)
    return spend_budget(buckets.counts, kappa, len(s_list))


# -- clique-view extension bounds ----------------------------------------


def vertex_extension_bound(g: Graph, k: int, s: Iterable[int], v: int) -> int:
    """Upper bound on the largest k-defective clique containing S ∪ {v},
    charging only missing edges incident to S ∪ {v}."""
    s_list = sorted(set(s))
    if v in s_list:
        raise ValueError(f"vertex {v} already in the partial solution")
    rem = k - g.missing_edges(s_list + [v])
    if rem < 0:
        return len(s_list) + 1
    s_set = set(s_list)
    neighbors_in_c = len(g.neighbors(v) - s_set)
    c_size = g.active_count - len(s_list) - 1
    res = min(rem, c_size - neighbors_in_c)
    return len(s_list) + 1 + neighbors_in_c + res


def pair_extension_bound(g: Graph, k: int, s: Iterable[int], u: int, v: int) -> int:
    """Upper bound on the largest k-defective clique containing S ∪ {u, v}."""
    if u == v:
        raise ValueError("pair bound needs two distinct vertices")
    s_list = sorted(set(s))
    if u in s_list or v in s_list:
        raise ValueError("pair endpoint already in the partial solution")
    rem = k - g.missing_edges(s_list + [u, v])
    if rem < 0:
        return len(s_list) + 2
    s_set = set(s_list)
    common = len(g.common_neighbors(u, v) - s_set)
    c_size = g.active_count - len(s_list) - 2
    res = min(rem, c_size - common)
    return len(s_list) + 2 + common + res
