"""Instance parsing and serialization.

Three on-disk formats are supported, matching the usual clique benchmark
sources: the DIMACS clique format (`p edge n m` header, 1-indexed `e u v`
lines), plain whitespace edge lists with `#`/`%` comments, and MatrixMarket
coordinate files read as symmetric patterns.  All inputs become undirected
simple graphs; duplicate edges and self-loops are dropped.  Vertex labels
are remapped to dense 0-based ids and the mapping is kept so results can be
reported in the input's own labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph

FORMATS = ("auto", "dimacs-clique", "edge-list", "matrix-market")
_FORMAT_ALIASES = {"dimacs": "dimacs-clique"}


class ParseError(ValueError):
    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


@dataclass
class InstanceSpec:
    path: str
    format: str = "auto"
    label: str = ""

    def __post_init__(self):
        self.format = _FORMAT_ALIASES.get(self.format, self.format)
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if not self.label:
            self.label = Path(self.path).stem


@dataclass
class Instance:
    """A parsed graph plus the label mapping back to the input file."""

    graph: Graph
    label: str
    labels: list[str] = field(default_factory=list)

    def original_labels(self, vertices) -> list[str]:
        return [self.labels[v] for v in vertices]


def detect_format(path) -> str:
    """Resolve 'auto' to a concrete format by peeking at the file."""
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        first = fh.readline()
        if first.startswith("%%MatrixMarket"):
            return "matrix-market"
        line = first
        while line:
            stripped = line.strip()
            if stripped and stripped[0] not in "c#%":
                if stripped.startswith("p "):
                    return "dimacs-clique"
                return "edge-list"
            line = fh.readline()
    return "edge-list"


def parse_instance(spec: InstanceSpec | str, fmt: str = "auto", **graph_kwargs) -> Instance:
    """Parse a file into an Instance; `spec` may be a path or an InstanceSpec."""
    if not isinstance(spec, InstanceSpec):
        spec = InstanceSpec(str(spec), fmt)
    path = spec.path
    resolved = spec.format if spec.format != "auto" else detect_format(path)
    if resolved == "dimacs-clique":
        n, edges, labels = _read_dimacs(path)
    elif resolved == "matrix-market":
        n, edges, labels = _read_matrix_market(path)
    else:
        n, edges, labels = _read_edge_list(path)
    graph = Graph(n, edges, **graph_kwargs)
    return Instance(graph, spec.label, labels)


def _read_dimacs(path):
    n = None
    edges = []
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise ParseError(path, line_no, "duplicate problem header")
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise ParseError(path, line_no, f"malformed header {line!r}")
                try:
                    n = int(parts[2])
                    int(parts[3])
                except ValueError:
                    raise ParseError(path, line_no, f"malformed header {line!r}") from None
                if n < 0:
                    raise ParseError(path, line_no, "negative vertex count")
            elif parts[0] == "e":
                if n is None:
                    raise ParseError(path, line_no, "edge before problem header")
                if len(parts) < 3:
                    raise ParseError(path, line_no, f"malformed edge line {line!r}")
                try:
                    u, v = int(parts[1]), int(parts[2])
                except ValueError:
                    raise ParseError(path, line_no, f"malformed edge line {line!r}") from None
                if not (1 <= u <= n and 1 <= v <= n):
                    raise ParseError(path, line_no, f"vertex id out of range in {line!r}")
                edges.append((u - 1, v - 1))
            # other line types (n, d, x ...) are ignored
    if n is None:
        raise ParseError(path, 1, "no problem header found")
    return n, edges, [str(i + 1) for i in range(n)]


def _read_edge_list(path):
    ids: dict[str, int] = {}
    labels: list[str] = []
    edges = []
    saw_data = False
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "#%":
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ParseError(path, line_no, f"expected two endpoints, got {line!r}")
            saw_data = True
            pair = []
            for token in parts[:2]:
                if token not in ids:
                    ids[token] = len(labels)
                    labels.append(token)
                pair.append(ids[token])
            edges.append((pair[0], pair[1]))
    if not saw_data:
        raise ParseError(path, 1, "empty edge list")
    return len(labels), edges, labels


def _read_matrix_market(path):
    n = None
    edges = []
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        first = fh.readline()
        if not first.startswith("%%MatrixMarket"):
            raise ParseError(path, 1, "missing MatrixMarket banner")
        header = first.split()
        if len(header) < 3 or header[1] != "matrix" or header[2] != "coordinate":
            raise ParseError(path, 1, f"unsupported MatrixMarket header {first.strip()!r}")
        for line_no, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 3:
                    raise ParseError(path, line_no, f"malformed size line {line!r}")
                try:
                    rows, cols, _ = (int(p) for p in parts)
                except ValueError:
                    raise ParseError(path, line_no, f"malformed size line {line!r}") from None
                if rows != cols:
                    raise ParseError(path, line_no, "matrix is not square; cannot read as a graph")
                n = rows
            else:
                try:
                    u, v = int(parts[0]), int(parts[1])
                except (ValueError, IndexError):
                    raise ParseError(path, line_no, f"malformed entry {line!r}") from None
                if not (1 <= u <= n and 1 <= v <= n):
                    raise ParseError(path, line_no, f"index out of range in {line!r}")
                edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError(path, 1, "missing size line")
    return n, edges, [str(i + 1) for i in range(n)]


def write_dimacs(g: Graph, path) -> None:
    """Serialize the active part of g in DIMACS clique format (1-indexed)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p edge {g.n} {g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"e {u + 1} {v + 1}\n")
