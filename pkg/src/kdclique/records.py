"""Run records and their CSV / JSON / table emission."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

from .search import SolveResult, SolverConfig

EMIT_FORMATS = ("csv", "json", "table")


@dataclass
class RunRecord:
    """One solver run on one (instance, k, config) triple."""

    instance: str
    vertices: int
    edges: int
    k: int
    reduced_vertices: int
    reduced_edges: int
    best_size: int
    status: str
    tree_nodes: int
    preprocess_time: float
    total_time: float
    config: str

    TIMING_FIELDS = ("preprocess_time", "total_time")

    @classmethod
    def from_result(
        cls, label: str, vertices: int, edges: int, k: int,
        result: SolveResult, config: SolverConfig,
    ) -> "RunRecord":
        # times are reported with millisecond resolution
        return cls(
            instance=label,
            vertices=vertices,
            edges=edges,
            k=k,
            reduced_vertices=result.reduced_v,
            reduced_edges=result.reduced_e,
            best_size=result.best_size,
            status=result.status,
            tree_nodes=result.tree_nodes,
            preprocess_time=round(result.preprocess_time, 3),
            total_time=round(result.total_time, 3),
            config=config.fingerprint(),
        )


def field_names() -> list[str]:
    return [f.name for f in fields(RunRecord)]


def emit_records(records: list[RunRecord], fmt: str) -> str:
    """Render records as UTF-8 text in the requested format.

    CSV keeps the RunRecord field order with a header row; JSON is an array
    of flat objects with the same keys; table is aligned for humans.
    """
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=field_names(), lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow(asdict(rec))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([asdict(rec) for rec in records], indent=2) + "\n"
    if fmt == "table":
        names = field_names()
        rows = [[_cell(getattr(rec, name)) for name in names] for rec in records]
        widths = [max(len(name), *(len(row[i]) for row in rows)) if rows else len(name)
                  for i, name in enumerate(names)]
        lines = ["  ".join(name.ljust(widths[i]) for i, name in enumerate(names))]
        for row in rows:
            lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(names))))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown emission format {fmt!r}; expected one of {EMIT_FORMATS}")


def parse_csv(text: str) -> list[dict]:
    """Read emitted CSV back into dicts with native numeric types."""
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for row in reader:
        rec = dict(row)
        for name in ("vertices", "edges", "k", "reduced_vertices", "reduced_edges",
                     "best_size", "tree_nodes"):
            rec[name] = int(rec[name])
        for name in RunRecord.TIMING_FIELDS:
            rec[name] = float(rec[name])
        out.append(rec)
    return out


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)
