"""Reading and writing distance matrices and graphs.

Matrices: labeled CSV/TSV (first row and column hold labels), PHYLIP square
or lower-triangular, and JSON {"labels": [...], "matrix": [[...]]}.  Graphs:
JSON {"vertices": [{"id", "label"}], "edges": [{"u", "v", "weight"}]} and a
DOT export that paints labeled vertices black and unlabeled ones white.
Exact values are written as fraction strings ("5", "3/2") unless decimal
output is requested.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

from .errors import CactusMetricsError, MetricAxiomError
from .graph import WeightedGraph, make_graph
from .metric import SYNTHETIC_PREFIX, FiniteMetric, validate_metric
from .values import EXACT, Comparator, format_value


class FormatError(CactusMetricsError):
    """Input file is not in any supported matrix/graph format."""


# ---------------------------------------------------------------------------
# distance matrices


def detect_matrix_format(text: str, path: str = "") -> str:
    lower = path.lower()
    for ext, fmt in ((".json", "json"), (".csv", "csv"), (".tsv", "tsv"),
                     (".phy", "phylip"), (".phylip", "phylip"),
                     (".dist", "phylip")):
        if lower.endswith(ext):
            return fmt
    body = text.lstrip()
    if body.startswith("{"):
        return "json"
    first = body.splitlines()[0] if body else ""
    if first.strip().isdigit():
        return "phylip"
    return "tsv" if "\t" in first else "csv"


def parse_matrix(text: str, fmt: Optional[str] = None, path: str = "",
                 cmp: Comparator = EXACT) -> FiniteMetric:
    fmt = fmt or detect_matrix_format(text, path)
    if fmt == "json":
        obj = json.loads(text)
        try:
            labels = obj["labels"]
            matrix = obj["matrix"]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"matrix JSON needs labels and matrix: {exc}")
        return validate_metric(matrix, labels, cmp)
    if fmt in ("csv", "tsv"):
        delim = "\t" if fmt == "tsv" else ","
        rows = [r for r in csv.reader(io.StringIO(text), delimiter=delim)
                if any(cell.strip() for cell in r)]
        if len(rows) < 2:
            raise FormatError("matrix file too short")
        labels = [c.strip() for c in rows[0][1:]]
        matrix = []
        for row in rows[1:]:
            if row[0].strip() != labels[len(matrix)]:
                raise FormatError(
                    f"row label {row[0].strip()!r} does not match column "
                    f"label {labels[len(matrix)]!r}")
            matrix.append([c.strip() for c in row[1:]])
        return validate_metric(matrix, labels, cmp)
    if fmt == "phylip":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        try:
            n = int(lines[0].split()[0])
        except (ValueError, IndexError):
            raise FormatError("PHYLIP file must start with the point count")
        if len(lines) != n + 1:
            raise FormatError(f"expected {n} matrix rows")
        labels = []
        raw_rows = []
        for ln in lines[1:]:
            parts = ln.split()
            labels.append(parts[0])
            raw_rows.append(parts[1:])
        lens = [len(r) for r in raw_rows]
        if lens == [n] * n:
            matrix = raw_rows
        elif lens == list(range(n)):  # strict lower triangle
            matrix = [[None] * n for _ in range(n)]
            for i in range(n):
                matrix[i][i] = "0"
                for j, v in enumerate(raw_rows[i]):
                    matrix[i][j] = v
                    matrix[j][i] = v
        elif lens == list(range(1, n + 1)):  # lower triangle with diagonal
            matrix = [[None] * n for _ in range(n)]
            for i in range(n):
                for j, v in enumerate(raw_rows[i]):
                    matrix[i][j] = v
                    matrix[j][i] = v
        else:
            raise FormatError("rows are neither square nor lower-triangular")
        return validate_metric(matrix, labels, cmp)
    raise FormatError(f"unknown matrix format {fmt!r}")


def load_metric(path: str, fmt: Optional[str] = None,
                cmp: Comparator = EXACT) -> FiniteMetric:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read(), fmt, path, cmp)


def format_matrix(m: FiniteMetric, fmt: str = "csv", decimal: bool = False,
                  digits: int = 12) -> str:
    def fv(v):
        return format_value(v, decimal, digits)

    if fmt == "json":
        obj = {"labels": list(m.labels),
               "matrix": [[fv(v) for v in row] for row in m.rows]}
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if fmt in ("csv", "tsv"):
        delim = "\t" if fmt == "tsv" else ","
        out = [delim.join([""] + list(m.labels))]
        for lab, row in zip(m.labels, m.rows):
            out.append(delim.join([lab] + [fv(v) for v in row]))
        return "\n".join(out) + "\n"
    if fmt == "phylip":
        out = [str(m.n)]
        for lab, row in zip(m.labels, m.rows):
            out.append(" ".join([lab] + [fv(v) for v in row]))
        return "\n".join(out) + "\n"
    raise FormatError(f"unknown matrix format {fmt!r}")


# ---------------------------------------------------------------------------
# graphs


def graph_to_obj(g: WeightedGraph, decimal: bool = False,
                 digits: int = 12) -> dict:
    labels = g.label_map()
    return {
        "vertices": [{"id": v, "label": labels.get(v)} for v in g.vertices],
        "edges": [{"u": u, "v": v,
                   "weight": format_value(w, decimal, digits)}
                  for u, v, w in g.edges],
    }


def graph_from_obj(obj: dict, cmp: Comparator = EXACT,
                   allow_synthetic: bool = False) -> WeightedGraph:
    try:
        vertices = [(v["id"], v.get("label")) for v in obj["vertices"]]
        edges = [(e["u"], e["v"], e["weight"]) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"graph JSON needs vertices and edges: {exc}")
    for _, lab in vertices:
        if lab is not None and str(lab).startswith(SYNTHETIC_PREFIX) \
                and not allow_synthetic:
            raise MetricAxiomError("reserved_label_prefix", (lab,))
    return make_graph(vertices, edges, exact=cmp.exact)


def dump_graph_json(g: WeightedGraph, decimal: bool = False,
                    digits: int = 12) -> str:
    return json.dumps(graph_to_obj(g, decimal, digits),
                      indent=2, sort_keys=True) + "\n"


def load_graph(path: str, cmp: Comparator = EXACT) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_obj(json.load(fh), cmp)


def graph_to_dot(g: WeightedGraph, decimal: bool = False,
                 digits: int = 12) -> str:
    """DOT rendering: labeled vertices are filled black circles showing
    their label, unlabeled vertices are small white circles; edges carry
    their weight as label."""
    labels = g.label_map()
    lines = ["graph realization {", "  node [shape=circle];"]
    for v in g.vertices:
        lab = labels.get(v)
        if lab is not None:
            lines.append(
                f'  n{v} [label="{lab}", style=filled, fillcolor=black, '
                f"fontcolor=white];")
        else:
            lines.append(
                f'  n{v} [label="", style=filled, fillcolor=white, '
                f"width=0.15, fixedsize=true];")
    for u, v, w in g.edges:
        lines.append(f'  n{u} -- n{v} [label="{format_value(w, decimal, digits)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
