"""File formats: problem files, graph JSON, profile CSV, DOT, reports.

All real numbers are written as strings: "p/q" for exact values and
17 significant digits otherwise, so every artifact reads back losslessly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .assembly.graph import Edge, ExtremalVertex, GluingGraph, Saddle
from .football import FootballProfile, FootballSpec, curvature_extremes, geodesic_length
from .numbers import format_number, parse_number, pi_label
from .report import Tolerances, VerificationReport

GRAPH_FORMAT = "hcmu-graph/1"
REPORT_FORMAT = "hcmu-report/1"
PROFILE_HEADER = ["u", "K", "f"]
DEFAULT_SAMPLES = 257


class ArtifactError(ValueError):
    """A file is missing, unparsable or violates its schema."""

    def __init__(self, path, message, line=None, column=None, field=None):
        self.path, self.line, self.column, self.field = path, line, column, field
        where = str(path)
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        if field:
            where += f" [{field}]"
        super().__init__(f"{where}: {message}")


@dataclass
class ProblemFile:
    euler_char: int
    angles: list
    saddles: list
    base_area: float = 4.0 * math.pi
    samples: int = DEFAULT_SAMPLES
    tolerances: dict = field(default_factory=dict)


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ArtifactError(path, f"cannot read: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArtifactError(path, exc.msg, line=exc.lineno, column=exc.colno) from None


def _field(path, doc, key, convert, where=None, default=...):
    where = where or key
    if key not in doc:
        if default is ...:
            raise ArtifactError(path, "required field missing", field=where)
        return default
    try:
        return convert(doc[key])
    except (TypeError, ValueError) as exc:
        raise ArtifactError(path, str(exc), field=where) from None


def _int(value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"expected an integer, got {value!r}")
    return value


def _bool(value):
    if not isinstance(value, bool):
        raise ValueError(f"expected true or false, got {value!r}")
    return value


def _positive_float(value):
    out = float(parse_number(value))
    if not out > 0:
        raise ValueError(f"must be positive, got {value!r}")
    return out


def read_problem(path) -> ProblemFile:
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise ArtifactError(path, "top level must be an object")
    chi = _field(path, doc, "euler_char", _int)
    raw = _field(path, doc, "angles", lambda v: v if isinstance(v, list) else _bad_list(v))
    angles, saddles = [], []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ArtifactError(path, "each angle must be an object", field=f"angles[{i}]")
        angles.append(_field(path, entry, "value", parse_number, f"angles[{i}].value"))
        if _field(path, entry, "saddle", _bool, f"angles[{i}].saddle", default=False):
            saddles.append(i)
    base = _field(path, doc, "base_area", _positive_float, default=4.0 * math.pi)
    samples = _field(path, doc, "samples", _int, default=DEFAULT_SAMPLES)
    if samples < 5:
        raise ArtifactError(path, "need at least 5 samples", field="samples")
    tols = _field(path, doc, "tolerances",
                  lambda v: v if isinstance(v, dict) else _bad_map(v), default={})
    try:
        Tolerances().updated(tols)
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactError(path, str(exc), field="tolerances") from None
    return ProblemFile(chi, angles, saddles, base, samples, tols)


def _bad_list(v):
    raise ValueError(f"expected a list, got {type(v).__name__}")


def _bad_map(v):
    raise ValueError(f"expected an object, got {type(v).__name__}")


def _num(x):
    return format_number(x)


def _opt(i):
    return None if i is None else int(i)


def graph_to_dict(graph: GluingGraph):
    return {
        "format": GRAPH_FORMAT,
        "euler_char": graph.euler_char,
        "prescribed_angles": [_num(a) for a in graph.prescribed_angles],
        "note": graph.note,
        "footballs": [
            {"id": k, "alpha": _num(s.alpha), "beta": _num(s.beta), "area": _num(s.area),
             "meridians": [_num(t) for t in graph.meridians[k]]}
            for k, s in enumerate(graph.footballs)
        ],
        "saddles": [
            {"id": i, "angle": _num(s.angle), "end": s.end, "height": _num(s.height),
             "incident": [list(p) for p in s.incident], "prescribed": s.prescribed}
            for i, s in enumerate(graph.saddles)
        ],
        "max_vertices": [_vertex_dict(v) for v in graph.max_vertices],
        "min_vertices": [_vertex_dict(v) for v in graph.min_vertices],
        "edges": [
            {"a": list(e.a), "b": list(e.b), "segment": [_num(t) for t in e.segment]}
            for e in graph.edges
        ],
    }


def _vertex_dict(v):
    return {"angle": _num(v.angle), "footballs": list(v.footballs), "prescribed": v.prescribed}


def graph_from_dict(doc, path="<graph>"):
    if not isinstance(doc, dict):
        raise ArtifactError(path, "graph must be an object")
    try:
        footballs, meridians = [], []
        for k, fb in enumerate(doc["footballs"]):
            where = f"footballs[{k}]"
            spec = FootballSpec(
                _field(path, fb, "alpha", parse_number, where + ".alpha"),
                _field(path, fb, "beta", parse_number, where + ".beta"),
                _field(path, fb, "area", _positive_float, where + ".area"),
            )
            if spec.flipped:
                raise ArtifactError(path, "alpha must be the larger angle", field=where)
            footballs.append(spec)
            meridians.append([parse_number(t) for t in fb.get("meridians", [])])
        saddles = [
            Saddle(parse_number(s["angle"]), tuple((int(a), int(b)) for a, b in s["incident"]),
                   s.get("end", "min"), Fraction(parse_number(s.get("height", "1/2"))),
                   _opt(s.get("prescribed")))
            for s in doc.get("saddles", [])
        ]
        for i, s in enumerate(saddles):
            if s.end not in ("min", "max"):
                raise ArtifactError(path, "end must be 'min' or 'max'", field=f"saddles[{i}].end")
        vert = lambda kind, v: ExtremalVertex(kind, parse_number(v["angle"]),
                                               tuple(int(k) for k in v["footballs"]),
                                               _opt(v.get("prescribed")))
        edges = [Edge(tuple(int(t) for t in e["a"]), tuple(int(t) for t in e["b"]),
                      tuple(Fraction(parse_number(t)) for t in e["segment"]))
                 for e in doc.get("edges", [])]
        return GluingGraph(
            footballs=footballs,
            meridians=meridians,
            saddles=saddles,
            max_vertices=[vert("max", v) for v in doc.get("max_vertices", [])],
            min_vertices=[vert("min", v) for v in doc.get("min_vertices", [])],
            edges=edges,
            euler_char=int(doc.get("euler_char", 2)),
            prescribed_angles=tuple(parse_number(a) for a in doc.get("prescribed_angles", [])),
            note=doc.get("note", ""),
        )
    except ArtifactError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ArtifactError(path, f"malformed graph: {exc!r}") from None


def read_graph(path):
    return graph_from_dict(load_json(path), path)


def write_json(path, doc):
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n")


def write_profile(path, profile: FootballProfile):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_HEADER)
        for row in zip(profile.u, profile.k, profile.f):
            w.writerow([format(float(v), ".17g") for v in row])


def read_profile(path, spec: FootballSpec) -> FootballProfile:
    """Rebuild a profile from its table.

    Extremes and meridian length are recomputed from ``spec`` rather than
    taken from the table, so an edited last row is caught by the checks.
    """
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ArtifactError(path, f"cannot read: {exc.strerror or exc}") from None
    if not rows or [c.strip() for c in rows[0]] != PROFILE_HEADER:
        raise ArtifactError(path, f"header must be {','.join(PROFILE_HEADER)}", line=1)
    data = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ArtifactError(path, f"expected 3 columns, got {len(row)}", line=line)
        try:
            vals = [float(c) for c in row]
        except ValueError as exc:
            raise ArtifactError(path, str(exc), line=line) from None
        if not all(math.isfinite(v) for v in vals):
            raise ArtifactError(path, "non-finite value", line=line)
        data.append(vals)
    if len(data) < 3:
        raise ArtifactError(path, "need at least 3 samples")
    arr = np.asarray(data)
    ext = curvature_extremes(spec)
    return FootballProfile(spec, ext, geodesic_length(ext), arr[:, 0], arr[:, 1], arr[:, 2])


def graph_to_dot(graph: GluingGraph):
    """DOT text: one node per saddle/extremal point, one edge per glued slit."""
    lines = ["graph hcmu {", '  node [shape=circle, fontname="Helvetica"];']
    node_of = {}
    for i, s in enumerate(graph.saddles):
        lines.append(f'  s{i} [label="saddle\\n{pi_label(s.angle)}", shape=diamond];')
    for i, v in enumerate(graph.max_vertices):
        lines.append(f'  max{i} [label="max\\n{pi_label(v.angle)}"];')
        for k in v.footballs:
            node_of[("max", k)] = f"max{i}"
    for i, v in enumerate(graph.min_vertices):
        lines.append(f'  min{i} [label="min\\n{pi_label(v.angle)}", shape=doublecircle];')
        for k in v.footballs:
            node_of[("min", k)] = f"min{i}"
    for e in graph.edges:
        s_id, sad = graph.slit_at(*e.a)
        end = node_of.get((sad.end, e.a[0]), "?")
        label = f"F{e.a[0]}.m{e.a[1]} ~ F{e.b[0]}.m{e.b[1]}"
        lines.append(f'  s{s_id} -- {end} [label="{label}"];')
    if not graph.edges:
        for k in range(len(graph.footballs)):
            lines.append(f'  {node_of[("max", k)]} -- {node_of[("min", k)]} [label="F{k}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_checks(report: VerificationReport):
    return [
        {"name": c.name, "residual": _num(c.residual), "tolerance": _num(c.tolerance),
         "passed": c.passed, **({"note": c.note} if c.note else {})}
        for c in report.checks
    ]
