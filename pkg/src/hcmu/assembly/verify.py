"""Consistency checks for an assembled surface and its football profiles."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..report import Tolerances, VerificationReport
from .complex import build_complex
from .graph import GluingGraph, check_compatibility


def _rel_spread(values):
    values = np.asarray(values, dtype=float)
    scale = np.max(np.abs(values))
    return float((np.max(values) - np.min(values)) / scale) if scale > 0 else 0.0


def _exact_diff(a, b):
    d = a - b
    return abs(d) if isinstance(d, Fraction) else abs(float(d))


def _differs(a, b, rtol):
    """Exact comparison for rationals; relative ``rtol`` once a float is involved."""
    d = a - b
    if isinstance(d, (Fraction, int)):
        return d != 0
    return abs(float(d)) > rtol * max(abs(float(a)), abs(float(b)))


def _vertex_tokens(graph):
    """Point tokens each graph vertex claims, with its kind and angle."""
    out = []
    for s_id, sad in enumerate(graph.saddles):
        out.append((f"saddle[{s_id}]", "saddle", sad.angle, sad.prescribed,
                    frozenset(("A", k, j) for k, j in sad.incident)))
    for v_id, v in enumerate(graph.max_vertices):
        out.append((f"max[{v_id}]", "max", v.angle, v.prescribed,
                    frozenset(("P", k) for k in v.footballs)))
    for v_id, v in enumerate(graph.min_vertices):
        out.append((f"min[{v_id}]", "min", v.angle, v.prescribed,
                    frozenset(("Q", k) for k in v.footballs)))
    return out


def index_formula_sides(graph: GluingGraph, rtol=0.0):
    """Both sides of chi = sum_saddles (1 - a) + (n - j) + s from the graph's vertices.

    ``n - j`` counts prescribed non-saddle vertices, ``s`` the unprescribed
    smooth (angle 1) extremal vertices.
    """
    saddle_part = sum((1 - sad.angle for sad in graph.saddles), Fraction(0))
    extremal = list(graph.max_vertices) + list(graph.min_vertices)
    prescribed = sum(1 for v in extremal if v.prescribed is not None)
    unprescribed = [v for v in extremal if v.prescribed is None]
    smooth = sum(1 for v in unprescribed if not _differs(v.angle, 1, rtol))
    stray = len(unprescribed) - smooth
    return graph.euler_char, saddle_part + prescribed + smooth, smooth, stray


def verify_assembly(graph: GluingGraph, profiles, tolerances=None) -> VerificationReport:
    tol = tolerances or Tolerances()
    report = VerificationReport()
    n = len(graph.footballs)
    if len(profiles) != n:
        report.add("profile_count", abs(len(profiles) - n), 0,
                   note=f"{len(profiles)} profiles for {n} footballs")
        return report

    mismatch = 0.0
    for spec, prof in zip(graph.footballs, profiles):
        p = prof.spec
        mismatch = max(mismatch,
                       float(abs(p.alpha - spec.alpha)) / float(spec.alpha),
                       float(abs(p.beta - spec.beta)) / float(spec.beta),
                       abs(float(p.area) - float(spec.area)) / float(spec.area))
    report.add("profiles_match_nodes", mismatch, tol.compat_rel)

    report.add("shared_k_max", _rel_spread([p.extremes.k_max for p in profiles]),
               tol.extremes_rel)
    k_min = [p.extremes.k_min for p in profiles]
    spread = float(np.ptp(k_min)) / max(p.extremes.scale for p in profiles)
    report.add("shared_k_min", spread, tol.extremes_rel)
    report.add("equal_meridian_lengths", _rel_spread([p.length for p in profiles]),
               tol.length_rel)

    bad_pairs = [(a, b) for a, b in graph.glued_pairs()
                 if not check_compatibility(graph.footballs[a], graph.footballs[b],
                                            tol.compat_rel)]
    report.add("gluing_compatibility", len(bad_pairs), 0,
               note=f"incompatible pairs {bad_pairs}" if bad_pairs else "")

    worst = 0.0
    for e in graph.edges:
        pa, pb = profiles[e.a[0]], profiles[e.b[0]]
        lo, hi = (float(t) for t in e.segment)
        ua = pa.u
        sel = (ua >= lo * pa.length - 1e-12 * pa.length) & (ua <= hi * pa.length * (1 + 1e-12))
        ga = pa.f[sel] / float(pa.spec.alpha)
        gb = np.interp(ua[sel], pb.u, pb.f) / float(pb.spec.alpha)
        scale = np.max(np.abs(pa.f)) / float(pa.spec.alpha)
        worst = max(worst, float(np.max(np.abs(ga - gb))) / scale)
    report.add("warp_ratio_along_edges", worst, tol.ratio_rel)

    cplx = build_complex(graph)
    defects = len(cplx.unglued) + len(cplx.pinched) + len(cplx.problems)
    report.add("closed_orientable", defects, 0,
               note="; ".join(cplx.problems + [f"unglued {k}" for k in cplx.unglued]
                              + [f"pinched {t}" for t in cplx.pinched]))
    report.add("euler_characteristic", abs(cplx.euler_char - graph.euler_char), 0,
               note=f"V-E+F = {cplx.n_vertices}-{cplx.n_edges}+{cplx.n_faces}")

    claimed = _vertex_tokens(graph)
    angle_err = 0
    valence_err = 0
    notes = []
    covered = set()
    for label, kind, angle, prescribed, tokens in claimed:
        v = cplx.vertex_of(tokens)
        if v is None:
            angle_err += 1
            notes.append(f"{label} is not a vertex of the glued surface")
            continue
        covered.add(tokens)
        if _differs(v.angle, angle, tol.compat_rel):
            angle_err += 1
            notes.append(f"{label} angle {angle} vs glued {v.angle}")
        if prescribed is not None and graph.prescribed_angles:
            if _differs(graph.prescribed_angles[prescribed], angle, tol.compat_rel):
                angle_err += 1
                notes.append(f"{label} does not carry prescribed angle {prescribed}")
        if kind == "saddle" and v.degree != 2 * angle:
            valence_err += 1
    uncovered = [v for v in cplx.vertices if v.tokens not in covered]
    angle_err += len(uncovered)
    if uncovered:
        notes.append(f"{len(uncovered)} glued vertices not in the graph")
    if graph.prescribed_angles:
        used = sorted(p for *_, p, _t in claimed if p is not None)
        if used != list(range(len(graph.prescribed_angles))):
            angle_err += 1
            notes.append(f"prescribed indices realised: {used}")
    report.add("vertex_angles", angle_err, 0, note="; ".join(notes))
    report.add("saddle_valence", valence_err, 0)

    chi, rhs, smooth, stray = index_formula_sides(graph, tol.compat_rel)
    gap = 0 if not _differs(Fraction(chi), rhs, tol.compat_rel) else _exact_diff(Fraction(chi), rhs)
    report.add("index_formula", gap + stray, 0,
               note=f"chi={chi}, rhs={rhs}, smooth extremal points s={smooth}")
    return report
