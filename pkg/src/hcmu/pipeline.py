"""Plan, build and verify runs shared by the CLI and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .assembly import (
    AngleProblem,
    GluingGraph,
    MalformedProblem,
    build_gluing_graph,
    check_obstruction,
    single_football_graph,
    solve_angle_plan,
    verify_assembly,
)
from .football import profile_solve, verify_football
from .io import (
    DEFAULT_SAMPLES,
    REPORT_FORMAT,
    ArtifactError,
    ProblemFile,
    graph_from_dict,
    graph_to_dict,
    graph_to_dot,
    load_json,
    read_graph,
    read_profile,
    report_checks,
    write_json,
    write_profile,
)
from .numbers import format_number
from .report import Tolerances, VerificationReport


class OutputError(OSError):
    """The output directory cannot be created or written."""


class SerializationError(RuntimeError):
    """Results were computed but could not be turned into files."""


@dataclass
class Verdict:
    admissible: bool
    condition_value: object = None
    s: object = None
    reason: str = ""
    single_football: bool = False
    malformed: bool = False
    arithmetic: str = ""

    def to_dict(self):
        out = {
            "status": "malformed" if self.malformed
            else "admissible" if self.admissible else "inadmissible",
            "single_football": self.single_football,
        }
        if self.condition_value is not None:
            out["condition_value"] = format_number(self.condition_value)
        if self.s is not None:
            out["s"] = format_number(self.s)
        if self.arithmetic:
            out["arithmetic"] = self.arithmetic
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class BuildResult:
    problem: ProblemFile
    verdict: Verdict
    tolerances: Tolerances
    plan: object = None
    graph: GluingGraph | None = None
    profiles: list = field(default_factory=list)
    report: VerificationReport | None = None


def _arithmetic(pf: ProblemFile):
    sad = [pf.angles[i] for i in pf.saddles]
    n = len(pf.angles)
    total = sum(sad, Fraction(0))
    value = total + pf.euler_char - n
    return (f"sum(saddle angles) + chi - n = {format_number(total)} + ({pf.euler_char}) "
            f"- {n} = {format_number(value)}")


def assess(pf: ProblemFile):
    """Admissibility verdict plus the AngleProblem (None on the single-football path)."""
    if not pf.saddles and len(pf.angles) <= 2:
        if pf.euler_char != 2:
            return Verdict(False, reason="a single football is a sphere; chi must be 2",
                           single_football=True), None
        return Verdict(True, s=None, single_football=True,
                       reason="no saddles: the metric is a single football"), None
    try:
        problem = AngleProblem(pf.euler_char, tuple(pf.angles), frozenset(pf.saddles),
                               pf.base_area)
    except MalformedProblem as exc:
        return Verdict(False, malformed=True, reason=str(exc)), None
    v = check_obstruction(problem)
    if v.admissible:
        return Verdict(True, v.condition_value, v.s_required,
                       arithmetic=_arithmetic(pf)), problem
    return Verdict(False, v.condition_value, problem.index_count_s, v.reason,
                   arithmetic=_arithmetic(pf)), problem


def _single_graph(pf):
    angles = list(pf.angles)
    prescribed = list(range(len(angles)))
    one = Fraction(1)
    while len(angles) < 2:
        angles.append(one)
        prescribed.append(None)
    return single_football_graph(angles[0], angles[1], pf.base_area, tuple(prescribed),
                                 tuple(pf.angles))


def verify_all(graph, profiles, tol):
    report = VerificationReport()
    for k, prof in enumerate(profiles):
        report.extend(verify_football(prof, tol), prefix=f"football[{k}].")
    report.extend(verify_assembly(graph, profiles, tol), prefix="assembly.")
    return report


def build(pf: ProblemFile, tolerances: Tolerances | None = None) -> BuildResult:
    tol = tolerances if tolerances is not None else Tolerances().updated(pf.tolerances)
    verdict, problem = assess(pf)
    result = BuildResult(pf, verdict, tol)
    if not verdict.admissible:
        return result
    if verdict.single_football:
        graph = _single_graph(pf)
    else:
        result.plan = solve_angle_plan(problem)
        graph = build_gluing_graph(result.plan, problem)
    result.graph = graph
    result.profiles = [profile_solve(spec, pf.samples, tol) for spec in graph.footballs]
    result.report = verify_all(graph, result.profiles, tol)
    return result


def _plan_dict(plan, graph):
    if plan is None:
        return None
    return {
        "case": plan.case,
        "s": format_number(plan.s),
        "N": plan.N,
        "x": [format_number(v) for v in plan.x],
        "y": [format_number(v) for v in plan.y],
        "areas": [format_number(s.area) for s in graph.footballs],
        "ratio": format_number(plan.ratio),
        "min_angle_index": plan.min_angle_index,
        "max_indices": list(plan.max_indices),
        "saddle_order": list(plan.saddle_order),
        "note": plan.note,
    }


def report_dict(result: BuildResult):
    pf = result.problem
    doc = {
        "format": REPORT_FORMAT,
        "problem": {
            "euler_char": pf.euler_char,
            "angles": [{"value": format_number(a), "saddle": i in pf.saddles}
                       for i, a in enumerate(pf.angles)],
            "base_area": format_number(pf.base_area),
            "samples": pf.samples,
        },
        "tolerances": {k: format_number(getattr(result.tolerances, k))
                       for k in Tolerances.names()},
        "verdict": result.verdict.to_dict(),
        "plan": _plan_dict(result.plan, result.graph),
        "footballs": [],
        "graph": None,
        "verification": None,
    }
    if result.graph is not None:
        doc["graph"] = "graph.json"
        for k, p in enumerate(result.profiles):
            e = p.extremes
            doc["footballs"].append({
                "id": k,
                "alpha": format_number(p.spec.alpha),
                "beta": format_number(p.spec.beta),
                "area": format_number(p.spec.area),
                "k_max": format_number(e.k_max),
                "k_min": format_number(e.k_min),
                "c": format_number(e.c),
                "length": format_number(p.length),
                "profile": f"profiles/football_{k}.csv",
            })
    if result.report is not None:
        doc["verification"] = {"overall": result.report.overall,
                               "checks": report_checks(result.report)}
    return doc


def write_build(result: BuildResult, out_dir, plots=True):
    """Write every artifact; all computation has already happened."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OutputError(f"output directory {out} is not writable: {exc.strerror or exc}") from None
    try:
        report = report_dict(result)
        graph_doc = graph_to_dict(result.graph) if result.graph is not None else None
        dot = graph_to_dot(result.graph) if result.graph is not None else None
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"could not serialize results: {exc}") from exc
    try:
        write_json(out / "report.json", report)
        if graph_doc is not None:
            write_json(out / "graph.json", graph_doc)
            (out / "graph.dot").write_text(dot)
            (out / "profiles").mkdir(exist_ok=True)
            for k, p in enumerate(result.profiles):
                write_profile(out / "profiles" / f"football_{k}.csv", p)
        if plots and result.profiles:
            from .plotting import plot_profiles, plot_residuals

            (out / "figures").mkdir(exist_ok=True)
            plot_profiles(result.profiles, out / "figures" / "profiles.png")
            plot_residuals(result.report, out / "figures" / "residuals.png")
    except OSError as exc:
        raise OutputError(f"writing into {out} failed: {exc.strerror or exc}") from None
    return out


@dataclass
class VerifyResult:
    report: VerificationReport | None
    errors: list
    notes: list


def verify_directory(out_dir, overrides=None, samples=None) -> VerifyResult:
    """Re-read a build directory (or a hand-written graph.json) and check it."""
    out = Path(out_dir)
    errors, notes = [], []
    tol = Tolerances()
    n_samples = samples or DEFAULT_SAMPLES
    report_path = out / "report.json"
    if report_path.exists():
        try:
            doc = load_json(report_path)
            tol = tol.updated({k: v for k, v in (doc.get("tolerances") or {}).items()})
            n_samples = samples or int(doc.get("problem", {}).get("samples", n_samples))
        except (ArtifactError, KeyError, TypeError, ValueError, AttributeError) as exc:
            errors.append(f"{report_path}: {exc}")
    if overrides:
        tol = tol.updated(overrides)
    graph = None
    try:
        graph = read_graph(out / "graph.json")
    except ArtifactError as exc:
        errors.append(str(exc))
    except Exception as exc:  # schema-level surprises in hand-written graphs
        errors.append(f"{out / 'graph.json'}: {exc}")
    if graph is None:
        return VerifyResult(None, errors, notes)
    profiles = []
    for k, spec in enumerate(graph.footballs):
        path = out / "profiles" / f"football_{k}.csv"
        if path.exists():
            try:
                profiles.append(read_profile(path, spec))
            except ArtifactError as exc:
                errors.append(str(exc))
        else:
            notes.append(f"{path} missing; profile recomputed with {n_samples} samples")
            profiles.append(profile_solve(spec, n_samples, tol))
    if errors:
        return VerifyResult(None, errors, notes)
    return VerifyResult(verify_all(graph, profiles, tol), errors, notes)


__all__ = [
    "BuildResult", "OutputError", "SerializationError", "Verdict", "VerifyResult",
    "assess", "build", "graph_from_dict", "report_dict", "verify_all",
    "verify_directory", "write_build",
]
