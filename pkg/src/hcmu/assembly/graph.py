"""Football gluing graphs.

Football ``k`` carries a list of meridians, each at an angular position
given as a fraction of a full turn. A saddle slits one meridian on each
of its footballs, from the meridian's end (``"min"`` at u = l or
``"max"`` at u = 0) to the saddle point at fractional height ``height``.
The two banks of every slit are glued to banks of neighbouring slits,
right bank of one football to the left bank of the next in the saddle's
cyclic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..football import FootballSpec
from .planner import AnglePlan, AngleProblem

SLIT_HEIGHT = Fraction(1, 2)


class GluingError(ValueError):
    pass


@dataclass(frozen=True)
class Saddle:
    angle: object
    incident: tuple  # ((football, meridian), ...) in cyclic gluing order
    end: str = "min"
    height: Fraction = SLIT_HEIGHT
    prescribed: int | None = None

    @property
    def segment(self):
        """The slit as a (lo, hi) fraction of the meridian length."""
        return (self.height, Fraction(1)) if self.end == "min" else (Fraction(0), self.height)

    @property
    def segment_count(self):
        # every football contributes its slit and the rest of the meridian through the saddle
        return 2 * len(self.incident)


@dataclass(frozen=True)
class ExtremalVertex:
    kind: str  # "max" or "min"
    angle: object
    footballs: tuple
    prescribed: int | None = None


@dataclass(frozen=True)
class Edge:
    """Right bank of slit ``a`` glued to the left bank of slit ``b``."""

    a: tuple  # (football, meridian)
    b: tuple
    segment: tuple


@dataclass
class GluingGraph:
    footballs: list
    meridians: list  # per football: list of angular positions (fractions of a turn)
    saddles: list = field(default_factory=list)
    max_vertices: list = field(default_factory=list)
    min_vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    euler_char: int = 2
    prescribed_angles: tuple = ()
    note: str = ""

    def slit_at(self, football, meridian):
        for s_id, sad in enumerate(self.saddles):
            if (football, meridian) in sad.incident:
                return s_id, sad
        return None, None

    def glued_pairs(self):
        """Distinct football pairs sharing at least one edge."""
        pairs = []
        for e in self.edges:
            p = tuple(sorted((e.a[0], e.b[0])))
            if p[0] != p[1] and p not in pairs:
                pairs.append(p)
        return pairs


def check_compatibility(a: FootballSpec, b: FootballSpec, rtol=1e-12) -> bool:
    """Whether two footballs can be glued along meridian segments.

    Needs equal angle ratios and areas in proportion to the maximum angles.
    """
    def close(p, q):
        return abs(p - q) <= rtol * max(abs(p), abs(q))

    ratio_ok = close(float(a.alpha) * float(b.beta), float(b.alpha) * float(a.beta))
    area_ok = close(float(a.area) * float(b.alpha), float(b.area) * float(a.alpha))
    return ratio_ok and area_ok


def _edges_for(sad: Saddle):
    inc = sad.incident
    return [Edge(inc[i], inc[(i + 1) % len(inc)], sad.segment) for i in range(len(inc))]


def build_gluing_graph(plan: AnglePlan, problem: AngleProblem) -> GluingGraph:
    """Glue the plan's footballs into a sphere with one minimum.

    Saddle i (chain order) takes one football shared with saddle i-1 plus
    ``angle - 1`` fresh ones; its slits sit at turn fraction
    ``i / (2 (j0 + 1))`` so that a shared football gets two distinct meridians.
    """
    base = float(problem.base_area)
    footballs = [FootballSpec(x, y, base * float(x)) for x, y in zip(plan.x, plan.y)]
    meridians = [[] for _ in footballs]
    j0 = len(plan.saddle_order)
    step = Fraction(1, 2 * (j0 + 1))
    saddles = []
    cursor = 0
    for pos, idx in enumerate(plan.saddle_order):
        count = int(problem.angles[idx])
        if pos == 0:
            group = list(range(count))
            cursor = count
        else:
            group = [cursor - 1] + list(range(cursor, cursor + count - 1))
            cursor += count - 1
        theta = step * pos
        incident = []
        for k in group:
            meridians[k].append(theta)
            incident.append((k, len(meridians[k]) - 1))
        saddles.append(Saddle(problem.angles[idx], tuple(incident), "min",
                              SLIT_HEIGHT, prescribed=idx))
    if cursor != plan.N:
        raise GluingError(f"saddle chain used {cursor} footballs, plan has {plan.N}")

    graph = GluingGraph(
        footballs=footballs,
        meridians=meridians,
        saddles=saddles,
        max_vertices=[ExtremalVertex("max", plan.x[k], (k,), plan.max_indices[k])
                      for k in range(plan.N)],
        min_vertices=[ExtremalVertex("min", sum(plan.y, 0 * plan.y[0]),
                                     tuple(range(plan.N)), plan.min_angle_index)],
        edges=[e for sad in saddles for e in _edges_for(sad)],
        euler_char=problem.euler_char,
        prescribed_angles=problem.angles,
        note=plan.note,
    )
    for a, b in graph.glued_pairs():
        if not check_compatibility(footballs[a], footballs[b]):
            raise GluingError(f"footballs {a} and {b} cannot be glued")
    return graph


def single_football_graph(alpha, beta, base_area=4.0 * math.pi, prescribed=(None, None),
                          prescribed_angles=()):
    """Saddle-free case: the whole metric is one football.

    ``prescribed`` gives the problem indices realised at the ``alpha`` and
    ``beta`` ends; both follow the swap when ``beta > alpha``. The area
    follows the same rule as glued footballs.
    """
    spec = FootballSpec(alpha, beta, float(base_area) * float(max(alpha, beta)))
    p_alpha, p_beta = prescribed
    pmax, pmin = (p_beta, p_alpha) if spec.flipped else (p_alpha, p_beta)
    return GluingGraph(
        footballs=[spec],
        meridians=[[]],
        max_vertices=[ExtremalVertex("max", spec.alpha, (0,), pmax)],
        min_vertices=[ExtremalVertex("min", spec.beta, (0,), pmin)],
        euler_char=2,
        prescribed_angles=tuple(prescribed_angles),
    )
