"""Cell complex of a glued surface, derived from a GluingGraph.

Each football is cut into sectors by its meridians. Sector boundaries are
half-edges: down the left meridian (its right bank), up the right meridian
(its left bank). Plain meridian segments pair up inside a football; slit
banks pair up only through the graph's edges. Vertices are the orbits of
``h -> twin(next(h))``, so the vertex set, the cone angles and the Euler
characteristic all come from the identifications alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GluingGraph


@dataclass
class HalfEdge:
    origin: tuple
    dest: tuple
    key: tuple
    football: int
    width: object
    next: int = -1
    twin: int = -1


@dataclass
class ComplexVertex:
    tokens: frozenset
    angle: object
    degree: int


@dataclass
class CellComplex:
    n_vertices: int
    n_edges: int
    n_faces: int
    vertices: list
    unglued: list = field(default_factory=list)
    pinched: list = field(default_factory=list)
    problems: list = field(default_factory=list)

    @property
    def euler_char(self):
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def is_closed_manifold(self):
        return not (self.unglued or self.pinched or self.problems)

    def vertex_of(self, tokens):
        tokens = frozenset(tokens)
        for v in self.vertices:
            if v.tokens == tokens:
                return v
        return None


def _meridian_segments(graph, k, j):
    """Segments of meridian j on football k from u=0 to u=l: (top, bottom, slit?)."""
    P, Q = ("P", k), ("Q", k)
    _, sad = graph.slit_at(k, j)
    if sad is None:
        return [(P, Q, False)]
    A = ("A", k, j)
    if sad.end == "min":
        return [(P, A, False), (A, Q, True)]
    return [(P, A, True), (A, Q, False)]


def build_complex(graph: GluingGraph) -> CellComplex:
    half = []
    problems = []
    n_faces = 0
    for k in range(len(graph.footballs)):
        positions = list(graph.meridians[k]) or [Fraction(0)]
        if len(set(positions)) != len(positions):
            problems.append(f"football {k} has coincident meridians")
        order = sorted(range(len(positions)), key=lambda j: positions[j])
        m = len(order)
        for t in range(m):
            a, b = order[t], order[(t + 1) % m]
            width = Fraction(1) if m == 1 else (positions[b] - positions[a]) % 1
            start = len(half)
            for s, (top, bottom, slit) in enumerate(_meridian_segments(graph, k, a)):
                key = ("slit", k, a, "right") if slit else ("plain", k, a, s)
                half.append(HalfEdge(top, bottom, key, k, width))
            segs = _meridian_segments(graph, k, b)
            for s in reversed(range(len(segs))):
                top, bottom, slit = segs[s]
                key = ("slit", k, b, "left") if slit else ("plain", k, b, s)
                half.append(HalfEdge(bottom, top, key, k, width))
            for i in range(start, len(half)):
                half[i].next = i + 1 if i + 1 < len(half) else start
            n_faces += 1

    by_key = {}
    for i, h in enumerate(half):
        by_key.setdefault(h.key, []).append(i)

    for e in graph.edges:
        ra = ("slit", e.a[0], e.a[1], "right")
        lb = ("slit", e.b[0], e.b[1], "left")
        if ra not in by_key or lb not in by_key:
            problems.append(f"edge {e.a}->{e.b} references a meridian without a slit")
            continue
        for (fb, mer) in (e.a, e.b):
            _, sad = graph.slit_at(fb, mer)
            if tuple(sad.segment) != tuple(e.segment):
                problems.append(f"edge {e.a}->{e.b} segment {e.segment} does not match its slit")
        merged = by_key.pop(ra) + by_key.pop(lb)
        by_key[("glue", ra, lb)] = merged

    n_edges = 0
    unglued = []
    for key, members in by_key.items():
        n_edges += 1
        if len(members) == 2:
            i, j = members
            if half[i].origin[0] != half[j].dest[0] or half[i].dest[0] != half[j].origin[0]:
                problems.append(f"edge {key} glues mismatched endpoints")
            half[i].twin, half[j].twin = j, i
        elif len(members) == 1:
            unglued.append(key)
        else:
            problems.append(f"edge {key} glued {len(members)} times")

    seen = [False] * len(half)
    vertices = []
    for i in range(len(half)):
        if seen[i]:
            continue
        tokens, angle, degree = set(), 0, 0
        j = i
        while not seen[j]:
            seen[j] = True
            h = half[j]
            tokens.add(h.dest)
            angle = angle + _corner_angle(graph, h)
            degree += 1
            nxt = half[h.next]
            if nxt.twin < 0:
                break
            j = nxt.twin
        vertices.append(ComplexVertex(frozenset(tokens), angle, degree))

    owner = {}
    pinched = []
    for v_id, v in enumerate(vertices):
        for tok in v.tokens:
            if tok in owner and owner[tok] != v_id:
                pinched.append(tok)
            owner[tok] = v_id
    return CellComplex(len(vertices), n_edges, n_faces, vertices, unglued, pinched, problems)


def _corner_angle(graph, h):
    kind = h.dest[0]
    spec = graph.footballs[h.football]
    if kind == "P":
        return h.width * spec.alpha
    if kind == "Q":
        return h.width * spec.beta
    return Fraction(1, 2)
