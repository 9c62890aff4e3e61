"""Angle planning and football gluing for HCMU spheres."""

from .complex import CellComplex, build_complex
from .graph import (
    Edge,
    ExtremalVertex,
    GluingError,
    GluingGraph,
    Saddle,
    build_gluing_graph,
    check_compatibility,
    single_football_graph,
)
from .planner import (
    CASE1,
    CASE2,
    DEFAULT_BASE_AREA,
    LARGE_MINIMUM,
    MINIMAL_EXCEPTIONAL,
    SMOOTH_MINIMUM,
    Admissible,
    AnglePlan,
    AngleProblem,
    Inadmissible,
    MalformedProblem,
    NotAdmissible,
    check_obstruction,
    solve_angle_plan,
)
from .verify import index_formula_sides, verify_assembly
