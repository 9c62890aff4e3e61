"""Admissibility of prescribed cone angles and the football angle plan.

Angles are in units of 2*pi throughout. Indices into ``AngleProblem.angles``
are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..numbers import format_number, is_integer, unify

DEFAULT_BASE_AREA = 4.0 * math.pi

CASE1 = "case1"
CASE2 = "case2"
SMOOTH_MINIMUM = "smooth_minimum"

MINIMAL_EXCEPTIONAL = "extension: minimal exceptional configuration"
LARGE_MINIMUM = "extension: prescribed minimum too large, minimum made smooth"


class MalformedProblem(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class AngleProblem:
    """Target sphere data: Euler characteristic, cone angles, chosen saddles."""

    euler_char: int
    angles: tuple
    saddle_indices: frozenset
    base_area: float = DEFAULT_BASE_AREA

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(unify(self.angles)))
        object.__setattr__(self, "saddle_indices", frozenset(self.saddle_indices))
        self.validate()

    def validate(self):
        if not isinstance(self.euler_char, int) or isinstance(self.euler_char, bool):
            raise MalformedProblem(f"euler_char must be an integer, got {self.euler_char!r}")
        if self.euler_char > 2 or self.euler_char % 2:
            raise MalformedProblem(
                f"euler_char {self.euler_char} is not that of a closed orientable surface"
            )
        for i, a in enumerate(self.angles):
            if not a > 0 or not math.isfinite(a):
                raise MalformedProblem(f"angle {i} must be positive, got {a!r}")
        if not self.saddle_indices:
            raise MalformedProblem(
                "no saddle angles designated; with at most two angles and no saddles "
                "the metric is a single football, built directly from its two angles"
            )
        for i in sorted(self.saddle_indices):
            if not 0 <= i < len(self.angles):
                raise MalformedProblem(f"saddle index {i} out of range")
            a = self.angles[i]
            if not is_integer(a) or a < 2:
                raise MalformedProblem(
                    f"saddle angles must be integers ≥ 2 (angle {i} is {format_number(a)})"
                )
        if not self.base_area > 0:
            raise MalformedProblem(f"base_area must be positive, got {self.base_area!r}")

    @property
    def n(self):
        return len(self.angles)

    @property
    def saddles(self):
        return sorted(self.saddle_indices)

    @property
    def others(self):
        return [i for i in range(self.n) if i not in self.saddle_indices]

    @property
    def saddle_sum(self):
        return sum(self.angles[i] for i in self.saddles)

    @property
    def condition_value(self):
        """``sum(saddle angles) + chi - n``; admissible data need this >= 0."""
        return self.saddle_sum + self.euler_char - self.n

    @property
    def index_count_s(self):
        """Smooth critical points forced by the Poincare-Hopf count for this chi."""
        j = len(self.saddle_indices)
        return self.euler_char - sum(1 - self.angles[i] for i in self.saddles) - (self.n - j)


@dataclass(frozen=True)
class Admissible:
    s_required: object
    condition_value: object
    admissible: bool = field(default=True, init=False)


@dataclass(frozen=True)
class Inadmissible:
    reason: str
    condition_value: object
    admissible: bool = field(default=False, init=False)


def check_obstruction(problem: AngleProblem):
    problem.validate()
    value = problem.condition_value
    if value < 0:
        return Inadmissible(
            f"sum(saddle angles) + chi - n = {format_number(value)} < 0", value
        )
    if problem.euler_char != 2:
        return Inadmissible(
            f"sum(saddle angles) + chi - n = {format_number(value)} >= 0, but this "
            f"condition is not sufficient for chi <= 0: K attains a maximum and a "
            f"minimum, neither of which can be a saddle, so at least two smooth "
            f"critical points are needed while the index count allows "
            f"s = {format_number(problem.index_count_s)}",
            value,
        )
    j0 = len(problem.saddle_indices)
    s = problem.saddle_sum - (j0 - 1) - (problem.n - j0 - 1)
    return Admissible(s, value)


@dataclass(frozen=True)
class AnglePlan:
    """Angles of the N footballs glued by the saddle chain.

    ``x[k]``/``y[k]`` are the maximum/minimum-end angles of football k and
    ``max_indices[k]`` the prescribed angle its maximum realises (None for a
    smooth maximum). ``min_angle_index`` is None when the minimum is smooth.
    """

    s: object
    N: int
    x: tuple
    y: tuple
    case: str
    min_angle_index: int | None
    max_indices: tuple
    saddle_order: tuple
    note: str = ""

    @property
    def ratio(self):
        return self.x[0] / self.y[0]

    @property
    def smooth_maxima(self):
        return sum(1 for i in self.max_indices if i is None)


def _scaled(xs, total, target):
    exact = all(isinstance(v, Fraction) for v in list(xs) + [total, target])
    if exact:
        return tuple(x * target / total for x in xs)
    return tuple(float(x) * float(target) / float(total) for x in xs)


def solve_angle_plan(problem: AngleProblem) -> AnglePlan:
    verdict = check_obstruction(problem)
    if not verdict.admissible:
        raise NotAdmissible(verdict.reason)
    s = verdict.s_required
    a = problem.angles
    saddles = tuple(problem.saddles)
    j0 = len(saddles)
    N = int(problem.saddle_sum) - (j0 - 1)
    one = Fraction(1) if isinstance(a[0], Fraction) else 1.0
    others = problem.others

    if not others:
        x = (one,) * N
        return AnglePlan(s, N, x, _scaled(x, sum(x), one), SMOOTH_MINIMUM, None,
                         (None,) * N, saddles, MINIMAL_EXCEPTIONAL)

    # ties go to the lowest index
    n_idx = min(others, key=lambda i: (a[i], i))
    rest = [i for i in others if i != n_idx]
    alpha_n = a[n_idx]
    extra = int(s)
    x = tuple(a[i] for i in rest) + (one,) * extra
    total = sum(x, 0 * one)
    if total > alpha_n:
        case = CASE1 if s == 0 else CASE2
        return AnglePlan(s, N, x, _scaled(x, total, alpha_n), case, n_idx,
                         tuple(rest) + (None,) * extra, saddles)

    # one non-saddle angle at least as large as N: the prescribed point
    # cannot be the minimum, so it becomes a maximum and the minimum is smooth
    x = tuple(a[i] for i in others) + (one,) * (N - len(others))
    return AnglePlan(s, N, x, _scaled(x, sum(x, 0 * one), one), SMOOTH_MINIMUM, None,
                     tuple(others) + (None,) * (N - len(others)), saddles, LARGE_MINIMUM)
