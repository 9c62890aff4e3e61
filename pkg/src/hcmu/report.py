"""Verification reports and the tolerance configuration shared by all checks."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Knobs for every numerical check.

    ``fd_constant`` is the C in the C*h^2 error model used by all
    finite-difference residuals; ``h`` is the largest sample spacing made
    dimensionless by the curvature scale.
    """

    fd_constant: float = 10.0
    quad_rtol: float = 1e-12
    quad_max_order: int = 2048
    shape_rel: float = 1e-10
    extremes_rel: float = 1e-10
    length_rel: float = 1e-10
    ratio_rel: float = 1e-8
    compat_rel: float = 1e-12

    @classmethod
    def names(cls):
        return [f.name for f in fields(cls)]

    def updated(self, overrides):
        """Copy with ``{name: value}`` overrides applied; unknown names raise KeyError."""
        kinds = {f.name: f.type for f in fields(self)}
        clean = {}
        for name, value in overrides.items():
            if name not in kinds:
                raise KeyError(f"unknown tolerance {name!r}; expected one of {sorted(kinds)}")
            clean[name] = int(value) if kinds[name] == "int" else float(value)
        return replace(self, **clean)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    note: str = ""

    @property
    def passed(self):
        return self.residual <= self.tolerance


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, name, residual, tolerance, note=""):
        self.checks.append(Check(name, float(residual), float(tolerance), note))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(replace(c, name=prefix + c.name))

    @property
    def overall(self):
        return all(c.passed for c in self.checks)

    @property
    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def table(self):
        """Fixed-width text table, one row per check."""
        rows = [f"{'check':<40} {'residual':>12} {'tolerance':>12}  status"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            line = f"{c.name:<40} {c.residual:>12.4e} {c.tolerance:>12.4e}  {status}"
            if c.note:
                line += f"  ({c.note})"
            rows.append(line)
        return "\n".join(rows)
