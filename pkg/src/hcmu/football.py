"""Rotationally symmetric HCMU metrics on the sphere ("footballs").

A football is ``g = du^2 + f(u)^2 dtheta^2`` on ``0 <= u <= l`` with cone
angles ``2*pi*alpha`` at the curvature maximum (``u = 0``) and
``2*pi*beta`` at the minimum (``u = l``). Its curvature solves

    K'^2 = -(K - K0)(K - K1)(K + K0 + K1) / 3,    K' = c f,

so the whole metric is fixed by ``(alpha, beta, area)``.

Profiles are computed in the variable ``phi`` defined by
``K = K1 + (K0 - K1) sin^2(phi)``. The square roots at both ends of the
meridian cancel against ``dK`` and leave the smooth integrand
``du/dphi = -2 / sqrt((K + K0 + K1) / 3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .finite_diff import derivative
from .quadrature import cumulative_gauss_legendre, gauss_legendre
from .report import Tolerances, VerificationReport

_trapezoid = getattr(np, "trapezoid", None) or np.trapz  # numpy < 2 lacks trapezoid

# relative gap (K0 - K1)/(|K0| + |K1|) below which a football is treated as round
DEGENERATE_GAP = 1e-9


class InvalidFootball(ValueError):
    pass


@dataclass(frozen=True)
class FootballSpec:
    """Cone angles (units of 2*pi) and total area of one football.

    Angles given in the wrong order are swapped so that ``alpha >= beta``;
    ``flipped`` records that this happened.
    """

    alpha: float | Fraction
    beta: float | Fraction
    area: float
    flipped: bool = False

    def __post_init__(self):
        for name in ("alpha", "beta", "area"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise InvalidFootball(f"{name} must be positive and finite, got {value!r}")
        if self.beta > self.alpha:
            a, b = self.beta, self.alpha
            object.__setattr__(self, "alpha", a)
            object.__setattr__(self, "beta", b)
            object.__setattr__(self, "flipped", not self.flipped)

    @property
    def ratio(self):
        return self.alpha / self.beta


@dataclass(frozen=True)
class CurvatureExtremes:
    k_max: float
    k_min: float
    c: float

    @property
    def scale(self):
        """Curvature magnitude used to make residuals dimensionless."""
        return max(abs(self.k_max), abs(self.k_min))

    @property
    def is_degenerate(self):
        gap = self.k_max - self.k_min
        return gap <= DEGENERATE_GAP * (abs(self.k_max) + abs(self.k_min))

    def cubic(self, k):
        """Right-hand side of K'^2 as a function of K."""
        k0, k1 = self.k_max, self.k_min
        return -(k - k0) * (k - k1) * (k + k0 + k1) / 3.0


@dataclass(frozen=True, eq=False)
class FootballProfile:
    """Sampled meridian ``(u, K(u), f(u))`` with ``u`` strictly increasing."""

    spec: FootballSpec
    extremes: CurvatureExtremes
    length: float
    u: np.ndarray = field(repr=False)
    k: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)

    @property
    def samples(self):
        return list(zip(self.u.tolist(), self.k.tolist(), self.f.tolist()))

    def __len__(self):
        return len(self.u)

    def with_values(self, u=None, k=None, f=None, spec=None):
        """Copy with some sample arrays (or the FootballSpec) replaced, for fault injection and I/O."""
        return FootballProfile(
            spec=self.spec if spec is None else spec,
            extremes=self.extremes,
            length=self.length,
            u=self.u if u is None else np.asarray(u, dtype=float),
            k=self.k if k is None else np.asarray(k, dtype=float),
            f=self.f if f is None else np.asarray(f, dtype=float),
        )


def reduced_extremes(alpha, beta):
    """``(K0, K1) * A / (4 pi)``, exact when the angles are rational."""
    return 2 * alpha - beta, 2 * beta - alpha


def curvature_extremes(spec: FootballSpec) -> CurvatureExtremes:
    a, b, area = float(spec.alpha), float(spec.beta), float(spec.area)
    k0 = 4.0 * math.pi / area * (2.0 * a - b)
    k1 = 4.0 * math.pi / area * (2.0 * b - a)
    c = 2.0 * math.pi * (k1 - k0) / area
    return CurvatureExtremes(k0, k1, c)


def _check_extremes(ext: CurvatureExtremes):
    k0, k1 = ext.k_max, ext.k_min
    if not (math.isfinite(k0) and math.isfinite(k1)):
        raise InvalidFootball(f"non-finite curvature extremes ({k0!r}, {k1!r})")
    if not k0 > 0:
        raise InvalidFootball(f"maximum curvature must be positive, got {k0!r}")
    if k1 > k0:
        raise InvalidFootball(f"k_max={k0!r} is below k_min={k1!r}")
    if not 2 * k1 + k0 > 0:
        raise InvalidFootball(
            f"2*k_min + k_max = {2 * k1 + k0!r} must be positive for a football"
        )


def angles_from_extremes(extremes: CurvatureExtremes, area):
    """Invert ``curvature_extremes`` at fixed area, returning ``(alpha, beta)``."""
    _check_extremes(extremes)
    if not area > 0:
        raise InvalidFootball(f"area must be positive, got {area!r}")
    k0, k1 = extremes.k_max, extremes.k_min
    scale = area / (12.0 * math.pi)
    return scale * (2.0 * k0 + k1), scale * (2.0 * k1 + k0)


def _speed(ext):
    """``|du/dphi|`` as a function of phi."""
    k0, k1 = ext.k_max, ext.k_min

    def g(phi):
        k = k1 + (k0 - k1) * np.sin(phi) ** 2
        return 2.0 / np.sqrt((k + k0 + k1) / 3.0)

    return g


def geodesic_length(extremes: CurvatureExtremes, rtol=1e-12, max_order=2048) -> float:
    """Distance between the two cone points along a meridian."""
    _check_extremes(extremes)
    if extremes.is_degenerate:
        return math.pi / math.sqrt(extremes.k_max)
    value, _ = gauss_legendre(
        _speed(extremes), 0.0, math.pi / 2, rtol=rtol, max_order=max_order
    )
    return float(value)


def profile_solve(spec: FootballSpec, n_samples=257, tolerances=None) -> FootballProfile:
    """Sample the football meridian on a grid uniform in phi."""
    tol = tolerances or Tolerances()
    if n_samples < 3:
        raise ValueError(f"n_samples must be at least 3, got {n_samples}")
    ext = curvature_extremes(spec)
    _check_extremes(ext)

    if ext.is_degenerate:
        # constant curvature: f = (alpha/sqrt K) sin(sqrt K u)
        k = ext.k_max
        root = math.sqrt(k)
        length = math.pi / root
        u = np.linspace(0.0, length, n_samples)
        f = float(spec.alpha) / root * np.sin(root * u)
        f[0] = f[-1] = 0.0
        return FootballProfile(spec, ext, length, u, np.full(n_samples, k), f)

    k0, k1 = ext.k_max, ext.k_min
    # t = pi/2 - phi runs from the maximum (t = 0) to the minimum (t = pi/2)
    t = np.linspace(0.0, math.pi / 2, n_samples)
    speed = _speed(ext)
    u = cumulative_gauss_legendre(
        lambda s: speed(math.pi / 2 - s), t,
        rtol=tol.quad_rtol, max_order=tol.quad_max_order,
    )
    phi = math.pi / 2 - t
    s2 = np.sin(phi) ** 2
    s2[0], s2[-1] = 1.0, 0.0
    k = k1 + (k0 - k1) * s2
    dk = -(k0 - k1) * np.sqrt(s2 * (1.0 - s2)) * np.sqrt((k + k0 + k1) / 3.0)
    f = dk / ext.c
    f[0] = f[-1] = 0.0
    return FootballProfile(spec, ext, float(u[-1]), u, k, f)


def _richardson_ok(n):
    return n >= 5 and (n - 1) % 2 == 0


def trapezoid_area(u, f):
    """``2*pi * integral f du`` from the samples alone.

    One Richardson step on top of the trapezoid rule when the sample count
    allows halving; plain trapezoid otherwise.
    """
    u = np.asarray(u, dtype=float)
    f = np.asarray(f, dtype=float)
    fine = _trapezoid(f, u)
    if _richardson_ok(len(u)):
        coarse = _trapezoid(f[::2], u[::2])
        fine = (4.0 * fine - coarse) / 3.0
    return 2.0 * math.pi * fine


def verify_football(profile: FootballProfile, tolerances=None) -> VerificationReport:
    """Check every identity a football must satisfy, using only its samples.

    Derivatives come from second-order finite differences on the sample
    grid. Each residual is compared against ``C * h^2`` in units where the
    curvature scale is one.
    """
    tol = tolerances or Tolerances()
    spec, ext = profile.spec, profile.extremes
    u, k, f = profile.u, profile.k, profile.f
    n = len(u)
    report = VerificationReport()
    kappa = ext.scale
    k0, k1 = ext.k_max, ext.k_min
    alpha, beta, area = float(spec.alpha), float(spec.beta), float(spec.area)

    du = np.diff(u)
    h2 = float(np.max(np.abs(du))) ** 2 * kappa if n > 1 else math.inf
    model = tol.fd_constant * h2

    # sample layout: endpoints pinned, u increasing, f positive inside
    fscale = max(alpha, beta) / math.sqrt(kappa)
    shape = max(
        abs(u[0]) / profile.length,
        abs(u[-1] - profile.length) / profile.length,
        abs(f[0]) / fscale,
        abs(f[-1]) / fscale,
        abs(k[0] - k0) / kappa,
        abs(k[-1] - k1) / kappa,
    )
    bad_order = int(np.sum(du <= 0)) + int(np.sum(f[1:-1] <= 0))
    report.add("profile_shape", shape + bad_order, tol.shape_rel,
               note=f"{bad_order} ordering/positivity violations" if bad_order else "")
    if n < 5 or bad_order:
        report.add("fd_grid", 1.0, 0.0, note="too few or unordered samples for stencils")
        return report

    interior = range(1, n - 1)
    dk = derivative(u, k, 1)
    d3k = derivative(u, k, 3, indices=interior)
    d2f = derivative(u, f, 2, indices=interior)

    r_cubic = np.max(np.abs(dk**2 - ext.cubic(k)))
    report.add("cubic_first_integral", r_cubic, model * kappa**3)

    r_prop = np.max(np.abs(dk - ext.c * f))
    report.add("gradient_proportional_to_f", r_prop, model * kappa**1.5)

    r_ode = np.max(np.abs(d3k + dk[1:-1] * k[1:-1]))
    report.add("third_order_ode", r_ode, model * kappa**2.5)

    r_gauss = np.max(np.abs(k[1:-1] + d2f / f[1:-1]))
    report.add("gauss_curvature", r_gauss, model * kappa)

    steps = np.diff(k)
    if ext.is_degenerate:
        report.add("monotone_curvature", np.max(np.abs(k - k0)) / kappa, tol.shape_rel,
                   note="constant curvature")
    else:
        report.add("monotone_curvature", float(np.sum(steps >= 0)), 0.0,
                   note="count of non-decreasing steps")

    df = derivative(u, f, 1, indices=[0, n - 1])
    r_slope = max(abs(df[0] - alpha), abs(df[1] + beta))
    report.add("boundary_slopes", r_slope, model * max(alpha, beta))

    # the extrapolated trapezoid is fourth order, so its tolerance is too
    r_area = abs(trapezoid_area(u, f) - area) / area
    area_model = tol.fd_constant * h2 * h2 if _richardson_ok(n) else model
    report.add("area", r_area, area_model)
    return report
