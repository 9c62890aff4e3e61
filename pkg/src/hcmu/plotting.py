"""Figures written next to the CSV tables by ``hcmu build``."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .numbers import format_number  # noqa: E402

_META = {"Software": None}


def plot_profiles(profiles, path):
    """Curvature K(u) and normalised warp f(u)/alpha for every football."""
    fig, (ax_k, ax_f) = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    for k, p in enumerate(profiles):
        label = f"F{k} ({format_number(p.spec.alpha)}, {format_number(p.spec.beta)})"
        ax_k.plot(p.u, p.k, lw=1.2, label=label)
        ax_f.plot(p.u, p.f / float(p.spec.alpha), lw=1.2, label=label)
    ax_k.set_xlabel("u")
    ax_k.set_ylabel("K")
    ax_f.set_xlabel("u")
    ax_f.set_ylabel("f / alpha")
    for ax in (ax_k, ax_f):
        ax.grid(alpha=0.3)
    if len(profiles) <= 8:
        ax_f.legend(fontsize=8)
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)


def plot_residuals(report, path):
    """Residual against tolerance for every check that has a nonzero tolerance."""
    rows = [c for c in report.checks if c.tolerance > 0]
    if not rows:
        return False
    fig, ax = plt.subplots(figsize=(8, 0.3 * len(rows) + 1.5), constrained_layout=True)
    y = np.arange(len(rows))
    floor = 1e-18
    res = [max(c.residual, floor) for c in rows]
    tol = [c.tolerance for c in rows]
    colors = ["tab:green" if c.passed else "tab:red" for c in rows]
    ax.barh(y, res, color=colors, alpha=0.8, label="residual")
    ax.scatter(tol, y, marker="|", s=200, color="k", label="tolerance")
    ax.set_xscale("log")
    ax.set_yticks(y)
    ax.set_yticklabels([c.name for c in rows], fontsize=7)
    ax.invert_yaxis()
    ax.legend(fontsize=8, loc="lower right")
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)
    return True
