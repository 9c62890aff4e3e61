"""Finite-difference derivatives on non-uniform grids.

Stencil weights come from Fornberg's recursion, so any point set and
derivative order works. With ``m+1`` points the ``d``-th derivative is
accurate to order ``m+1-d`` on a smoothly varying grid.
"""

from __future__ import annotations

import numpy as np


def fornberg_weights(x0, x, deriv):
    """Weights ``w`` such that ``sum(w * f(x))`` approximates ``f^(deriv)(x0)``.

    ``x0`` may be an array of shape ``(m,)`` with ``x`` of shape
    ``(m, width)``; the result then has shape ``(m, width)``.
    """
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    n = x.shape[-1]
    if deriv >= n:
        raise ValueError(f"need more than {deriv} points for derivative {deriv}")
    c = np.zeros(x0.shape + (n, deriv + 1))
    c[..., 0, 0] = 1.0
    c1 = np.ones_like(x0)
    c4 = x[..., 0] - x0
    for i in range(1, n):
        mn = min(i, deriv)
        c2 = np.ones_like(x0)
        c5 = c4
        c4 = x[..., i] - x0
        for j in range(i):
            c3 = x[..., i] - x[..., j]
            c2 = c2 * c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[..., i, k] = c1 * (k * c[..., i - 1, k - 1] - c5 * c[..., i - 1, k]) / c2
                c[..., i, 0] = -c1 * c5 * c[..., i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[..., j, k] = (c4 * c[..., j, k] - k * c[..., j, k - 1]) / c3
            c[..., j, 0] = c4 * c[..., j, 0] / c3
        c1 = c2
    return c[..., deriv]


def derivative(u, y, deriv=1, width=None, indices=None):
    """Approximate ``d^deriv y / du^deriv`` at the requested sample indices.

    ``width`` is the stencil size (default ``deriv + 2``, giving second
    order). Stencils are centred where possible and slide inward at the
    ends, so endpoint values are one-sided.
    """
    u = np.asarray(u, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(u)
    width = deriv + 2 if width is None else width
    if width > n:
        raise ValueError(f"stencil width {width} exceeds {n} samples")
    idx = np.arange(n) if indices is None else np.asarray(list(indices), dtype=int)
    lo = np.clip(idx - (width - 1) // 2, 0, n - width)
    window = lo[:, None] + np.arange(width)
    w = fornberg_weights(u[idx], u[window], deriv)
    return np.sum(w * y[window], axis=1)
