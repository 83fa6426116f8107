"""Smooth compactly supported profiles used to build windows and test functions."""

from __future__ import annotations

import numpy as np

# 96 Gauss-Legendre nodes integrate the mollifier to ~1e-16.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(96)


def mollifier(t, sharpness=1.0):
    """``exp(-a / (1 - t**2))`` on ``|t| < 1`` and exactly zero elsewhere."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    ti = t[inside]
    out[inside] = np.exp(-sharpness / (1.0 - ti * ti))
    return out


def _mollifier_integral(upper):
    # integral of mollifier over [-1, upper] for upper in [-1, 1]
    half = (upper + 1.0) / 2.0
    nodes = half[..., None] * (_GL_NODES + 1.0) - 1.0
    return half * (mollifier(nodes) @ _GL_WEIGHTS)


_MOLLIFIER_MASS = float(_mollifier_integral(np.array(1.0)))


def smooth_step(u):
    """C-infinity monotone step: 0 for ``u <= 0``, 1 for ``u >= 1``.

    Between, the normalized integral of the mollifier over ``[-1, 2u - 1]``.
    """
    u = np.asarray(u, dtype=float)
    out = np.where(u >= 1.0, 1.0, 0.0)
    mid = (u > 0.0) & (u < 1.0)
    if np.any(mid):
        out[mid] = _mollifier_integral(2.0 * u[mid] - 1.0) / _MOLLIFIER_MASS
    return out


def logistic_step(u):
    """Closed-form C-infinity step ``e(u) / (e(u) + e(1 - u))`` with ``e(u) = exp(-1/u)``.

    A second admissible transition, used to check that norms do not depend
    on the particular window beyond constants.
    """
    u = np.asarray(u, dtype=float)
    out = np.where(u >= 1.0, 1.0, 0.0)
    mid = (u > 0.0) & (u < 1.0)
    if np.any(mid):
        um = u[mid]
        a = np.exp(-1.0 / um)
        b = np.exp(-1.0 / (1.0 - um))
        out[mid] = a / (a + b)
    return out


STEPS = {"mollifier": smooth_step, "logistic": logistic_step}


def plateau(t, inner, outer, step=smooth_step):
    """1 on ``|t| <= inner``, 0 on ``|t| >= outer``, smooth and monotone between."""
    a = np.abs(np.asarray(t, dtype=float))
    return 1.0 - step((a - inner) / (outer - inner))


def annulus(t, inner, plateau_inner, plateau_outer, outer, step=smooth_step):
    """Radial annulus profile.

    Zero for ``|t| <= inner`` and ``|t| >= outer``, one on
    ``plateau_inner <= |t| <= plateau_outer``.
    """
    a = np.abs(np.asarray(t, dtype=float))
    rise = step((a - inner) / (plateau_inner - inner))
    fall = 1.0 - step((a - plateau_outer) / (outer - plateau_outer))
    return rise * fall
