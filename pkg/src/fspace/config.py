"""Numerical tolerances and calibrated constants.

The band constants are not theoretical values. They were fixed from pilot
runs and are the numbers every band assertion is checked against.
"""

from __future__ import annotations

# Energy fraction allowed outside the active windows before a norm refuses to run.
LEAKAGE_TOL = 1e-10

# Two-sided bands [1/C, C] for equivalence ("~") checks.
BAND_GN_MODULATION = 2.0
BAND_DEFAULT = 4.0
BAND_LOCALIZATION = 4.0
BAND_STFT = 4.0
BAND_RHO = 4.0
BAND_GAMMA = 4.0

# Relative change allowed between N=16 and N=32 for the almost-orthogonal F-norm limit.
STABILIZATION_TOL = 0.20
ALMOST_ORTHOGONAL_GAP = 0.05

# Divergence heuristic for ratio series.
MONOTONE_TOL = 0.05
DIVERGENCE_FACTOR = 10.0
BOUNDED_FACTOR = 2.0

# Refinement drift allowed when the grid is doubled.
REFINEMENT_DRIFT = 0.10
# Spread allowed across scales for the scaled atom quantity.
ATOM_SCALE_SPREAD = 4.0

# Spectral bump profile exp(-a / (1 - t^2)) for extremal building blocks.
# a = 6 concentrates |g|^p in space much better than a = 1 when p < 1.
WITNESS_SHARPNESS = 6.0
GN_BUMP_RADIUS = 1 / 8
H_BUMP_RADIUS = 1 / 16

# Atom generator safety margin (fraction of the allowed derivative bound).
ATOM_MARGIN = 0.5
ATOM_DERIVATIVE_SLACK = 0.01
ATOM_MOMENT_TOL = 1e-8

# Desk-scale defaults.
DEFAULT_GRID_1D = (1, 64, 2 ** 14)
DEFAULT_GRID_2D = (2, 32, 2 ** 8)
FN_START_SHELL = 2
# largest total sample count a grid may have (memory guard)
MAX_GRID_POINTS = 2 ** 22

# STFT frequency stride aims at a sample spacing of about 1/8 in xi.
STFT_XI_SPACING = 1 / 8


def as_dict() -> dict:
    return {k: v for k, v in globals().items() if k.isupper()}
