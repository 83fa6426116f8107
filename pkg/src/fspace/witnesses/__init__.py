"""Extremal families, ratio experiments and atoms."""

from .atoms import AtomReport, AtomSpec, atom_modulation_bound_experiment, make_test_atom, validate_atom
from .experiments import (
    PLANS,
    RatioSeries,
    SharpnessResult,
    WitnessPlan,
    bernstein_check,
    classify,
    convolution_constant_sweep,
    localization_check,
    norm_pair,
    ratio_experiment,
    run_plan,
    select_witness,
    sequence_probe,
    sharpness_grid,
    sharpness_probe,
)
from .families import ExtremalSpec, GammaCounts, build_FN, build_GN, build_H, gamma_counts, grid_for_GN, grid_for_shells

__all__ = [
    "AtomReport", "AtomSpec", "ExtremalSpec", "GammaCounts", "PLANS", "RatioSeries", "SharpnessResult",
    "WitnessPlan", "atom_modulation_bound_experiment", "bernstein_check", "build_FN", "build_GN", "build_H",
    "classify", "convolution_constant_sweep", "gamma_counts", "grid_for_GN", "grid_for_shells",
    "localization_check", "make_test_atom", "norm_pair", "ratio_experiment", "run_plan", "select_witness",
    "sequence_probe", "sharpness_grid", "sharpness_probe", "validate_atom",
]
