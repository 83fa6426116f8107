"""Numerical toolkit for modulation and Triebel-Lizorkin spaces and their embeddings.

Submodules
----------
grid
    Periodic sampling grids, Fourier transforms and weighted ``L_p`` norms.
decomposition
    Frequency-uniform and dyadic partitions of unity.
norms
    Modulation, Besov and Triebel-Lizorkin (quasi-)norms and sequence norms.
embedding
    Exact rational decision procedures for the embedding conditions.
witnesses
    Extremal families, ratio experiments and atoms.
checks
    Named verification suites.
"""

__version__ = "0.1.0"

from .decomposition import build_dyadic_family, build_uniform_family
from .embedding import EmbeddingVerdict, region_scan, thm1_M_into_F, thm2_F_into_M
from .grid import Grid, SampledFunction, make_grid, sample_function
from .norms import besov_norm, modulation_norm_discrete, modulation_norm_stft, triebel_lizorkin_norm
from .params import INF, SpaceParams, parse_exponent, parse_point

__all__ = [
    "INF", "EmbeddingVerdict", "Grid", "SampledFunction", "SpaceParams", "besov_norm", "build_dyadic_family",
    "build_uniform_family", "make_grid", "modulation_norm_discrete", "modulation_norm_stft", "parse_exponent",
    "parse_point", "region_scan", "sample_function", "thm1_M_into_F", "thm2_F_into_M", "triebel_lizorkin_norm",
]
