"""Named verification suites shared by the command line and the acceptance tests.

Every suite takes a seed and returns :class:`CheckRow` records in a fixed
order, so a report built from them is reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import config
from .decomposition import build_dyadic_family, build_uniform_family, partition_check
from .grid import Grid, SampledFunction, _inv, make_grid
from .norms import modulation_norm_discrete, seq_norm_dyadic, seq_norm_uniform, triebel_lizorkin_norm
from .params import INF, SpaceParams
from .witnesses import atoms as atm
from .witnesses import experiments as exp
from .witnesses import families as fam


@dataclass(frozen=True)
class CheckRow:
    suite: str
    case: str
    value: float
    threshold: float
    passed: bool


def default_grid(n_dim: int = 1) -> Grid:
    return make_grid(*(config.DEFAULT_GRID_1D if n_dim == 1 else config.DEFAULT_GRID_2D))


def random_band_limited(grid: Grid, rng: np.random.Generator, radius_range=(0.5, 8.0)) -> SampledFunction:
    """A few random bumps in frequency, all inside the represented lattice windows.

    Returned in the frequency domain.
    """
    family = build_uniform_family(grid)
    reach = family.active_range - 1
    spec = np.zeros(grid.shape, dtype=complex)
    for _ in range(int(rng.integers(1, 5))):
        radius = float(rng.uniform(*radius_range))
        radius = min(radius, reach / 2)
        center = rng.uniform(-(reach - radius), reach - radius, grid.n_dim)
        amp = complex(rng.normal(), rng.normal())
        spec += amp * fam.bump_spectrum(grid, center, radius, sharpness=1.0)
    return SampledFunction(grid, spec, "frequency")


def partition(seed: int = 0) -> list[CheckRow]:
    rows = []
    for n_dim in (1, 2):
        grid = default_grid(n_dim)
        for name, family in (("uniform", build_uniform_family(grid)), ("dyadic", build_dyadic_family(grid))):
            dev = partition_check(family)
            rows.append(CheckRow("partition", f"{name} n={n_dim}", dev, 1e-10, dev < 1e-10))
    return rows


def reconstruction(seed: int = 0, count: int = 200) -> list[CheckRow]:
    """``||sum_k box_k f - f||_2 / ||f||_2`` over random band-limited inputs."""
    grid = default_grid(1)
    family = build_uniform_family(grid)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        spec = random_band_limited(grid, rng).values
        acc = np.zeros(grid.shape, dtype=complex)
        for k in family.active_indices:
            acc += family.apply(spec, k)
        err = np.linalg.norm(_inv(acc - spec, grid)) / np.linalg.norm(_inv(spec, grid))
        worst = max(worst, float(err))
    return [CheckRow("reconstruction", f"max relative error over {count}", worst, 1e-8, worst < 1e-8)]


LOCALIZATION_PAIRS = (("1/2", "1/2"), ("1/2", "inf"), ("1", "1"), ("1", "2"))


def localization(seed: int = 0) -> list[CheckRow]:
    """Corpus spread ``max/min`` of the localization ratio, per ``(p, q)``."""
    grid = default_grid(1)
    family = build_uniform_family(grid)
    corpus = exp.localization_corpus(grid, seed)
    rows = []
    for p, q in LOCALIZATION_PAIRS:
        ratios = [exp.localization_check(f, p, q, c, r, family) for f, c, r in corpus]
        spread = max(ratios) / min(ratios)
        rows.append(CheckRow("localization", f"p={p} q={q} spread", spread, config.BAND_LOCALIZATION,
                             spread <= config.BAND_LOCALIZATION))
    return rows


BAND_PARAMS = (
    SpaceParams(1, "1/2", "1/2", 2, 0),
    SpaceParams(1, "1/2", 2, "1/2", 1),
    SpaceParams(1, 1, INF, 1, -1),
    SpaceParams(1, 1, 1, 2, "1/2"),
)


def _m_norm(f, params):
    return modulation_norm_discrete(f, params, build_uniform_family(f.grid))


def _f_norm(f, params):
    return triebel_lizorkin_norm(f, params.replace(s=0), build_dyadic_family(f.grid))


def _band_row(name: str, params: SpaceParams, ratios) -> CheckRow:
    spread = max(ratios) / min(ratios)
    return CheckRow("bands", f"{name} {params.label()} spread", spread, config.BAND_DEFAULT,
                    spread <= config.BAND_DEFAULT)


def bands(seed: int = 0) -> list[CheckRow]:
    """Spread of each family's norm over its predicted sequence norm, per parameter point.

    GN: blocks and critical power weights with ``|k| <= 2, 4`` at ``N = 8, 16, 32``.
    FN: unit coefficients on shells ``2..J`` for ``J = 3, 4, 5`` at the same ``N``.
    H: unit coefficients on shells ``0..J`` for ``J = 1..5``.
    """
    rows = []
    for params in BAND_PARAMS:
        n, s = params.n, float(params.s)
        gn = []
        t = s + float(n * params.inv_q)
        for K in (2, 4):
            for a in ({k: 1.0 for k in range(-K, K + 1)}, {k: (1.0 + k * k) ** (-t / 2) for k in range(-K, K + 1)}):
                for N in (8, 16, 32):
                    f = fam.build_GN(a, N, fam.grid_for_GN(K, N), domain="frequency")
                    gn.append(_m_norm(f, params) / seq_norm_uniform(a, params.q, params.s))
        rows.append(_band_row("GN M", params, gn))

        fn_m, fn_f = [], []
        for top in (3, 4, 5):
            b = {j: 1.0 for j in range(config.FN_START_SHELL, top + 1)}
            for N in (8, 16, 32):
                span = N * (top - config.FN_START_SHELL + 1)
                grid = fam.grid_for_shells(5, extent=fam._next_pow2(max(span, 64)))
                f = fam.build_FN(b, N, config.FN_START_SHELL, grid, domain="frequency")
                fn_m.append(_m_norm(f, params) / seq_norm_dyadic(b, params.q, s + float(n * params.inv_q)))
                fn_f.append(_f_norm(f, params) / seq_norm_dyadic(b, params.p, float(n * (1 - params.inv_p))))
        rows.append(_band_row("FN M", params, fn_m))
        rows.append(_band_row("FN F", params, fn_f))

        h_m, h_f = [], []
        grid = fam.grid_for_shells(5, extent=128)
        flat = params.replace(s=0)
        for top in range(1, 6):
            a = {j: 1.0 for j in range(0, top + 1)}
            f = fam.build_H(a, grid, domain="frequency")
            h_m.append(_m_norm(f, flat) / seq_norm_dyadic(a, params.q, 0))
            h_f.append(_f_norm(f, flat) / seq_norm_dyadic(a, params.r, 0))
        rows.append(_band_row("H M", params, h_m))
        rows.append(_band_row("H F", params, h_f))
    return rows


def gamma(seed: int = 0) -> list[CheckRow]:
    rows = []
    for j in (3, 4, 5):
        c = fam.gamma_counts(j, fam.grid_for_shells(j))
        ratio = c.meeting / 2 ** j
        ok = c.reliable and 1 / config.BAND_GAMMA <= ratio <= config.BAND_GAMMA
        rows.append(CheckRow("gamma", f"j={j} |Gamma|/2^j", ratio, config.BAND_GAMMA, ok))
    return rows


def atoms(seed: int = 0) -> list[CheckRow]:
    rows = []
    grid = make_grid(1, *atm.DEFAULT_ATOM_GRID)
    for p in ("1/2", "1"):
        s = 2 / atm.parse_exponent(p) - 1
        specs = [atm.AtomSpec(0, (k,), "s", s, p) for k in (-1, 0, 1)]
        specs += [atm.AtomSpec(nu, (0,), "Q", s, p) for nu in range(5)]
        for spec in specs:
            report = atm.validate_atom(atm.make_test_atom(spec, grid), spec)
            rows.append(CheckRow("atoms", f"p={p} {spec.kind} nu={spec.nu} k={spec.k[0]}", float(report.passed), 1.0,
                                 report.passed))
        res = atm.atom_modulation_bound_experiment(p, grid=grid)
        rows.append(CheckRow("atoms", f"p={p} scaled spread", res.spread, config.ATOM_SCALE_SPREAD,
                             res.spread < config.ATOM_SCALE_SPREAD))
    return rows


def _drift(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def bernstein(seed: int = 0) -> list[CheckRow]:
    maxima = []
    for M in (2 ** 13, 2 ** 14):
        grid = make_grid(1, 64, M)
        maxima.append(max(exp.bernstein_check(f, "1/2") for f in exp.bernstein_corpus(grid, 20, seed)))
    d = _drift(*maxima)
    return [CheckRow("bernstein", "p=1/2 corpus max drift", d, config.REFINEMENT_DRIFT, d < config.REFINEMENT_DRIFT)]


def convolution(seed: int = 0) -> list[CheckRow]:
    radii = (1, 2, 4, 8)
    sweeps = [exp.convolution_constant_sweep("1/2", radii, make_grid(1, 64, M), 20, seed) for M in (2 ** 13, 2 ** 14)]
    rows = []
    fine = sweeps[1].max_constants
    spread = max(fine.values()) / min(fine.values())
    rows.append(CheckRow("convolution", "p=1/2 spread over R", spread, config.BAND_DEFAULT,
                         spread < config.BAND_DEFAULT))
    for R in radii:
        d = _drift(sweeps[0].max_constants[R], fine[R])
        rows.append(CheckRow("convolution", f"R={R} refinement drift", d, config.REFINEMENT_DRIFT,
                             d < config.REFINEMENT_DRIFT))
    return rows


SUITES: dict[str, Callable[[int], list[CheckRow]]] = {
    "partition": partition,
    "reconstruction": reconstruction,
    "localization": localization,
    "bands": bands,
    "gamma": gamma,
    "atoms": atoms,
    "bernstein": bernstein,
    "convolution": convolution,
}


def run_suites(names, seed: int = 0) -> list[CheckRow]:
    rows = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        rows.extend(SUITES[name](seed))
    return rows


def all_passed(rows) -> bool:
    return all(r.passed for r in rows) and not any(math.isnan(r.value) for r in rows)
