"""Ratio experiments, sharpness probes and norm-estimate checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .. import config
from ..decomposition import build_dyadic_family, build_uniform_family
from ..embedding import EmbeddingVerdict, resolve_theorem, thm1_M_into_F, thm2_F_into_M
from ..errors import DegenerateExperimentError, GeometryError
from ..grid import Bump, Grid, SampledFunction, _fwd, _inv, bracket, forward_spectrum, lp_norm, lp_norm_array, sample_function
from ..norms import modulation_norm_discrete, seq_norm_dyadic, seq_norm_uniform, triebel_lizorkin_norm
from ..params import INF, SpaceParams, parse_exponent, reciprocal, to_float
from . import families as fam

# ---------------------------------------------------------------------------
# ratio series


def classify(ratios: Sequence[float]) -> tuple[str, float]:
    """``("diverging", g)`` when ratios grow monotonically (5% slack) by ``g >= 10``."""
    growth = ratios[-1] / ratios[0]
    monotone = all(b >= (1.0 - config.MONOTONE_TOL) * a for a, b in zip(ratios, ratios[1:]))
    label = "diverging" if monotone and growth >= config.DIVERGENCE_FACTOR else "bounded"
    return label, growth


@dataclass(frozen=True)
class RatioSeries:
    schedule: tuple
    numerators: tuple
    denominators: tuple
    ratios: tuple
    classification: str
    growth_factor: float
    label: str = ""

    def rows(self):
        for step, a, b, r in zip(self.schedule, self.numerators, self.denominators, self.ratios):
            yield {"step": step, "numerator": a, "denominator": b, "ratio": r}


def ratio_experiment(
    build: Callable[[object], SampledFunction],
    numerator: Callable[[SampledFunction], float],
    denominator: Callable[[SampledFunction], float],
    schedule: Sequence,
    label: str = "",
) -> RatioSeries:
    """Evaluate ``numerator(f) / denominator(f)`` for ``f = build(step)`` along ``schedule``.

    Raises
    ------
    DegenerateExperimentError
        If any denominator vanishes or any ratio is not finite.
    """
    if len(schedule) < 2:
        raise ValueError("a ratio series needs at least two steps")
    nums, dens, ratios = [], [], []
    for step in schedule:
        f = build(step)
        a, b = float(numerator(f)), float(denominator(f))
        if b == 0.0 or not math.isfinite(a) or not math.isfinite(b):
            raise DegenerateExperimentError(f"step {step}: numerator {a}, denominator {b}")
        nums.append(a)
        dens.append(b)
        ratios.append(a / b)
    if ratios[0] == 0.0:
        raise DegenerateExperimentError("first ratio is zero")
    label_, growth = classify(ratios)
    return RatioSeries(tuple(schedule), tuple(nums), tuple(dens), tuple(ratios), label_, growth, label)


# ---------------------------------------------------------------------------
# witness plans


@dataclass(frozen=True)
class WitnessPlan:
    """A family, a coefficient pattern, and the schedule it grows along."""

    family: str
    pattern: str
    schedule: tuple
    separation: int = 0

    @property
    def name(self) -> str:
        return f"{self.family}-{self.pattern}"

    def coeffs(self, step, params: SpaceParams | None = None) -> dict:
        if self.family == "GN":
            if self.pattern == "delta":
                return {step: 1.0}
            if self.pattern == "block":
                return {k: 1.0 for k in range(-step, step + 1)}
            if self.pattern == "power":
                t = float(params.s) + float(params.n * params.inv_q)
                return {k: float(bracket(abs(k), -t)) for k in range(-step, step + 1)}
        if self.family == "FN":
            if self.pattern == "delta":
                return {step: 1.0}
            if self.pattern == "block":
                return {j: 1.0 for j in range(config.FN_START_SHELL, step + 1)}
        if self.family == "H":
            if self.pattern == "delta":
                return {step: 1.0}
            if self.pattern == "block":
                return {j: 1.0 for j in range(0, step + 1)}
        raise ValueError(f"unknown plan {self.name}")

    def grid(self, step) -> Grid:
        return _plan_grid(self.family, self.pattern, self.separation, step, self.schedule[-1])

    def build(self, step, params: SpaceParams | None = None) -> SampledFunction:
        grid = self.grid(step)
        spec = fam.ExtremalSpec(self.family, self.coeffs(step, params), grid, separation=self.separation)
        return spec.build(domain="frequency")


@lru_cache(maxsize=None)
def _plan_grid(family, pattern, separation, step, last) -> Grid:
    if family == "GN" and pattern == "delta":
        return fam.grid_for_GN(last, 0)
    if family == "GN":
        return fam.grid_for_GN(step, separation)
    if family == "FN" and pattern == "delta":
        return fam.grid_for_shells(last, extent=64)
    if family == "FN":
        span = separation * (last - config.FN_START_SHELL + 1)
        return fam.grid_for_shells(last, extent=fam._next_pow2(max(span, 64)))
    return fam.grid_for_shells(last, extent=128)


PLANS = (
    WitnessPlan("GN", "delta", (4, 8, 16, 32, 64, 128)),
    WitnessPlan("GN", "block", (2, 4, 8, 16, 32), separation=32),
    WitnessPlan("GN", "power", (2, 4, 8, 16, 32), separation=32),
    WitnessPlan("FN", "delta", (2, 3, 4, 5, 6, 7, 8)),
    WitnessPlan("FN", "block", (3, 4, 5, 6, 7, 8), separation=16),
    WitnessPlan("H", "delta", (1, 2, 3, 4, 5, 6, 7, 8)),
    WitnessPlan("H", "block", (1, 2, 3, 4, 5, 6, 7, 8)),
)


def predicted_norms(plan: WitnessPlan, step, params: SpaceParams) -> tuple[float, float]:
    """Sequence-space predictions ``(M-norm, F-norm)`` for one step, up to constants."""
    a = plan.coeffs(step, params)
    n, q, r, s = params.n, params.q, params.r, params.s
    if plan.family == "GN":
        return seq_norm_uniform(a, q, s), seq_norm_uniform(a, params.p, 0)
    if plan.family == "FN":
        return (
            seq_norm_dyadic(a, q, float(s) + float(n * params.inv_q)),
            seq_norm_dyadic(a, params.p, float(n * (1 - params.inv_p))),
        )
    return seq_norm_dyadic(a, q, s), seq_norm_dyadic(a, r, 0)


def predicted_ratios(plan: WitnessPlan, theorem: str, params: SpaceParams) -> list[float]:
    out = []
    for step in plan.schedule:
        m, f = predicted_norms(plan, step, params)
        out.append(f / m if theorem == "1.1" else m / f)
    return out


def select_witness(theorem: str, params: SpaceParams) -> tuple[WitnessPlan, float]:
    """Plan with the largest predicted growth over its schedule."""
    theorem = resolve_theorem(theorem)
    best = None
    for plan in PLANS:
        if plan.family == "GN" and params.n != 1 and plan.pattern != "delta":
            continue
        r = predicted_ratios(plan, theorem, params)
        growth = r[-1] / r[0]
        if best is None or growth > best[1]:
            best = (plan, growth)
    return best


def norm_pair(theorem: str, params: SpaceParams):
    """``(numerator, denominator)`` callables for the embedding ratio of ``theorem``."""
    theorem = resolve_theorem(theorem)
    f_params = params.replace(s=0)

    def m_norm(f):
        return modulation_norm_discrete(f, params, build_uniform_family(f.grid))

    def f_norm(f):
        return triebel_lizorkin_norm(f, f_params, build_dyadic_family(f.grid))

    if theorem == "1.1":
        return f_norm, m_norm
    if theorem == "1.2":
        return m_norm, f_norm
    raise ValueError("ratio experiments are defined for theorems 1.1 and 1.2")


def run_plan(plan: WitnessPlan, theorem: str, params: SpaceParams, schedule: Sequence | None = None) -> RatioSeries:
    num, den = norm_pair(theorem, params)
    return ratio_experiment(
        lambda step: plan.build(step, params), num, den, tuple(schedule or plan.schedule),
        label=f"{plan.name} thm{resolve_theorem(theorem)} {params.label()}",
    )


@dataclass(frozen=True)
class SharpnessResult:
    theorem: str
    params: SpaceParams
    verdict: EmbeddingVerdict
    plan: str
    predicted_growth: float
    series: RatioSeries | None

    @property
    def expected(self) -> str:
        return "bounded" if self.verdict.holds else "diverging"

    @property
    def agrees(self) -> bool | None:
        if self.series is None:
            return None
        return self.series.classification == self.expected


def sharpness_probe(theorem: str, params: SpaceParams, run: bool = True) -> SharpnessResult:
    """Compare the predicate with the most aggressive witness at one parameter point.

    Boundary points are reported with ``series=None`` (inconclusive by design).
    """
    theorem = resolve_theorem(theorem)
    verdict = (thm1_M_into_F if theorem == "1.1" else thm2_F_into_M)(params)
    plan, growth = select_witness(theorem, params)
    series = None
    if run and not verdict.boundary:
        series = run_plan(plan, theorem, params)
    return SharpnessResult(theorem, params, verdict, plan.name, growth, series)


def _spread(cells: list, count: int) -> list:
    if count >= len(cells):
        return list(cells)
    idx = np.linspace(0, len(cells) - 1, count).round().astype(int)
    return [cells[i] for i in idx]


def sharpness_grid(n_points: int = 50) -> list[tuple[str, SpaceParams]]:
    """Rational 1-D test points off every boundary, split evenly between the two theorems.

    Exponents sit on a unit lattice aligned with the critical lines, so every
    non-boundary point is at distance at least one from them. Within each
    theorem half the points are embeddings and half are not.
    """
    out = []
    for theorem, count in (("1.1", n_points // 2), ("1.2", n_points - n_points // 2)):
        pred = thm1_M_into_F if theorem == "1.1" else thm2_F_into_M
        holds, fails = [], []
        for p, iq, r, s in itertools.product(("1/2", "1"), (0, 1, 2, 3), ("1/4", "1/2", "2"), range(-6, 4)):
            params = SpaceParams(1, parse_exponent(p), INF if iq == 0 else Fraction(1, iq), parse_exponent(r), s)
            verdict = pred(params)
            if not verdict.boundary:
                (holds if verdict.holds else fails).append(params)
        n_holds = min(len(holds), count // 2)
        out.extend((theorem, c) for c in _spread(holds, n_holds))
        out.extend((theorem, c) for c in _spread(fails, count - n_holds))
    return out


# ---------------------------------------------------------------------------
# sequence-space boundedness


def sequence_probe(q1, s1, q2, s2, n: int = 1, kind: str = "uniform") -> tuple[str, float]:
    """Empirical inclusion test ``l_{q1}^{s1} in l_{q2}^{s2}`` on truncated extremal sequences.

    Returns the classification of the fastest-growing pattern and its growth.
    """
    q1, q2 = parse_exponent(q1), parse_exponent(q2)
    s1, s2 = float(parse_exponent(s1)), float(parse_exponent(s2))
    if kind == "uniform":
        sizes = (4, 16, 64, 256, 1024)
        norm = seq_norm_uniform
        patterns = {
            "delta": lambda K: {K: 1.0},
            "block": lambda K: {k: 1.0 for k in range(-K, K + 1)},
            "power": lambda K: {k: float(bracket(abs(k), -(n * float(reciprocal(q2)) + s2))) for k in range(-K, K + 1)},
        }
    else:
        # b_j -> 2^(j s2) b_j maps l_{q2}^{s2} isometrically onto l_{q2}^0, so probe the
        # unweighted target against weight s1 - s2; this leaves room for long blocks
        # (sqrt-type growth needs J ~ 10^3 to reach the divergence factor) without
        # overflowing 2^(j s).
        shift = s1 - s2
        sizes = tuple(J for J in (4, 16, 64, 256, 1024) if J * abs(shift) <= 1000) or (2, 4, 8)
        s1, s2 = shift, 0.0
        norm = seq_norm_dyadic
        patterns = {
            "delta": lambda J: {J: 1.0},
            "block": lambda J: {j: 1.0 for j in range(0, J + 1)},
        }
    best = ("bounded", 0.0)
    for make in patterns.values():
        ratios = [norm(make(K), q2, s2) / norm(make(K), q1, s1) for K in sizes]
        label, growth = classify(ratios)
        if growth > best[1]:
            best = (label, growth)
    return best


# ---------------------------------------------------------------------------
# localization


def localization_check(f: SampledFunction, p, q, center=0.0, radius: float | None = None, family=None) -> float:
    """``||f||_{M_{p,q}} / ||f_hat||_{L_q}`` for ``f`` supported in a ball.

    Raises
    ------
    GeometryError
        If more than 1e-10 of the mass of ``f`` lies outside ``B(center, radius)``.
    """
    grid = f.grid
    if radius is not None:
        c = np.broadcast_to(np.asarray(center, dtype=float), (grid.n_dim,))
        dist = np.sqrt(sum((x - ci) ** 2 for x, ci in zip(grid.coords("space"), c)))
        mass = np.abs(f.values)
        total = float(np.sum(mass))
        if total > 0 and float(np.sum(mass[dist > radius])) > 1e-10 * total:
            raise GeometryError("function is not supported in the stated ball")
    family = family or build_uniform_family(grid)
    params = SpaceParams(grid.n_dim, parse_exponent(p), parse_exponent(q), 2, 0)
    return modulation_norm_discrete(f, params, family) / lp_norm(forward_spectrum(f), to_float(params.q))


def localization_corpus(grid: Grid, seed: int = 0, per_radius: int = 10, radii=(0.25, 0.5, 1.0)):
    """Smooth compactly supported test functions: ``(function, center, radius)`` triples."""
    rng = np.random.default_rng(seed)
    out = []
    span = grid.extent / 8
    for radius in radii:
        for _ in range(per_radius):
            center = tuple(float(round(v / grid.spacing) * grid.spacing) for v in rng.uniform(-span, span, grid.n_dim))
            amp = complex(rng.normal(), rng.normal())
            sharp = float(rng.choice([0.5, 1.0, 2.0]))
            f = sample_function(Bump(radius, center, amp, sharp), grid)
            out.append((f, center, radius))
    return out


# ---------------------------------------------------------------------------
# convolution constants


@dataclass(frozen=True)
class ConvolutionSweep:
    p: float
    radii: tuple
    constants: dict
    max_constants: dict


def _band_limited(grid: Grid, radius: float, center: float, shifts, coeffs) -> np.ndarray:
    bump = fam.bump_spectrum(grid, [center] + [0.0] * (grid.n_dim - 1), radius, sharpness=1.0)
    phase = sum(c * np.exp(-2j * np.pi * grid.coords("frequency")[0] * y) for c, y in zip(coeffs, shifts))
    return _inv(bump * phase, grid)


def convolution_pairs(radius: float, pairs: int, seed: int, extent: float):
    """Deterministic random parameters for band-limited pairs at spectral radius ``radius``."""
    rng = np.random.default_rng([seed, int(radius * 1024)])
    out = []
    for _ in range(pairs):
        pair = []
        for _ in range(2):
            center = float(rng.uniform(-4, 4))
            shifts = rng.uniform(-extent / 16, extent / 16, 2)
            coeffs = rng.normal(size=2) + 1j * rng.normal(size=2)
            pair.append((center, tuple(shifts), tuple(coeffs)))
        out.append(pair)
    return out


def convolution_constant(f: np.ndarray, g: np.ndarray, grid: Grid, p: float, radius: float) -> float:
    conv = _inv(_fwd(np.abs(f), grid) * _fwd(np.abs(g), grid), grid)
    num = lp_norm_array(conv, p, grid.cell_volume)
    den = radius ** (grid.n_dim * (1 / p - 1)) * lp_norm_array(f, p, grid.cell_volume) * lp_norm_array(g, p, grid.cell_volume)
    return num / den


def convolution_constant_sweep(p, radii: Sequence[float], grid: Grid, pairs: int = 20, seed: int = 0) -> ConvolutionSweep:
    """Empirical constants ``|| |f| * |g| ||_p / (R^{n(1/p-1)} ||f||_p ||g||_p)``.

    Each pair has spectra in balls of radius ``R`` around random centres.
    """
    p = to_float(parse_exponent(p)) if not isinstance(p, float) else p
    if not 0 < p < 1:
        raise ValueError("the convolution estimate concerns 0 < p < 1")
    constants = {}
    for R in radii:
        if abs(4 + R) + 1 > grid.max_frequency:
            raise GeometryError(f"radius {R} does not fit the frequency range")
        vals = []
        for (fc, fs, fa), (gc, gs, ga) in convolution_pairs(R, pairs, seed, grid.extent):
            f = _band_limited(grid, R, fc, fs, fa)
            g = _band_limited(grid, R, gc, gs, ga)
            vals.append(convolution_constant(f, g, grid, p, R))
        constants[R] = tuple(vals)
    return ConvolutionSweep(p, tuple(radii), constants, {R: max(v) for R, v in constants.items()})


# ---------------------------------------------------------------------------
# Bernstein multiplier estimate


def derivative_order_cap(p, n: int) -> int:
    return math.floor(n * (reciprocal(parse_exponent(p)) - Fraction(1, 2))) + 1


def bernstein_check(f: SampledFunction, p) -> float:
    """``||F^-1 f||_p / sum_{|gamma| <= cap} ||d^gamma f||_2`` for a spectrum ``f``.

    Derivatives in the frequency variable are taken spectrally, which by
    Parseval means weighting ``F^-1 f`` by ``(2 pi x)^gamma``.
    """
    if f.domain != "frequency":
        raise ValueError("bernstein_check expects a frequency-domain function")
    grid = f.grid
    u = _inv(f.values, grid)
    pp = parse_exponent(p)
    if to_float(pp) > 1:
        raise ValueError("the multiplier estimate concerns 0 < p <= 1")
    cap = derivative_order_cap(pp, grid.n_dim)
    coords = grid.coords("space")
    total = []
    for gamma in itertools.product(range(cap + 1), repeat=grid.n_dim):
        if sum(gamma) > cap:
            continue
        weight = 1.0
        for c, g in zip(coords, gamma):
            weight = weight * (2 * np.pi * c) ** g
        total.append(lp_norm_array(u * weight, 2.0, grid.cell_volume))
    denom = math.fsum(total)
    if denom == 0.0:
        raise DegenerateExperimentError("zero input")
    return lp_norm_array(u, to_float(pp), grid.cell_volume) / denom


def bernstein_corpus(grid: Grid, count: int = 20, seed: int = 0) -> list[SampledFunction]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        center = [float(rng.uniform(-4, 4))] + [0.0] * (grid.n_dim - 1)
        radius = float(rng.uniform(0.5, 2.0))
        amp = complex(rng.normal(), rng.normal())
        out.append(SampledFunction(grid, amp * fam.bump_spectrum(grid, center, radius, 1.0), "frequency"))
    return out
