"""Smooth atoms on dyadic cubes: generator, validator and the modulation bound experiment."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .. import config
from ..decomposition import build_uniform_family
from ..embedding import AtomOrders, atom_orders
from ..errors import OrthogonalizationError
from ..grid import Bump, Grid, SampledFunction, _fwd, _inv, make_grid, sample_function
from ..norms import modulation_norm_discrete
from ..params import INF, SpaceParams, parse_exponent, reciprocal

DEFAULT_ATOM_GRID = (32, 2 ** 15)


@dataclass(frozen=True)
class AtomSpec:
    """Atom attached to the cube ``Q_{nu,k}`` (side ``2^-nu``, centre ``2^-nu k``).

    ``kind="s"`` asks for derivative bounds ``|D^alpha a| <= 1``;
    ``kind="Q"`` for ``|D^alpha a| <= |Q|^(-1/q + s/n - |alpha|/n)`` together
    with vanishing moments up to order ``L``.
    """

    nu: int
    k: tuple
    kind: Literal["s", "Q"]
    s: Fraction
    p: Fraction
    q: object = INF
    orders: AtomOrders | None = None

    def __post_init__(self):
        if int(self.nu) != self.nu or self.nu < 0:
            raise ValueError("nu must be a natural number")
        if self.kind not in ("s", "Q"):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == "s" and self.nu != 0:
            raise ValueError("s-atoms live on unit cubes (nu = 0)")
        k = tuple(int(v) for v in np.atleast_1d(self.k))
        object.__setattr__(self, "k", k)
        for name in ("s", "p", "q"):
            object.__setattr__(self, name, parse_exponent(getattr(self, name)))
        if self.orders is None:
            object.__setattr__(self, "orders", atom_orders(self.s, self.p, self.n))

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def side(self) -> float:
        return 2.0 ** (-self.nu)

    @property
    def center(self) -> tuple:
        return tuple(self.side * v for v in self.k)

    @property
    def volume(self) -> float:
        return self.side ** self.n

    def bound(self, order: int) -> float:
        """Allowed ``sup |D^alpha a|`` for ``|alpha| = order``."""
        if self.kind == "s":
            return 1.0
        exponent = -float(reciprocal(self.q)) + float(self.s) / self.n - order / self.n
        return self.volume ** exponent


def _multi_indices(n: int, max_order: int):
    for alpha in itertools.product(range(max_order + 1), repeat=n):
        if sum(alpha) <= max_order:
            yield alpha


def spectral_derivative(values: np.ndarray, grid: Grid, alpha) -> np.ndarray:
    spec = _fwd(values, grid)
    factor = 1.0
    for c, a in zip(grid.coords("frequency"), alpha):
        if a:
            factor = factor * (2j * np.pi * c) ** a
    return _inv(spec * factor, grid)


def _local_coords(grid: Grid, center, scale):
    return tuple((c - c0) / scale for c, c0 in zip(grid.coords("space"), center))


def _moment(values, grid, y, beta) -> complex:
    w = 1.0
    for yi, b in zip(y, beta):
        if b:
            w = w * yi ** b
    return complex(np.sum(values * w) * grid.cell_volume)


def make_test_atom(spec: AtomSpec, grid: Grid | None = None) -> SampledFunction:
    """Generate an atom satisfying ``spec`` with margin ``config.ATOM_MARGIN``.

    The profile is a bump of radius ``2 * side`` (inside ``5Q``). For Q-atoms
    it is multiplied by a polynomial of degree ``L + 1`` whose lower
    coefficients cancel every moment of order ``<= L``.

    Raises
    ------
    OrthogonalizationError
        If the moment system is numerically singular.
    """
    grid = grid or make_grid(spec.n, *DEFAULT_ATOM_GRID)
    radius = 2.0 * spec.side
    bump = sample_function(Bump(radius, spec.center), grid).values.real
    values = bump
    if spec.kind == "Q":
        L = spec.orders.L_min
        y = _local_coords(grid, spec.center, radius)
        free = list(_multi_indices(spec.n, L))
        lead = (L + 1,) + (0,) * (spec.n - 1)

        def mono(gamma):
            out = 1.0
            for yi, g in zip(y, gamma):
                out = out * yi ** g
            return out

        basis = [bump * mono(g) for g in free]
        target = bump * mono(lead)
        A = np.array([[_moment(b, grid, y, beta).real for b in basis] for beta in free])
        rhs = -np.array([_moment(target, grid, y, beta).real for beta in free])
        if not np.all(np.isfinite(A)) or np.linalg.cond(A) > 1e13:
            raise OrthogonalizationError("moment matrix is singular")
        coef = np.linalg.solve(A, rhs)
        values = target + sum(c * b for c, b in zip(coef, basis))
    worst = math.inf
    for alpha in _multi_indices(spec.n, spec.orders.K_min):
        peak = float(np.max(np.abs(spectral_derivative(values, grid, alpha))))
        if peak > 0:
            worst = min(worst, spec.bound(sum(alpha)) / peak)
    scale = config.ATOM_MARGIN * worst
    return SampledFunction(grid, values * scale, "space")


@dataclass(frozen=True)
class AtomReport:
    support: bool
    derivatives: bool
    moments: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.support and self.derivatives and self.moments


def validate_atom(a: SampledFunction, spec: AtomSpec) -> AtomReport:
    """Check support in ``5Q``, derivative bounds up to ``K`` and (Q-atoms) moments up to ``L``.

    Derivatives are spectral and allowed ``config.ATOM_DERIVATIVE_SLACK``
    relative slack. Moments are taken about the cube centre, which is
    equivalent once all lower moments vanish, and must be below
    ``config.ATOM_MOMENT_TOL`` times ``int |y^beta a|``.
    """
    grid = a.grid
    details = {}
    half = 2.5 * spec.side
    outside = np.zeros(grid.shape, dtype=bool)
    for c, c0 in zip(grid.coords("space"), spec.center):
        outside = outside | (np.abs(c - c0) > half)
    support = not np.any(a.values[outside] != 0)
    details["support_max_outside"] = float(np.max(np.abs(a.values[outside]), initial=0.0))

    derivatives = True
    for alpha in _multi_indices(spec.n, spec.orders.K_min):
        peak = float(np.max(np.abs(spectral_derivative(a.values, grid, alpha))))
        allowed = spec.bound(sum(alpha)) * (1 + config.ATOM_DERIVATIVE_SLACK)
        details[f"D{alpha}"] = peak / spec.bound(sum(alpha))
        derivatives &= peak <= allowed

    moments = True
    if spec.kind == "Q":
        y = _local_coords(grid, spec.center, 1.0)
        for beta in _multi_indices(spec.n, spec.orders.L_min):
            m = abs(_moment(a.values, grid, y, beta))
            scale = abs(_moment(np.abs(a.values), grid, tuple(np.abs(v) for v in y), beta))
            details[f"m{beta}"] = m / scale if scale else 0.0
            moments &= m <= config.ATOM_MOMENT_TOL * scale
    return AtomReport(support, derivatives, moments, details)


@dataclass(frozen=True)
class AtomBoundResult:
    p: Fraction
    nus: tuple
    norms: tuple
    scaled: tuple
    s_atom_max: float

    @property
    def spread(self) -> float:
        return max(self.scaled) / min(self.scaled)


def atom_modulation_bound_experiment(
    p, nus: Sequence[int] = (0, 1, 2, 3, 4), n: int = 1, grid: Grid | None = None, s_atom_count: int = 5
) -> AtomBoundResult:
    """``M_{p,p}`` norms of atoms at the critical smoothness ``n(2/p - 1)``.

    For Q-atoms on ``Q_nu`` the reported scaled quantity is
    ``||a_nu||_{M_{p,p}} * |Q_nu|^(-1/p)``: the atom weighted by the largest
    admissible coefficient ``|Q_nu|^(-1/p)``, which should stay bounded in ``nu``.
    """
    p = parse_exponent(p)
    if p > 1:
        raise ValueError("the atom estimate concerns p <= 1")
    s = n * (2 / p - 1)
    grid = grid or make_grid(n, *DEFAULT_ATOM_GRID)
    family = build_uniform_family(grid)
    params = SpaceParams(n, p, p, 2, 0)
    norms, scaled = [], []
    for nu in nus:
        spec = AtomSpec(nu, (0,) * n, "Q", s, p, INF)
        a = make_test_atom(spec, grid)
        m = modulation_norm_discrete(a, params, family)
        norms.append(m)
        scaled.append(m * spec.volume ** (-1 / float(p)))
    s_max = 0.0
    for i in range(s_atom_count):
        spec = AtomSpec(0, (i - s_atom_count // 2,) + (0,) * (n - 1), "s", s, p, INF)
        s_max = max(s_max, modulation_norm_discrete(make_test_atom(spec, grid), params, family))
    return AtomBoundResult(p, tuple(nus), tuple(norms), tuple(scaled), s_max)
