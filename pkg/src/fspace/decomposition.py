"""Frequency-uniform and dyadic window families.

The uniform family is ``sigma_k = rho(. - k) / sum_l rho(. - l)`` over the
integer lattice. ``sigma_0`` is tabulated once on a small patch around the
origin; because integer frequencies are exact grid points, ``sigma_k`` is
the same patch shifted by ``k * L`` indices.

The dyadic family is ``psi_0 = phi`` and ``psi_j = phi(2^-j .) - phi(2^-(j-1) .)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import profiles
from .errors import DomainTagError, RangeError, ResolutionError
from .grid import Grid, SampledFunction, _fwd, _inv

# rho: 1 on |xi|_inf <= 1/2, 0 on |xi| >= 3/4
RHO_INNER = 0.5
RHO_OUTER = 0.75
# phi: 1 on |xi| <= 4/3, 0 on |xi| >= 3/2
PHI_INNER = 4.0 / 3.0
PHI_OUTER = 1.5

MIN_TRANSITION_SAMPLES = 8
MIN_DYADIC_SAMPLES = 4


def rho_values(xi_coords, step=profiles.smooth_step):
    """Tensor plateau times a radial cutoff so the support stays in ``|xi| < 3/4``."""
    n = len(xi_coords)
    out = 1.0
    for c in xi_coords:
        out = out * profiles.plateau(c, RHO_INNER, RHO_OUTER, step)
    if n > 1:
        radius = np.sqrt(sum(c * c for c in xi_coords))
        out = out * profiles.plateau(radius, RHO_INNER * math.sqrt(n), RHO_OUTER, step)
    return out


def phi_values(radius, step=profiles.smooth_step):
    return profiles.plateau(radius, PHI_INNER, PHI_OUTER, step)


def _index_slices(grid: Grid, k, half):
    """Array slices of the patch of ``sigma_k`` that falls inside the spectrum array.

    Returns ``(array_slices, patch_slices)`` or ``None`` when the patch misses the grid.
    """
    m = grid.points_per_axis
    arr, pat = [], []
    for ki in k:
        c = m // 2 + ki * grid.extent
        lo, hi = c - half, c + half + 1
        a_lo, a_hi = max(lo, 0), min(hi, m)
        if a_lo >= a_hi:
            return None
        arr.append(slice(a_lo, a_hi))
        pat.append(slice(a_lo - lo, a_hi - lo))
    return tuple(arr), tuple(pat)


@dataclass(frozen=True, eq=False)
class UniformFamily:
    """Bank of windows ``sigma_k`` for ``|k|_inf <= k_max``.

    Attributes
    ----------
    grid : Grid
    k_max : int
        Largest index in the bank. By default every window that touches the
        spectrum array is included, so the bank sums to one everywhere.
    active_range : int
        Largest ``|k|_inf`` whose window lies entirely inside the array; norm
        sums run over this range.
    rho : str
        Name of the transition profile (``"mollifier"`` or ``"logistic"``).
    """

    grid: Grid
    k_max: int
    active_range: int
    rho: str
    half_width: int
    sigma0_patch: np.ndarray = field(repr=False)

    @property
    def indices(self):
        r = range(-self.k_max, self.k_max + 1)
        return itertools.product(r, repeat=self.grid.n_dim)

    @property
    def active_indices(self):
        r = range(-self.active_range, self.active_range + 1)
        return itertools.product(r, repeat=self.grid.n_dim)

    def _normalize_k(self, k):
        k = tuple(int(v) for v in np.broadcast_to(np.asarray(k), (self.grid.n_dim,)))
        return k

    def apply(self, spectrum: np.ndarray, k) -> np.ndarray:
        """``sigma_k * spectrum`` as a full array."""
        out = np.zeros(self.grid.shape, dtype=complex)
        sl = _index_slices(self.grid, self._normalize_k(k), self.half_width)
        if sl is not None:
            a, p = sl
            out[a] = spectrum[a] * self.sigma0_patch[p]
        return out

    def window(self, k) -> np.ndarray:
        """``sigma_k`` sampled on the whole frequency grid."""
        return self.apply(np.ones(self.grid.shape, dtype=complex), k).real

    @cached_property
    def active_sum(self) -> np.ndarray:
        total = np.zeros(self.grid.shape)
        for k in self.active_indices:
            total += self.window(k)
        return total

    def total(self) -> np.ndarray:
        total = np.zeros(self.grid.shape)
        for k in self.indices:
            total += self.window(k)
        return total

    def sigma_at(self, xi) -> float:
        """Evaluate ``sum``-normalized ``sigma_0`` at an arbitrary point (used for spot checks)."""
        coords = [np.atleast_1d(np.asarray(v, dtype=float)) for v in np.broadcast_to(np.asarray(xi, dtype=float), (self.grid.n_dim,))]
        step = profiles.STEPS[self.rho]
        denom = sum(
            rho_values([c - li for c, li in zip(coords, l)], step)
            for l in itertools.product((-1, 0, 1), repeat=self.grid.n_dim)
        )
        return float((rho_values(coords, step) / denom)[0])


@lru_cache(maxsize=32)
def _uniform_cached(grid: Grid, k_max, rho: str) -> UniformFamily:
    if rho not in profiles.STEPS:
        raise ValueError(f"unknown rho profile {rho!r}; choose from {sorted(profiles.STEPS)}")
    if (RHO_OUTER - RHO_INNER) * grid.extent < MIN_TRANSITION_SAMPLES:
        raise ResolutionError(
            f"only {(RHO_OUTER - RHO_INNER) * grid.extent:g} frequency samples across [1/2, 3/4]; "
            f"need extent >= {int(MIN_TRANSITION_SAMPLES / (RHO_OUTER - RHO_INNER))}"
        )
    step = profiles.STEPS[rho]
    n, L = grid.n_dim, grid.extent
    half = int(math.ceil(RHO_OUTER * L))
    offs = np.arange(-half, half + 1) / L
    coords = []
    for i in range(n):
        shape = [1] * n
        shape[i] = -1
        coords.append(offs.reshape(shape))
    denom = 0.0
    for l in itertools.product((-1, 0, 1), repeat=n):
        denom = denom + rho_values([c - li for c, li in zip(coords, l)], step)
    patch = np.broadcast_to(rho_values(coords, step) / denom, (2 * half + 1,) * n).copy()
    patch.setflags(write=False)

    fmax = grid.max_frequency
    cover = int(math.ceil(fmax + RHO_OUTER)) - 1
    # a window is fully represented when k + 3/4 stays below the top sample
    full = int(math.floor(fmax - RHO_OUTER - grid.freq_spacing + 1e-12))
    if k_max is None:
        k_max = cover
    if k_max < 0:
        raise RangeError(f"k_max must be nonnegative, got {k_max}")
    active = min(k_max, full)
    if active < 0:
        raise ResolutionError("grid frequency range does not contain a single full window")
    return UniformFamily(grid, int(k_max), int(active), rho, half, patch)


def build_uniform_family(grid: Grid, k_max: int | None = None, rho: str = "mollifier") -> UniformFamily:
    """Build (or fetch from cache) the frequency-uniform family on ``grid``.

    Parameters
    ----------
    grid : Grid
    k_max : int, optional
        Truncate the bank to ``|k|_inf <= k_max``. The default keeps every
        window that meets the grid.
    rho : {"mollifier", "logistic"}
        Transition profile of the generating bump.

    Raises
    ------
    ResolutionError
        If fewer than 8 frequency samples fall across the transition ``[1/2, 3/4]``.
    """
    return _uniform_cached(grid, None if k_max is None else int(k_max), rho)


def _spectrum(f: SampledFunction) -> np.ndarray:
    if f.domain != "space":
        raise DomainTagError("expected a space-domain function")
    return _fwd(f.values, f.grid)


def box_op(f: SampledFunction, k, family: UniformFamily) -> SampledFunction:
    """``F^-1 sigma_k F f``."""
    k = family._normalize_k(k)
    if max(abs(v) for v in k) > family.active_range:
        raise RangeError(f"k={k} outside active range |k| <= {family.active_range}")
    spec = _spectrum(f)
    return SampledFunction(f.grid, _inv(family.apply(spec, k), f.grid), "space")


@dataclass(frozen=True, eq=False)
class DyadicFamily:
    """Littlewood-Paley bank ``psi_0, ..., psi_{j_max}``.

    ``coverage_radius`` is the radius ``(4/3) 2^j_max`` inside which the bank
    sums to one.
    """

    grid: Grid
    j_max: int
    rho: str

    @property
    def coverage_radius(self) -> float:
        return PHI_INNER * 2.0 ** self.j_max

    def _phi_scaled(self, j) -> np.ndarray:
        return phi_values(self.grid.xi_norm / 2.0 ** j, profiles.STEPS[self.rho])

    @cached_property
    def _psi(self) -> tuple:
        out = [self._phi_scaled(0)]
        for j in range(1, self.j_max + 1):
            out.append(self._phi_scaled(j) - self._phi_scaled(j - 1))
        for a in out:
            a.setflags(write=False)
        return tuple(out)

    def window(self, j: int) -> np.ndarray:
        if not 0 <= j <= self.j_max:
            raise RangeError(f"shell {j} outside 0..{self.j_max}")
        return self._psi[j]

    def total(self) -> np.ndarray:
        return np.sum(self._psi, axis=0)

    @cached_property
    def active_sum(self) -> np.ndarray:
        return self._phi_scaled(self.j_max)


@lru_cache(maxsize=32)
def _dyadic_cached(grid: Grid, rho: str) -> DyadicFamily:
    if rho not in profiles.STEPS:
        raise ValueError(f"unknown profile {rho!r}")
    # narrowest transition of the bank is phi's own, width 1/6
    if (PHI_OUTER - PHI_INNER) * grid.extent < MIN_DYADIC_SAMPLES:
        raise ResolutionError(
            f"dyadic transition [4/3, 3/2] has only {(PHI_OUTER - PHI_INNER) * grid.extent:g} samples; "
            f"need extent >= {int(math.ceil(MIN_DYADIC_SAMPLES / (PHI_OUTER - PHI_INNER)))}"
        )
    ratio = grid.max_frequency / PHI_OUTER
    if ratio < 1:
        raise ResolutionError("grid cannot hold the first dyadic ball")
    j_max = int(math.floor(math.log2(ratio) + 1e-12))
    return DyadicFamily(grid, j_max, rho)


def build_dyadic_family(grid: Grid, rho: str = "mollifier") -> DyadicFamily:
    """Dyadic bank with ``j_max = floor(log2(max_frequency / (3/2)))``."""
    return _dyadic_cached(grid, rho)


def delta_op(f: SampledFunction, j: int, family: DyadicFamily) -> SampledFunction:
    """``F^-1 psi_j F f``."""
    window = family.window(int(j))
    return SampledFunction(f.grid, _inv(_spectrum(f) * window, f.grid), "space")


def partition_check(family: UniformFamily | DyadicFamily) -> float:
    """Maximum of ``|sum of windows - 1|``.

    Uniform banks are checked at every grid frequency, dyadic banks on the
    ball ``|xi| <= 2^j_max``.
    """
    total = family.total()
    if isinstance(family, DyadicFamily):
        mask = family.grid.xi_norm <= 2.0 ** family.j_max
        return float(np.max(np.abs(total[mask] - 1.0)))
    return float(np.max(np.abs(total - 1.0)))


def leakage(spectrum: np.ndarray, family: UniformFamily | DyadicFamily) -> float:
    """Fraction of spectral energy not covered by the active part of ``family``."""
    energy = float(np.sum(np.abs(spectrum) ** 2))
    if energy == 0.0:
        return 0.0
    rest = (1.0 - family.active_sum) * spectrum
    return float(np.sum(np.abs(rest) ** 2)) / energy
