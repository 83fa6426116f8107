"""Periodic sampled functions on ``[-L/2, L/2)^n``.

Space samples sit at ``x_m = (m - M/2) L/M`` and frequency samples at
``xi_l = (l - M/2) / L``; both arrays are stored centred, so index ``M/2``
is the origin in either domain. Transforms use the convention

    F f(xi) = integral f(x) exp(-2 pi i x.xi) dx

discretized with the quadrature weight ``(L/M)^n``, so integer frequencies
land exactly on the frequency grid whenever ``L`` is an integer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Literal

import numpy as np
import scipy.fft as sfft

from . import config, profiles
from .errors import AlignmentError, DomainTagError, EvaluationError, GridError
from .params import INF, to_float

Domain = Literal["space", "frequency"]


def fft_workers() -> int:
    """Worker count for transforms, capped by ``FSPACE_THREADS``."""
    raw = os.environ.get("FSPACE_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return 1


@dataclass(frozen=True)
class Grid:
    n_dim: int
    extent: int
    points_per_axis: int

    @property
    def axes(self) -> tuple[int, ...]:
        return tuple(range(self.n_dim))

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.n_dim

    @property
    def spacing(self) -> float:
        return self.extent / self.points_per_axis

    @property
    def freq_spacing(self) -> float:
        return 1.0 / self.extent

    @property
    def max_frequency(self) -> float:
        """Largest ``|xi_i|`` on the grid (the Nyquist magnitude)."""
        return self.points_per_axis / (2 * self.extent)

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.n_dim

    @property
    def freq_cell_volume(self) -> float:
        return self.freq_spacing ** self.n_dim

    @cached_property
    def x_axis(self) -> np.ndarray:
        m = self.points_per_axis
        return (np.arange(m) - m // 2) * self.spacing

    @cached_property
    def xi_axis(self) -> np.ndarray:
        m = self.points_per_axis
        return (np.arange(m) - m // 2) / self.extent

    def coords(self, domain: Domain = "space") -> tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays (one per axis)."""
        axis = self.x_axis if domain == "space" else self.xi_axis
        out = []
        for i in range(self.n_dim):
            shape = [1] * self.n_dim
            shape[i] = -1
            out.append(axis.reshape(shape))
        return tuple(out)

    @cached_property
    def x_norm(self) -> np.ndarray:
        return np.sqrt(sum(c * c for c in self.coords("space")))

    @cached_property
    def xi_norm(self) -> np.ndarray:
        return np.sqrt(sum(c * c for c in self.coords("frequency")))

    def on_grid(self, point, domain: Domain = "space", tol=1e-9) -> tuple[int, ...] | None:
        """Index offsets if ``point`` is a grid shift, else ``None``."""
        step = self.spacing if domain == "space" else self.freq_spacing
        offs = []
        for c in np.broadcast_to(np.asarray(point, dtype=float), (self.n_dim,)):
            k = c / step
            if abs(k - round(k)) > tol:
                return None
            offs.append(int(round(k)))
        return tuple(offs)


def make_grid(n_dim: int, extent: int, points_per_axis: int, required_frequency: float | None = None) -> Grid:
    """Validate and build a :class:`Grid`.

    ``required_frequency`` (if given) is the largest ``|xi|`` the caller needs
    represented; the grid must satisfy ``M / L >= 2 * required_frequency``.
    """
    if n_dim not in (1, 2):
        raise GridError(f"n_dim must be 1 or 2, got {n_dim}")
    if isinstance(extent, float) and extent.is_integer():
        extent = int(extent)
    if not isinstance(extent, (int, np.integer)) or extent <= 0:
        raise GridError(f"extent must be a positive integer so integer frequencies are grid points, got {extent!r}")
    m = int(points_per_axis)
    if m < 2 or m & (m - 1):
        raise GridError(f"points_per_axis must be a power of two, got {points_per_axis}")
    if m ** n_dim > config.MAX_GRID_POINTS:
        raise GridError(f"{m}^{n_dim} samples exceeds the cap of {config.MAX_GRID_POINTS}")
    grid = Grid(int(n_dim), int(extent), m)
    if required_frequency is not None and grid.max_frequency < required_frequency:
        raise AlignmentError(
            f"grid resolves |xi| <= {grid.max_frequency:g} but {required_frequency:g} is required"
        )
    return grid


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Immutable complex samples of a function (or its spectrum) on a grid."""

    grid: Grid
    values: np.ndarray
    domain: Domain = "space"

    def __post_init__(self):
        if self.domain not in ("space", "frequency"):
            raise DomainTagError(f"unknown domain tag {self.domain!r}")
        vals = np.array(self.values, dtype=complex)
        if vals.shape != self.grid.shape:
            raise GridError(f"values have shape {vals.shape}, grid expects {self.grid.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def _check_compatible(self, other):
        if other.grid != self.grid or other.domain != self.domain:
            raise GridError("functions live on different grids or domains")

    def __add__(self, other):
        self._check_compatible(other)
        return SampledFunction(self.grid, self.values + other.values, self.domain)

    def __sub__(self, other):
        self._check_compatible(other)
        return SampledFunction(self.grid, self.values - other.values, self.domain)

    def __mul__(self, c):
        if isinstance(c, SampledFunction):
            return NotImplemented
        return SampledFunction(self.grid, self.values * c, self.domain)

    __rmul__ = __mul__

    def __neg__(self):
        return SampledFunction(self.grid, -self.values, self.domain)

    @property
    def measure(self) -> float:
        return self.grid.cell_volume if self.domain == "space" else self.grid.freq_cell_volume


# ---------------------------------------------------------------------------
# descriptors


class Descriptor:
    """Analytic function description; subclasses implement :meth:`__call__`."""

    def evaluate(self, coords, spacing):
        return self(*coords)

    def __call__(self, *coords):  # pragma: no cover - abstract
        raise NotImplementedError


def _radius(coords, center):
    center = np.broadcast_to(np.asarray(center if center is not None else 0.0, dtype=float), (len(coords),))
    return np.sqrt(sum((c - c0) ** 2 for c, c0 in zip(coords, center)))


@dataclass(frozen=True)
class Zero(Descriptor):
    def __call__(self, *coords):
        return np.zeros(np.broadcast_shapes(*(c.shape for c in coords)))


@dataclass(frozen=True)
class Gaussian(Descriptor):
    """``amplitude * exp(-pi |x - center|^2 / width^2)``."""

    width: float = 1.0
    center: tuple | float | None = None
    amplitude: complex = 1.0

    def __call__(self, *coords):
        r = _radius(coords, self.center)
        return self.amplitude * np.exp(-np.pi * (r / self.width) ** 2)


@dataclass(frozen=True)
class Bump(Descriptor):
    """``amplitude * exp(-a / (1 - |y|^2))`` with ``y = (x - center)/radius``; zero for ``|y| >= 1``."""

    radius: float = 1.0
    center: tuple | float | None = None
    amplitude: complex = 1.0
    sharpness: float = 1.0

    def __call__(self, *coords):
        r = _radius(coords, self.center) / self.radius
        return self.amplitude * profiles.mollifier(r, self.sharpness)


@dataclass(frozen=True)
class PolyBump(Descriptor):
    """Polynomial in the first local coordinate times a :class:`Bump`.

    ``coefficients`` are in increasing degree, in the variable ``(x_1 - c_1)/radius``.
    """

    coefficients: tuple = (1.0,)
    radius: float = 1.0
    center: tuple | float | None = None

    def __call__(self, *coords):
        center = np.broadcast_to(np.asarray(self.center if self.center is not None else 0.0, dtype=float), (len(coords),))
        y = (coords[0] - center[0]) / self.radius
        poly = np.polynomial.polynomial.polyval(y, np.asarray(self.coefficients))
        return poly * Bump(self.radius, self.center)(*coords)


@dataclass(frozen=True)
class Spike(Descriptor):
    """Delta-like spike: ``value`` at the grid point nearest ``point``, zero elsewhere.

    With ``mass=True`` the value is divided by the cell volume so the spike
    integrates to ``value`` (a discrete delta).
    """

    point: tuple | float = 0.0
    value: complex = 1.0
    mass: bool = False

    def evaluate(self, coords, spacing):
        n = len(coords)
        point = np.broadcast_to(np.asarray(self.point, dtype=float), (n,))
        hit = np.ones(np.broadcast_shapes(*(c.shape for c in coords)), dtype=bool)
        for c, c0 in zip(coords, point):
            hit = hit & (np.abs(c - c0) < spacing / 2)
        out = np.zeros(hit.shape, dtype=complex)
        out[hit] = self.value / (spacing ** n if self.mass else 1.0)
        return out

    def __call__(self, *coords):
        raise TypeError("Spike needs the grid spacing; use sample_function")


def sample_function(descriptor: Descriptor | Callable, grid: Grid, domain: Domain = "space") -> SampledFunction:
    """Evaluate ``descriptor`` pointwise on the grid's space (or frequency) samples."""
    if domain not in ("space", "frequency"):
        raise DomainTagError(f"unknown domain tag {domain!r}")
    coords = grid.coords(domain)
    spacing = grid.spacing if domain == "space" else grid.freq_spacing
    if isinstance(descriptor, Descriptor):
        vals = descriptor.evaluate(coords, spacing)
    else:
        vals = descriptor(*coords)
    vals = np.broadcast_to(np.asarray(vals, dtype=complex), grid.shape)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("descriptor produced NaN or Inf samples")
    return SampledFunction(grid, vals, domain)


# ---------------------------------------------------------------------------
# transforms and basic operators


def _fwd(values, grid: Grid):
    ax = grid.axes
    out = sfft.fftn(sfft.ifftshift(values, axes=ax), axes=ax, workers=fft_workers())
    return sfft.fftshift(out, axes=ax) * grid.cell_volume


def _inv(values, grid: Grid):
    ax = grid.axes
    out = sfft.ifftn(sfft.ifftshift(values, axes=ax), axes=ax, workers=fft_workers())
    return sfft.fftshift(out, axes=ax) / grid.cell_volume


def forward_spectrum(f: SampledFunction) -> SampledFunction:
    if f.domain != "space":
        raise DomainTagError("forward_spectrum expects a space-domain function")
    return SampledFunction(f.grid, _fwd(f.values, f.grid), "frequency")


def inverse_spectrum(f: SampledFunction) -> SampledFunction:
    if f.domain != "frequency":
        raise DomainTagError("inverse_spectrum expects a frequency-domain function")
    return SampledFunction(f.grid, _inv(f.values, f.grid), "space")


def translate(f: SampledFunction, x0) -> SampledFunction:
    """``f(. - x0)``; exact circular shift on-grid, spectral phase ramp otherwise."""
    grid = f.grid
    shift = grid.on_grid(x0, f.domain)
    if shift is not None:
        return SampledFunction(grid, np.roll(f.values, shift, axis=grid.axes), f.domain)
    x0 = np.broadcast_to(np.asarray(x0, dtype=float), (grid.n_dim,))
    if f.domain == "space":
        spec = _fwd(f.values, grid)
        phase = np.exp(-2j * np.pi * sum(c * a for c, a in zip(grid.coords("frequency"), x0)))
        return SampledFunction(grid, _inv(spec * phase, grid), "space")
    # shifting a spectrum by xi0 is modulation of its inverse transform
    vals = _inv(f.values, grid)
    phase = np.exp(2j * np.pi * sum(c * a for c, a in zip(grid.coords("space"), x0)))
    return SampledFunction(grid, _fwd(vals * phase, grid), "frequency")


def modulate(f: SampledFunction, xi0) -> SampledFunction:
    """Multiply a space-domain function by ``exp(2 pi i xi0 . x)``."""
    if f.domain != "space":
        raise DomainTagError("modulate expects a space-domain function")
    grid = f.grid
    xi0 = np.broadcast_to(np.asarray(xi0, dtype=float), (grid.n_dim,))
    phase = np.exp(2j * np.pi * sum(c * a for c, a in zip(grid.coords("space"), xi0)))
    return SampledFunction(grid, f.values * phase, "space")


@dataclass(frozen=True)
class LpParams:
    p: object
    s: float = 0.0

    def __post_init__(self):
        if to_float(self.p) <= 0:
            raise ValueError(f"p must be positive, got {self.p}")


def _power_sum(a: np.ndarray, p: float, weight=None) -> float:
    """``sum(|a|^p * weight)`` for a nonnegative array ``a``."""
    if p == 1.0:
        t = a
    elif p == 2.0:
        t = a * a
    elif p == 0.5:
        t = np.sqrt(a)
    else:
        t = a ** p
    if weight is not None:
        t = t * weight
    return float(np.sum(t))


def lp_norm_array(values: np.ndarray, p: float, measure: float, weight=None) -> float:
    """Riemann-sum ``L_p`` quasi-norm of samples; ``weight`` multiplies ``|f|^p``."""
    a = np.abs(values)
    if p == INF:
        return float(np.max(a * weight)) if weight is not None and a.size else float(np.max(a, initial=0.0))
    total = _power_sum(a, p, weight) * measure
    return total ** (1.0 / p)


def bracket(r, s):
    """``<r>^s = (1 + r^2)^(s/2)`` for an array of magnitudes ``r``."""
    return (1.0 + np.asarray(r, dtype=float) ** 2) ** (s / 2.0)


def lp_norm(f: SampledFunction, params: LpParams | float | None = None, *, p=None, s=0.0) -> float:
    """Weighted Lebesgue quasi-norm ``(int |f|^p <x>^(ps) dx)^(1/p)``; sup form at ``p = inf``.

    Frequency-domain input is measured over the frequency grid with ``<xi>`` weights.
    """
    if isinstance(params, LpParams):
        p, s = params.p, params.s
    elif params is not None:
        p = params
    if p is None:
        raise TypeError("lp_norm needs an exponent p")
    p = to_float(p)
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    s = float(s)
    grid = f.grid
    radius = grid.x_norm if f.domain == "space" else grid.xi_norm
    if p == INF:
        weight = bracket(radius, s) if s else None
        return lp_norm_array(f.values, INF, f.measure, weight)
    weight = bracket(radius, p * s) if s else None
    return lp_norm_array(f.values, p, f.measure, weight)


def convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """Periodic convolution ``int f(y) g(x - y) dy`` via spectral multiplication."""
    if f.domain != "space" or g.domain != "space":
        raise DomainTagError("convolve expects space-domain functions")
    if f.grid != g.grid:
        raise GridError("convolve needs functions on the same grid")
    grid = f.grid
    return SampledFunction(grid, _inv(_fwd(f.values, grid) * _fwd(g.values, grid), grid), "space")
