"""Extremal families built from separated frequency-localized blocks.

All three families are assembled directly on the frequency grid, so each
block's spectrum is exactly zero off its intended window:

* ``G_N = sum_k a_k T_{Nk} g_k`` with ``g_k`` a bump of radius 1/8 around ``k``;
* ``F_N = sum_j b_j T_{N j e0} h_j`` with ``h_j`` a dilated annulus;
* ``H = sum_j a_j h_j`` with ``h_j`` a bump of radius 1/16 around ``2^j e0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping

import numpy as np

from .. import config, profiles
from ..decomposition import UniformFamily, build_uniform_family
from ..errors import AlignmentError, GeometryError
from ..grid import Grid, SampledFunction, _inv, make_grid

# annulus of h: zero inside 3/4 and outside 4/3, one on [7/8, 8/7]
H_INNER, H_PLATEAU_IN, H_PLATEAU_OUT, H_OUTER = 0.75, 7 / 8, 8 / 7, 4 / 3


def _next_pow2(x: float) -> int:
    return 1 << max(1, int(math.ceil(math.log2(max(x, 2)))))


def _as_vec(k, n):
    return tuple(int(v) for v in np.broadcast_to(np.asarray(k), (n,)))


def bump_spectrum(grid: Grid, center, radius: float, sharpness: float = config.WITNESS_SHARPNESS) -> np.ndarray:
    """``exp(-a / (1 - |xi - center|^2 / radius^2))`` on the frequency grid."""
    center = np.broadcast_to(np.asarray(center, dtype=float), (grid.n_dim,))
    coords = grid.coords("frequency")
    r = np.sqrt(sum((c - c0) ** 2 for c, c0 in zip(coords, center)))
    return profiles.mollifier(r / radius, sharpness)


def annulus_spectrum(grid: Grid, j: int) -> np.ndarray:
    """``h_hat(xi / 2^j)`` with the radial annulus profile of ``h``."""
    return profiles.annulus(grid.xi_norm / 2.0 ** j, H_INNER, H_PLATEAU_IN, H_PLATEAU_OUT, H_OUTER)


def _phase(grid: Grid, shift) -> np.ndarray:
    """Spectral factor ``exp(-2 pi i shift . xi)`` of the translation by ``shift``."""
    return np.exp(-2j * np.pi * sum(c * float(a) for c, a in zip(grid.coords("frequency"), shift)))


def _to_space(spec: np.ndarray, grid: Grid, domain: str) -> SampledFunction:
    if domain == "frequency":
        return SampledFunction(grid, spec, "frequency")
    return SampledFunction(grid, _inv(spec, grid), "space")


def build_GN(
    a: Mapping,
    N: int,
    grid: Grid,
    *,
    radius: float = config.GN_BUMP_RADIUS,
    sharpness: float = config.WITNESS_SHARPNESS,
    domain: str = "space",
) -> SampledFunction:
    """``sum_k a_k T_{Nk} g_k`` where ``g_k`` has spectrum ``g_hat(. - k)``.

    Raises
    ------
    GeometryError
        If the translated blocks are closer than ``N`` around the periodic box.
    AlignmentError
        If some ``k + radius`` is beyond the fully represented windows.
    """
    if radius > 1 / 8:
        raise ValueError("GN bump radius must be at most 1/8 so each block sits in one core cell")
    n = grid.n_dim
    keys = [_as_vec(k, n) for k in a]
    if not keys:
        return _to_space(np.zeros(grid.shape, dtype=complex), grid, domain)
    reach = max(max(abs(v) for v in k) for k in keys)
    if N * (2 * reach + 1) > grid.extent:
        raise GeometryError(f"blocks at N*k need extent >= {N * (2 * reach + 1)}, box is {grid.extent}")
    if reach + 1 > grid.max_frequency:
        raise AlignmentError(f"frequency {reach} + window does not fit max frequency {grid.max_frequency}")
    spec = np.zeros(grid.shape, dtype=complex)
    for k, (key, coef) in zip(keys, a.items()):
        if coef == 0:
            continue
        spec += coef * bump_spectrum(grid, k, radius, sharpness) * _phase(grid, [N * v for v in k])
    return _to_space(spec, grid, domain)


def build_FN(b: Mapping, N: int, J: int, grid: Grid, *, domain: str = "space") -> SampledFunction:
    """``sum_{j >= J} b_j T_{N j e0} h_j`` with ``h_j`` the dilated annulus."""
    shells = sorted(int(j) for j, v in b.items() if v != 0)
    if any(j < J for j in shells):
        raise ValueError(f"shell indices must start at J={J}")
    spec = np.zeros(grid.shape, dtype=complex)
    if not shells:
        return _to_space(spec, grid, domain)
    top = shells[-1]
    if H_OUTER * 2.0 ** top > grid.max_frequency:
        raise AlignmentError(f"shell {top} reaches {H_OUTER * 2 ** top:g} beyond max frequency {grid.max_frequency:g}")
    span = N * (shells[-1] - shells[0]) + N
    if len(shells) > 1 and span > grid.extent:
        raise GeometryError(f"shell translates need extent >= {span}, box is {grid.extent}")
    for j in shells:
        shift = [N * j] + [0] * (grid.n_dim - 1)
        spec += b[j] * annulus_spectrum(grid, j) * _phase(grid, shift)
    return _to_space(spec, grid, domain)


def build_H(
    a: Mapping,
    grid: Grid,
    *,
    radius: float = config.H_BUMP_RADIUS,
    sharpness: float = config.WITNESS_SHARPNESS,
    domain: str = "space",
) -> SampledFunction:
    """``sum_j a_j h_j`` with ``h_hat_j = h_hat(. - 2^j e0)`` (no translation)."""
    if radius > 1 / 16:
        raise ValueError("H bump radius must be at most 1/16")
    spec = np.zeros(grid.shape, dtype=complex)
    for j, coef in a.items():
        if coef == 0:
            continue
        centre = 2.0 ** int(j)
        if centre + 1 > grid.max_frequency:
            raise AlignmentError(f"shell {j} centre {centre:g} beyond max frequency {grid.max_frequency:g}")
        xi = [centre] + [0.0] * (grid.n_dim - 1)
        spec += coef * bump_spectrum(grid, xi, radius, sharpness)
    return _to_space(spec, grid, domain)


# ---------------------------------------------------------------------------
# grid fitting


def grid_for_GN(K: int, N: int, n_dim: int = 1, min_extent: int = 64) -> Grid:
    """Smallest power-of-two grid holding blocks ``|k| <= K`` at separation ``N``.

    The extent is a power of two so every translate ``N k`` is an exact index
    shift. The frequency range must also fit the dyadic shell whose coverage
    radius passes ``K + 1/8``, since F-norms of the family are needed too.
    """
    L = _next_pow2(max(N * (2 * K + 1), min_extent))
    j = max(0, math.ceil(math.log2((K + 0.25) / (4 / 3))))
    fmax = max(1.5 * 2 ** j, K + 2)
    return make_grid(n_dim, L, _next_pow2(2 * L * fmax))


def grid_for_shells(j_top: int, extent: int = 64, n_dim: int = 1) -> Grid:
    """Grid whose dyadic bank reaches shell ``j_top``."""
    return make_grid(n_dim, extent, _next_pow2(2 * extent * 1.5 * 2 ** j_top))


# ---------------------------------------------------------------------------
# lattice cell counts


@dataclass(frozen=True)
class GammaCounts:
    j: int
    meeting: int
    contained: int
    reliable: bool


def gamma_counts(j: int, grid: Grid, family: UniformFamily | None = None) -> GammaCounts:
    """Count lattice cells whose window meets, or lies inside the plateau of, ``h_hat_j``.

    ``meeting`` is ``#{k : sigma_k h_hat_j != 0}`` and ``contained`` is
    ``#{k : sigma_k h_hat_j = sigma_k}`` on the grid. When no window fits in
    the plateau the counts are flagged unreliable.
    """
    family = family or build_uniform_family(grid)
    hj = annulus_spectrum(grid, j)
    if H_OUTER * 2.0 ** j > grid.max_frequency:
        raise AlignmentError(f"shell {j} does not fit the grid")
    meeting = contained = 0
    for k in family.indices:
        w = family.window(k)
        support = w != 0
        if not np.any(support):
            continue
        if np.any(hj[support] != 0):
            meeting += 1
            if np.all(np.abs(hj[support] - 1.0) <= 1e-12):
                contained += 1
    return GammaCounts(j, meeting, contained, reliable=contained > 0)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSpec:
    """Recipe for one member of an extremal family."""

    kind: Literal["GN", "FN", "H"]
    coeffs: Mapping
    grid: Grid
    separation: int = 1
    J: int = config.FN_START_SHELL
    bump_radius: float | None = None
    sharpness: float = config.WITNESS_SHARPNESS

    def build(self, domain: str = "space") -> SampledFunction:
        if self.kind == "GN":
            radius = self.bump_radius or config.GN_BUMP_RADIUS
            return build_GN(self.coeffs, self.separation, self.grid, radius=radius, sharpness=self.sharpness, domain=domain)
        if self.kind == "FN":
            return build_FN(self.coeffs, self.separation, self.J, self.grid, domain=domain)
        if self.kind == "H":
            radius = self.bump_radius or config.H_BUMP_RADIUS
            return build_H(self.coeffs, self.grid, radius=radius, sharpness=self.sharpness, domain=domain)
        raise ValueError(f"unknown family {self.kind!r}")

    def block(self, index, domain: str = "space") -> SampledFunction:
        """The single term carried by ``index`` (``k`` for GN, ``j`` otherwise)."""
        return ExtremalSpec(
            self.kind, {index: self.coeffs[index]}, self.grid, self.separation,
            self.J if self.kind != "FN" else int(index), self.bump_radius, self.sharpness,
        ).build(domain)
