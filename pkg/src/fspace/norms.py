"""Modulation, Besov and Triebel-Lizorkin quasi-norms and their sequence analogues.

All outer reductions go through :func:`math.fsum` so the result does not
depend on the order in which per-window terms are produced.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping

import numpy as np

from . import config
from .decomposition import DyadicFamily, UniformFamily, leakage
from .errors import DomainTagError, RangeError
from .grid import (
    Descriptor,
    Gaussian,
    SampledFunction,
    _fwd,
    _inv,
    bracket,
    lp_norm_array,
    sample_function,
)
from .params import INF, SpaceParams, parse_exponent, to_float


def _space_spectrum(f: SampledFunction) -> np.ndarray:
    # A frequency-domain input is taken as the spectrum itself; this keeps
    # exact zeros of constructed spectra and lets empty windows be skipped.
    if f.domain == "frequency":
        return f.values
    if f.domain != "space":
        raise DomainTagError(f"unknown domain {f.domain!r}")
    return _fwd(f.values, f.grid)


def _check_leak(spec, family, tol):
    if tol is None:
        return
    frac = leakage(spec, family)
    if frac > tol:
        raise RangeError(f"{frac:.3g} of the spectral energy lies outside the active windows (tolerance {tol:g})")


def _aggregate(terms: Iterable[tuple[float, float]], q: float) -> float:
    """``(sum (w * a)^q)^(1/q)`` over ``(weight, amplitude)`` pairs; sup at ``q = inf``."""
    if q == INF:
        return max((w * a for w, a in terms), default=0.0)
    vals = [(w * a) ** q for w, a in terms if a != 0.0]
    return math.fsum(vals) ** (1.0 / q) if vals else 0.0


def box_norms(f: SampledFunction, p, family: UniformFamily, leak_tol=config.LEAKAGE_TOL) -> dict:
    """``{k: ||box_k f||_p}`` over the active range (windows meeting no spectrum are omitted)."""
    spec = _space_spectrum(f)
    _check_leak(spec, family, leak_tol)
    p = to_float(p)
    grid = f.grid
    out = {}
    for k in family.active_indices:
        piece = family.apply(spec, k)
        if not piece.any():
            continue
        out[k] = lp_norm_array(_inv(piece, grid), p, grid.cell_volume)
    return out


def modulation_norm_discrete(
    f: SampledFunction, params: SpaceParams, family: UniformFamily, *, leak_tol=config.LEAKAGE_TOL
) -> float:
    """``(sum_k <k>^(sq) ||box_k f||_p^q)^(1/q)``.

    Raises
    ------
    RangeError
        If more than ``leak_tol`` of the spectral energy falls outside the
        active windows of ``family``.
    """
    s = float(params.s)
    pieces = box_norms(f, params.p, family, leak_tol)
    terms = [(float(bracket(math.sqrt(sum(v * v for v in k)), s)), a) for k, a in pieces.items()]
    return _aggregate(terms, to_float(params.q))


def default_stft_stride(grid) -> int:
    return max(1, int(round(config.STFT_XI_SPACING * grid.extent)))


def stft_magnitudes(f: SampledFunction, window: Descriptor | None = None, xi_stride: int | None = None):
    """Yield ``(xi, |V_phi f(., xi)|)`` for frequency samples taken every ``xi_stride`` grid steps."""
    spec = _space_spectrum(f)
    grid = f.grid
    win = sample_function(window if window is not None else Gaussian(), grid)
    wspec = np.conj(_fwd(win.values, grid))
    if not np.any(wspec):
        raise ValueError("STFT window is identically zero")
    stride = xi_stride or default_stft_stride(grid)
    m = grid.points_per_axis
    idx = range(0, m, stride)
    for combo in itertools.product(idx, repeat=grid.n_dim):
        shift = tuple(c - m // 2 for c in combo)
        shifted = np.roll(wspec, shift, axis=grid.axes)
        xi = np.array(shift) / grid.extent
        yield xi, np.abs(_inv(spec * shifted, grid))


def modulation_norm_stft(
    f: SampledFunction,
    params: SpaceParams,
    window: Descriptor | None = None,
    xi_stride: int | None = None,
) -> float:
    """Continuous modulation quasi-norm ``|| ||V_phi f(x, xi)||_{L_p(x)} <xi>^s ||_{L_q(xi)}``.

    The frequency variable is sampled every ``xi_stride`` grid steps (default:
    spacing about 1/8) and the outer integral uses the matching cell volume.
    """
    p, q, s = to_float(params.p), to_float(params.q), float(params.s)
    grid = f.grid
    stride = xi_stride or default_stft_stride(grid)
    cell = (stride * grid.freq_spacing) ** grid.n_dim
    terms = []
    for xi, mag in stft_magnitudes(f, window, stride):
        a = lp_norm_array(mag, p, grid.cell_volume)
        terms.append((float(bracket(float(np.linalg.norm(xi)), s)), a))
    if q == INF:
        return _aggregate(terms, q)
    return _aggregate(terms, q) * cell ** (1.0 / q)


def shell_pieces(f: SampledFunction, family: DyadicFamily, leak_tol=config.LEAKAGE_TOL) -> list:
    spec = _space_spectrum(f)
    _check_leak(spec, family, leak_tol)
    return [_inv(spec * family.window(j), f.grid) for j in range(family.j_max + 1)]


def besov_norm(f: SampledFunction, params: SpaceParams, family: DyadicFamily, *, leak_tol=config.LEAKAGE_TOL) -> float:
    """``(sum_j 2^(jsq) ||Delta_j f||_p^q)^(1/q)``."""
    p, q, s = to_float(params.p), to_float(params.q), float(params.s)
    grid = f.grid
    pieces = shell_pieces(f, family, leak_tol)
    terms = [(2.0 ** (j * s), lp_norm_array(v, p, grid.cell_volume)) for j, v in enumerate(pieces)]
    return _aggregate(terms, q)


def triebel_lizorkin_norm(
    f: SampledFunction, params: SpaceParams, family: DyadicFamily, *, leak_tol=config.LEAKAGE_TOL
) -> float:
    """``|| (sum_j 2^(jsr) |Delta_j f|^r)^(1/r) ||_{L_p}`` with ``r = params.r`` as inner exponent."""
    p, r, s = to_float(params.p), to_float(params.r), float(params.s)
    if p == INF:
        raise ValueError("Triebel-Lizorkin norms are only defined here for p < inf")
    grid = f.grid
    pieces = shell_pieces(f, family, leak_tol)
    mags = np.stack([2.0 ** (j * s) * np.abs(v) for j, v in enumerate(pieces)])
    if r == INF:
        inner = np.max(mags, axis=0)
    else:
        inner = np.sum(mags ** r, axis=0) ** (1.0 / r)
    return lp_norm_array(inner, p, grid.cell_volume)


def _key_norm(k) -> float:
    if isinstance(k, (tuple, list, np.ndarray)):
        return math.sqrt(sum(float(v) ** 2 for v in k))
    return abs(float(k))


def _as_float(v) -> float:
    # sequence weights are real numbers; strings such as "1/2" are parsed exactly first
    return to_float(parse_exponent(v)) if isinstance(v, str) else to_float(v)


def seq_norm_uniform(a: Mapping, q, s) -> float:
    """``(sum_k |a_k|^q <k>^(sq))^(1/q)`` over a finitely supported lattice sequence."""
    q, s = _as_float(q), _as_float(s)
    terms = [((1.0 + _key_norm(k) ** 2) ** (s / 2.0), abs(v)) for k, v in a.items()]
    return _aggregate(terms, q)


def seq_norm_dyadic(b: Mapping, q, s) -> float:
    """``(sum_j 2^(jsq) |b_j|^q)^(1/q)`` over a finitely supported sequence on the naturals."""
    q, s = _as_float(q), _as_float(s)
    for j in b:
        if int(j) != j or j < 0:
            raise ValueError(f"dyadic index must be a natural number, got {j!r}")
    terms = [(2.0 ** (int(j) * s), abs(v)) for j, v in b.items()]
    return _aggregate(terms, q)
