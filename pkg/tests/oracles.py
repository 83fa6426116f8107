"""Independent reference implementations used only by the tests.

Nothing here calls a fast transform or the package's window code. Transforms
are dense DFT matrices, the smooth step is integrated with adaptive
quadrature, windows are normalized by an explicit lattice sum, and every
norm is a direct sum. Intended for grids with at most 256 points per axis.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
from scipy import integrate


def bump(t: float, a: float = 1.0) -> float:
    return math.exp(-a / (1.0 - t * t)) if abs(t) < 1 else 0.0


@lru_cache(maxsize=None)
def _bump_mass() -> float:
    return integrate.quad(bump, -1, 1, epsabs=1e-16, epsrel=1e-13, limit=200)[0]


@lru_cache(maxsize=200_000)
def step(u: float) -> float:
    if u <= 0:
        return 0.0
    if u >= 1:
        return 1.0
    val = integrate.quad(bump, -1, 2 * u - 1, epsabs=1e-16, epsrel=1e-13, limit=200)[0]
    return val / _bump_mass()


def plateau(t: float, inner: float, outer: float) -> float:
    return 1.0 - step((abs(t) - inner) / (outer - inner))


def rho(xi) -> float:
    out = 1.0
    for c in xi:
        out *= plateau(c, 0.5, 0.75)
    if len(xi) > 1:
        out *= plateau(math.sqrt(sum(c * c for c in xi)), 0.5 * math.sqrt(len(xi)), 0.75)
    return out


def sigma(k, xi) -> float:
    """``rho(xi - k) / sum_{l in Z^n} rho(xi - l)`` with the lattice sum taken near ``xi``."""
    num = rho([x - kk for x, kk in zip(xi, k)])
    if num == 0.0:
        return 0.0
    ranges = [range(math.floor(x) - 1, math.floor(x) + 3) for x in xi]
    den = sum(rho([x - l for x, l in zip(xi, ls)]) for ls in itertools.product(*ranges))
    return num / den


def phi(r: float) -> float:
    return plateau(r, 4 / 3, 1.5)


def psi(j: int, r: float) -> float:
    if j == 0:
        return phi(r)
    return phi(r / 2 ** j) - phi(r / 2 ** (j - 1))


# ---------------------------------------------------------------------------
# dense transforms


def axes(L: int, M: int):
    x = (np.arange(M) - M // 2) * (L / M)
    xi = (np.arange(M) - M // 2) / L
    return x, xi


def dft_matrices(L: int, M: int):
    x, xi = axes(L, M)
    F = np.exp(-2j * np.pi * np.outer(xi, x)) * (L / M)
    G = np.exp(2j * np.pi * np.outer(x, xi)) / L
    return F, G


def apply_separable(A: np.ndarray, values: np.ndarray) -> np.ndarray:
    out = values
    for axis in range(values.ndim):
        out = np.moveaxis(np.tensordot(A, out, axes=([1], [axis])), 0, axis)
    return out


def forward(values: np.ndarray, L: int) -> np.ndarray:
    F, _ = dft_matrices(L, values.shape[0])
    return apply_separable(F, values)


def inverse(values: np.ndarray, L: int) -> np.ndarray:
    _, G = dft_matrices(L, values.shape[0])
    return apply_separable(G, values)


def freq_points(L: int, M: int, n: int):
    _, xi = axes(L, M)
    return list(itertools.product(xi, repeat=n))


# ---------------------------------------------------------------------------
# norms by direct summation


def lp(values: np.ndarray, p: float, cell: float) -> float:
    a = [abs(complex(v)) for v in np.ravel(values)]
    if p == math.inf:
        return max(a, default=0.0)
    return (math.fsum(v ** p for v in a) * cell) ** (1 / p)


def aggregate(terms, q: float) -> float:
    terms = list(terms)
    if q == math.inf:
        return max(terms, default=0.0)
    return math.fsum(t ** q for t in terms) ** (1 / q)


def bracket(r: float, s: float) -> float:
    return (1 + r * r) ** (s / 2)


@lru_cache(maxsize=None)
def sigma_table(L: int, M: int, n: int):
    """``{k: sigma_k on the grid}`` for every window lying fully inside the sampled range."""
    _, xi = axes(L, M)
    top = xi[-1]
    K = math.floor(top - 0.75)
    pts = freq_points(L, M, n)
    out = {}
    for k in itertools.product(range(-K, K + 1), repeat=n):
        out[k] = np.array([sigma(k, p) for p in pts]).reshape((M,) * n)
    return out


@lru_cache(maxsize=None)
def psi_table(L: int, M: int, n: int):
    fmax = M / (2 * L)
    j_max = math.floor(math.log2(fmax / 1.5))
    pts = freq_points(L, M, n)
    radii = [math.sqrt(sum(c * c for c in p)) for p in pts]
    return [np.array([psi(j, r) for r in radii]).reshape((M,) * n) for j in range(j_max + 1)]


def modulation_discrete(f: np.ndarray, L: int, p, q, s) -> float:
    n, M = f.ndim, f.shape[0]
    spec = forward(f, L)
    cell = (L / M) ** n
    terms = []
    for k, w in sigma_table(L, M, n).items():
        piece = inverse(w * spec, L)
        terms.append(bracket(math.sqrt(sum(v * v for v in k)), s) * lp(piece, p, cell))
    return aggregate(terms, q)


def stft(f: np.ndarray, L: int, window, stride: int):
    """``{xi: |V_g f(x, xi)|}`` for 1-D ``f`` by the defining sum over ``y`` (periodic window)."""
    M = f.shape[0]
    x, xi = axes(L, M)
    dx = L / M
    # g(y - x) on the periodic box
    diff = (x[None, :] - x[:, None] + L / 2) % L - L / 2
    g = window(diff)
    out = {}
    for c in range(0, M, stride):
        e = np.exp(-2j * np.pi * x * xi[c])
        out[xi[c]] = np.abs((np.conj(g) * (f * e)[None, :]).sum(axis=1) * dx)
    return out


def modulation_stft(f: np.ndarray, L: int, p, q, s, stride: int, width: float = 1.0) -> float:
    M = f.shape[0]
    mags = stft(f, L, lambda t: np.exp(-np.pi * (t / width) ** 2), stride)
    terms = [bracket(abs(xi), s) * lp(m, p, L / M) for xi, m in mags.items()]
    cell = stride / L
    if q == math.inf:
        return aggregate(terms, q)
    return aggregate(terms, q) * cell ** (1 / q)


def besov(f: np.ndarray, L: int, p, q, s) -> float:
    n, M = f.ndim, f.shape[0]
    spec = forward(f, L)
    cell = (L / M) ** n
    terms = [2.0 ** (j * s) * lp(inverse(w * spec, L), p, cell) for j, w in enumerate(psi_table(L, M, n))]
    return aggregate(terms, q)


def triebel_lizorkin(f: np.ndarray, L: int, p, r, s) -> float:
    n, M = f.ndim, f.shape[0]
    spec = forward(f, L)
    pieces = [2.0 ** (j * s) * np.abs(inverse(w * spec, L)) for j, w in enumerate(psi_table(L, M, n))]
    inner = np.empty(f.shape)
    for idx in np.ndindex(f.shape):
        vals = [float(piece[idx]) for piece in pieces]
        inner[idx] = aggregate(vals, r)
    return lp(inner, p, (L / M) ** n)


def seq_uniform(a: dict, q, s) -> float:
    terms = []
    for k, v in a.items():
        kk = k if isinstance(k, tuple) else (k,)
        terms.append(abs(v) * bracket(math.sqrt(sum(c * c for c in kk)), s))
    return aggregate(terms, q)


def seq_dyadic(b: dict, q, s) -> float:
    return aggregate([abs(v) * 2.0 ** (j * s) for j, v in b.items()], q)
