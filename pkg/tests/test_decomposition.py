import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from fspace.decomposition import (
    box_op,
    build_dyadic_family,
    build_uniform_family,
    delta_op,
    leakage,
    partition_check,
)
from fspace.errors import RangeError, ResolutionError
from fspace.grid import Gaussian, SampledFunction, forward_spectrum, inverse_spectrum, make_grid, sample_function, translate
from fspace.witnesses.families import annulus_spectrum, bump_spectrum


def _band_limited(grid, rng, reach):
    spec = np.zeros(grid.shape, dtype=complex)
    for _ in range(3):
        radius = rng.uniform(0.2, reach / 3)
        centre = rng.uniform(-(reach - radius), reach - radius, grid.n_dim)
        spec += complex(rng.normal(), rng.normal()) * bump_spectrum(grid, centre, radius, 1.0)
    return inverse_spectrum(SampledFunction(grid, spec, "frequency"))


class TestUniformFamily:
    def test_default_ranges(self, grid1):
        fam = build_uniform_family(grid1)
        assert (fam.k_max, fam.active_range) == (128, 127)

    def test_sigma_zero_values(self, grid1):
        fam = build_uniform_family(grid1)
        assert fam.sigma_at(0.0) == pytest.approx(1.0)
        assert fam.sigma_at(0.8) == 0.0
        assert fam.sigma_at(-0.75) == 0.0

    def test_partition_everywhere(self, grid1, grid2):
        for g in (grid1, grid2):
            assert partition_check(build_uniform_family(g)) < 1e-10

    def test_partition_random_frequencies(self, grid1):
        total = build_uniform_family(grid1).total()
        idx = np.random.default_rng(3).integers(0, grid1.points_per_axis, 1000)
        assert np.max(np.abs(total[idx] - 1)) < 1e-10

    def test_truncated_family_fails_partition(self, grid1):
        assert partition_check(build_uniform_family(grid1, k_max=10)) == pytest.approx(1.0)

    def test_windows_are_shifts(self, small1):
        fam = build_uniform_family(small1)
        w0 = fam.window(0)
        for k in (-2, 1, 3):
            np.testing.assert_array_equal(fam.window(k), np.roll(w0, 32 * k))

    def test_core_cell_properties(self, grid1):
        fam = build_uniform_family(grid1)
        xi = grid1.xi_axis
        for k in (-5, 0, 9):
            core = np.abs(xi - k) <= 0.25
            assert np.all(fam.window(k)[core] == 1.0)
            for l in (k - 1, k + 1):
                assert np.all(fam.window(k)[core] * fam.window(l)[core] == 0.0)

    def test_support_certificate(self, grid1):
        fam = build_uniform_family(grid1)
        xi = grid1.xi_axis
        for k in (-3, 0, 4):
            outside = np.abs(xi - k) > 0.75 + grid1.freq_spacing
            assert not np.any(fam.window(k)[outside])

    def test_matches_oracle(self, small1):
        fam = build_uniform_family(small1)
        table = oracles.sigma_table(32, 256, 1)
        for k, w in table.items():
            np.testing.assert_allclose(fam.window(k), w, atol=1e-12)

    def test_matches_oracle_2d(self):
        g = make_grid(2, 32, 128)
        fam = build_uniform_family(g)
        for k, w in oracles.sigma_table(32, 128, 2).items():
            np.testing.assert_allclose(fam.window(k), w, atol=1e-12)

    def test_resolution_error(self):
        with pytest.raises(ResolutionError):
            build_uniform_family(make_grid(1, 16, 256))

    def test_logistic_profile_partitions(self, grid1):
        assert partition_check(build_uniform_family(grid1, rho="logistic")) < 1e-10


class TestBoxOp:
    def test_core_supported_function(self, grid1):
        spec = bump_spectrum(grid1, 0.0, 0.25, 1.0)
        f = inverse_spectrum(SampledFunction(grid1, spec, "frequency"))
        fam = build_uniform_family(grid1)
        np.testing.assert_allclose(box_op(f, 0, fam).values, f.values, atol=1e-14)
        for k in (-1, 1, 2):
            assert np.max(np.abs(box_op(f, k, fam).values)) < 1e-14

    def test_out_of_range(self, grid1):
        fam = build_uniform_family(grid1)
        f = sample_function(Gaussian(), grid1)
        with pytest.raises(RangeError):
            box_op(f, 128, fam)

    @given(st.integers(0, 2 ** 32 - 1), st.integers(-300, 300))
    def test_commutes_with_translation(self, seed, shift):
        g = make_grid(1, 32, 256)
        fam = build_uniform_family(g)
        f = _band_limited(g, np.random.default_rng(seed), 2.5)
        x0 = shift * g.spacing
        for k in (-1, 0, 2):
            lhs = box_op(translate(f, x0), k, fam).values
            rhs = translate(box_op(f, k, fam), x0).values
            np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_reconstruction(self, grid1):
        fam = build_uniform_family(grid1)
        rng = np.random.default_rng(11)
        for _ in range(5):
            f = _band_limited(grid1, rng, 100)
            total = sum(box_op(f, k, fam).values for k in range(-fam.active_range, fam.active_range + 1))
            assert np.linalg.norm(total - f.values) / np.linalg.norm(f.values) < 1e-8


class TestDyadicFamily:
    def test_j_max(self, grid1):
        assert build_dyadic_family(grid1).j_max == 6

    def test_values(self, grid1):
        fam = build_dyadic_family(grid1)
        xi = grid1.xi_axis
        assert fam.window(0)[np.argmin(np.abs(xi))] == 1.0
        for j in range(1, 6):
            idx = np.argmin(np.abs(xi - 2.0 ** j))
            assert fam.window(j)[idx] == pytest.approx(1.0)

    def test_partition(self, grid1, grid2):
        for g in (grid1, grid2):
            assert partition_check(build_dyadic_family(g)) < 1e-10

    def test_annulus_support(self, grid1):
        fam = build_dyadic_family(grid1)
        r = grid1.xi_norm
        for j in range(1, fam.j_max + 1):
            outside = (r < 2 ** (j - 1) * 4 / 3) | (r > 2 ** j * 1.5)
            assert not np.any(fam.window(j)[outside])

    def test_matches_oracle(self, small1):
        fam = build_dyadic_family(small1)
        for j, w in enumerate(oracles.psi_table(32, 256, 1)):
            np.testing.assert_allclose(fam.window(j), w, atol=1e-12)

    def test_resolution_error(self):
        with pytest.raises(ResolutionError):
            build_dyadic_family(make_grid(1, 16, 2 ** 10))

    def test_window_out_of_range(self, grid1):
        with pytest.raises(RangeError):
            build_dyadic_family(grid1).window(7)


class TestDeltaOp:
    @pytest.mark.parametrize("j", [2, 3, 4])
    def test_single_shell(self, grid1, j):
        fam = build_dyadic_family(grid1)
        h = inverse_spectrum(SampledFunction(grid1, annulus_spectrum(grid1, j), "frequency"))
        np.testing.assert_allclose(delta_op(h, j, fam).values, h.values, atol=1e-12)
        for i in range(fam.j_max + 1):
            if abs(i - j) >= 2:
                assert np.max(np.abs(delta_op(h, i, fam).values)) < 1e-12

    def test_reconstruction(self, grid1):
        fam = build_dyadic_family(grid1)
        rng = np.random.default_rng(5)
        for _ in range(5):
            f = _band_limited(grid1, rng, 2 ** fam.j_max)
            total = sum(delta_op(f, j, fam).values for j in range(fam.j_max + 1))
            assert np.linalg.norm(total - f.values) / np.linalg.norm(f.values) < 1e-8


def test_leakage(grid1):
    fam = build_uniform_family(grid1)
    inside = forward_spectrum(sample_function(Gaussian(), grid1)).values
    assert leakage(inside, fam) < 1e-20
    outside = np.where(np.abs(grid1.xi_axis) > 127.9, 1.0 + 0j, 0)
    assert leakage(outside, fam) == pytest.approx(1.0)
