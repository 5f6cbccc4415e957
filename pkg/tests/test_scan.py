"""Unit tests for grid scans, projections, and band-endpoint extraction."""

import math

import numpy as np
import pytest

from tensorlandscape import (
    GridSpec,
    ModelParams,
    band_endpoints,
    good_location_zero,
    grid_centers,
    project_max_over_m,
    project_max_over_x,
    region_nonnegative,
    s_star,
    s_star_projection,
    s_zero,
)


class TestGridSpec:
    def test_validation(self):
        GridSpec(m_min=-0.9, m_max=0.9, x_min=-3, x_max=3, m_steps=10, x_steps=10)
        with pytest.raises(ValueError):
            GridSpec(m_min=0.5, m_max=0.4, x_min=-3, x_max=3, m_steps=10, x_steps=10)
        with pytest.raises(ValueError):
            GridSpec(m_min=-1.2, m_max=0.4, x_min=-3, x_max=3, m_steps=10, x_steps=10)
        with pytest.raises(ValueError):
            GridSpec(m_min=-0.9, m_max=0.9, x_min=3, x_max=-3, m_steps=10, x_steps=10)
        with pytest.raises(ValueError):
            GridSpec(m_min=-0.9, m_max=0.9, x_min=-3, x_max=3, m_steps=0, x_steps=10)
        with pytest.raises(ValueError):
            GridSpec(m_min=-0.9, m_max=0.9, x_min=-3, x_max=3, m_steps=10, x_steps=1)

    def test_centers_are_midpoints(self):
        grid = GridSpec(m_min=-1.0, m_max=1.0, x_min=0.0, x_max=2.0,
                        m_steps=4, x_steps=2)
        m, x = grid_centers(grid)
        np.testing.assert_allclose(m, [-0.75, -0.25, 0.25, 0.75], atol=1e-15)
        np.testing.assert_allclose(x, [0.5, 1.5], atol=1e-15)


class TestProjectOverX:
    def test_matches_piecewise_formula_spot(self):
        params = ModelParams(3, 3.0)
        for m in (0.0, 0.3, 0.6, 0.95):
            res = project_max_over_x(params, m, "star")
            assert abs(res.value - s_star_projection(params, m)) < 1e-7
            # the maximizer actually attains the reported value
            assert abs(s_star(params, m, res.arg) - res.value) < 1e-12

    def test_center_values(self):
        params = ModelParams(3, 3.0)
        star = project_max_over_x(params, 0.0, "star").value
        zero = project_max_over_x(params, 0.0, "zero").value
        assert abs(star - 0.5 * math.log(2.0)) < 1e-9
        assert np.isfinite(zero)
        assert zero < star  # the constrained max pays a strict cost at m=0

    def test_constrained_maximizer_sits_at_spectral_cutoff(self):
        # below the cutoff the constrained surface is -inf, and at m=0 the
        # unconstrained maximizer is inside the excluded region, so the
        # constrained max lands exactly on the boundary
        params = ModelParams(3, 3.0)
        res = project_max_over_x(params, 0.0, "zero")
        x_edge = math.sqrt(2.0 * (params.k - 1) / params.k)
        assert abs(res.arg - x_edge) < 1e-6
        assert abs(s_zero(params, 0.0, res.arg) - res.value) < 1e-12

    def test_all_minus_inf_interval(self):
        params = ModelParams(3, 1.0)
        res = project_max_over_x(params, 0.5, "zero", x_search=(-3.0, 0.0))
        assert res.value == -np.inf
        assert math.isnan(res.arg)

    def test_rejects_bad_interval(self):
        params = ModelParams(3, 1.0)
        with pytest.raises(ValueError):
            project_max_over_x(params, 0.0, "star", x_search=(2.0, -2.0))
        with pytest.raises(ValueError):
            project_max_over_x(params, 1.0, "star")

    def test_rejects_unknown_surface(self):
        with pytest.raises(ValueError):
            project_max_over_x(ModelParams(3, 1.0), 0.0, "both")


class TestProjectOverM:
    def test_dominates_sampled_values(self):
        params = ModelParams(3, 2.0)
        rng = np.random.default_rng(3)
        for x in (0.5, 1.2, 2.0):
            res = project_max_over_m(params, x, "star")
            samples = s_star(params, rng.uniform(-0.999, 0.999, 400), x)
            assert res.value >= np.max(samples) - 1e-9
            assert -1.0 < res.arg < 1.0

    def test_even_snr_zero_symmetric(self):
        params = ModelParams(4, 0.0)
        res = project_max_over_m(params, 1.0, "star")
        # at zero SNR the surface is even in m; maximizer at the center
        assert abs(res.arg) < 1e-6


class TestRegionNonnegative:
    def test_two_component_structure(self):
        # moderately strong SNR: a band around m=0 plus a high-overlap island.
        # The island is a tangency (peak value exactly 0 at one point), so a
        # small tolerance makes it grid-visible; the band is a thin crescent
        # hugging the spectral cutoff in x, so the x grid must resolve it.
        params = ModelParams(3, 2.25)
        grid = GridSpec(m_min=0.0, m_max=0.999, x_min=-3.0, x_max=3.0,
                        m_steps=300, x_steps=600)
        mask = region_nonnegative(params, grid, "zero", tol=2e-3)
        m_has = mask.any(axis=1)
        runs = int(np.count_nonzero(np.diff(m_has.astype(int)) == 1)
                   + (1 if m_has[0] else 0))
        assert runs == 2
        m, _ = grid_centers(grid)
        assert m_has[0]  # band containing m=0
        assert m[m_has].max() > 0.9  # island near the good maximum

    def test_star_region_contains_zero_region(self):
        params = ModelParams(3, 2.25)
        grid = GridSpec(m_min=-0.999, m_max=0.999, x_min=-3.0, x_max=3.0,
                        m_steps=80, x_steps=80)
        mask_star = region_nonnegative(params, grid, "star")
        mask_zero = region_nonnegative(params, grid, "zero")
        assert np.all(mask_star | ~mask_zero)

    def test_tolerance_widens_region(self):
        params = ModelParams(3, 1.5)
        grid = GridSpec(m_min=-0.99, m_max=0.99, x_min=-2.0, x_max=2.0,
                        m_steps=40, x_steps=40)
        tight = region_nonnegative(params, grid, "zero")
        loose = region_nonnegative(params, grid, "zero", tol=0.05)
        assert loose.sum() > tight.sum()
        assert np.all(loose | ~tight)


class TestBandEndpoints:
    def test_zero_band_brackets_center(self):
        params = ModelParams(3, 3.0)
        band = band_endpoints(params, which="zero")
        assert band.m1 < 0.0 < band.m2
        # endpoints are genuine zero crossings of the projected curve
        for m in (band.m1, band.m2):
            assert abs(project_max_over_x(params, m, "zero").value) < 1e-6
        inside = project_max_over_x(params, 0.5 * (band.m1 + band.m2), "zero")
        assert inside.value > 0.0

    def test_star_band_wider_than_zero_band(self):
        params = ModelParams(3, 3.0)
        bz = band_endpoints(params, which="zero")
        bs = band_endpoints(params, which="star")
        assert bs.m2 > bz.m2
        assert bs.m1 < bz.m1

    def test_touch_point_matches_good_zero(self):
        params = ModelParams(3, 3.0)
        band = band_endpoints(params, which="zero")
        assert band.m_star is not None
        assert abs(band.m_star - good_location_zero(params)) < 1e-4

    def test_touch_point_found_at_strong_snr(self):
        # the high-overlap bump narrows sharply as SNR grows; the search
        # grid must stay dense near m=1 (regression guard)
        for lam in (8.0, 32.0):
            params = ModelParams(3, lam)
            band = band_endpoints(params, which="zero")
            assert band.m1 is not None and band.m2 is not None
            assert band.m_star is not None
            assert abs(band.m_star - good_location_zero(params)) < 1e-4

    def test_no_touch_point_below_critical_snr(self):
        params = ModelParams(3, 0.5)
        band = band_endpoints(params, which="zero")
        assert band.m1 < 0.0 < band.m2  # the center band survives
        assert band.m_star is None
