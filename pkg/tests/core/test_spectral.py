import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam_strichartz.core.errors import DomainError, ResolutionError
from amalgam_strichartz.core.oracle import GaussianState, free_evolve_gaussian, gauss_convolve
from amalgam_strichartz.core.spectral import FieldSeries, Grid, SampledField, bandwidth, check_resolved, convolve, \
    forward_transform, free_propagate, inverse_transform, lebesgue_norm, required_extent, sample, sobolev_norm


class GridTest(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(DomainError):
            Grid(1, 16.0, 100)
        with self.assertRaises(DomainError):
            Grid(4, 16.0, 64)
        with self.assertRaises(DomainError):
            Grid(1, 0.0, 64)

    def test_lattice(self):
        grid = Grid(1, 8.0, 16)
        self.assertEqual(0.5, grid.spacing)
        self.assertEqual((16,), grid.shape)
        self.assertEqual(-4.0, grid.axis()[0])
        self.assertEqual(0.0, grid.axis()[8])

        grid2 = Grid(2, 8.0, 16)
        self.assertEqual((16, 16), grid2.shape)
        self.assertEqual(0.25, grid2.cell)
        self.assertEqual(32.0, grid2.r2()[0, 0])

    def test_dual(self):
        grid = Grid(1, 32.0, 1024)
        self.assertEqual(Grid(1, 32.0, 1024), grid.dual().dual())
        self.assertEqual(1.0 / 32.0, grid.dual().spacing)

    def test_refined_and_enlarged(self):
        grid = Grid(1, 16.0, 256)
        self.assertEqual(grid.spacing / 2, grid.refined().spacing)
        self.assertEqual(grid.spacing, grid.enlarged().spacing)
        self.assertEqual(32.0, grid.enlarged().extent)

    def test_fitted(self):
        wide = GaussianState(1, 0.01)
        grid = Grid(1, 16.0, 256).fitted(wide)
        self.assertGreaterEqual(grid.extent, required_extent(wide))
        self.assertEqual(1.0 / 16.0, grid.spacing)

        with self.assertRaises(ResolutionError):
            Grid(1, 1.0, 16).fitted(GaussianState(1, 1e-9), max_doublings=2)


class SampledFieldTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 16.0, 256)
        self.f = sample(GaussianState(1, 1), self.grid)

    def test_values_read_only(self):
        with self.assertRaises(ValueError):
            self.f.values[0] = 1.0

    def test_validation(self):
        with self.assertRaises(DomainError):
            SampledField(self.grid, np.zeros(128))
        with self.assertRaises(DomainError):
            SampledField(self.grid, np.full(256, np.nan))

    def test_arithmetic(self):
        self.assertAlmostEqual(2.0, (self.f + self.f).max_abs())
        self.assertAlmostEqual(0.0, (self.f - self.f).max_abs())
        self.assertAlmostEqual(3.0, (3 * self.f).max_abs())
        with self.assertRaises(DomainError):
            self.f + sample(GaussianState(1, 1), Grid(1, 16.0, 512))

    def test_sample_requires_room(self):
        with self.assertRaises(ResolutionError):
            sample(GaussianState(1, 1), Grid(1, 4.0, 64))
        with self.assertRaises(DomainError):
            sample(GaussianState(1, 1, dim=2), self.grid)

    def test_lebesgue_norms(self):
        u = GaussianState(1, 1)
        self.assertAlmostEqual(2 ** -0.25, self.f.l2_norm(), places=12)
        self.assertAlmostEqual(1.0, lebesgue_norm(self.f, 1), places=12)
        self.assertAlmostEqual(1.0, lebesgue_norm(self.f, math.inf))
        self.assertAlmostEqual(abs(u.amplitude), self.f.max_abs())


class TransformTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 16.0, 256)
        self.f = sample(GaussianState(1, 1), self.grid)

    def test_gaussian_is_fixed_point(self):
        spectrum = forward_transform(self.f)
        self.assertEqual(self.grid.dual(), spectrum.grid)
        expected = np.exp(-math.pi * spectrum.grid.r2())
        self.assertLess(np.max(np.abs(spectrum.values - expected)), 1e-10)

    def test_inverse(self):
        back = inverse_transform(forward_transform(self.f))
        self.assertEqual(self.grid, back.grid)
        self.assertLess(np.max(np.abs(back.values - self.f.values)), 1e-12)

    def test_parseval(self):
        self.assertAlmostEqual(self.f.l2_norm(), sobolev_norm(self.f, 0.0), places=12)
        self.assertGreater(sobolev_norm(self.f, 1.0), sobolev_norm(self.f, 0.0))

    def test_bandwidth(self):
        # exp(-pi xi^2) drops below 1e-7 at xi = sqrt(7 ln 10 / pi)
        expected = math.sqrt(7.0 * math.log(10.0) / math.pi)
        self.assertLess(abs(bandwidth(self.f) - expected), self.grid.dual().spacing)

    def test_check_resolved(self):
        check_resolved(self.f)
        coarse = Grid(1, 16.0, 16)
        with self.assertRaises(ResolutionError):
            check_resolved(SampledField(coarse, np.exp(-math.pi * 16 * coarse.r2())))

    def test_convolve(self):
        grid = Grid(1, 32.0, 512)
        u = GaussianState(1, 1)
        f = sample(u, grid)
        expected = gauss_convolve(u, u).evaluate_r2(grid.r2())
        self.assertLess(np.max(np.abs(convolve(f, f).values - expected)), 1e-10)


class FreePropagateTest(unittest.TestCase):
    def test_matches_closed_form(self):
        grid = Grid(1, 32.0, 1024)
        u0 = GaussianState(1, 1)
        f = sample(u0, grid)
        for t in (0.1, -0.1):
            u = free_propagate(f, t)
            expected = free_evolve_gaussian(u0, t).evaluate_r2(grid.r2())
            self.assertLess(np.max(np.abs(u.values - expected)), 1e-8)
            self.assertAlmostEqual(f.l2_norm(), u.l2_norm(), places=12)

    @settings(max_examples=20, deadline=None)
    @given(s=st.floats(-0.4, 0.4), t=st.floats(-0.4, 0.4))
    def test_group_law(self, s, t):
        f = sample(GaussianState(1, 1), Grid(1, 64.0, 1024))
        two_steps = free_propagate(free_propagate(f, s), t)
        one_step = free_propagate(f, s + t)
        self.assertLess(np.max(np.abs(two_steps.values - one_step.values)), 1e-9)

    def test_identity_at_zero(self):
        f = sample(GaussianState(1, 1), Grid(1, 16.0, 256))
        self.assertIs(f, free_propagate(f, 0.0))

    def test_dispersion_out_of_box(self):
        f = sample(GaussianState(1, 1), Grid(1, 16.0, 256))
        with self.assertRaises(ResolutionError) as cm:
            free_propagate(f, 10.0)
        self.assertIsNotNone(cm.exception.suggestion)

    def test_two_dimensions(self):
        grid = Grid(2, 16.0, 128)
        u0 = GaussianState(1, 1, dim=2)
        u = free_propagate(sample(u0, grid), 0.05)
        expected = free_evolve_gaussian(u0, 0.05).evaluate_r2(grid.r2())
        self.assertLess(np.max(np.abs(u.values - expected)), 1e-8)


class FieldSeriesTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 16.0, 256)
        self.f = sample(GaussianState(1, 1), self.grid)
        self.series = FieldSeries.from_fields([self.f, 2 * self.f, 3 * self.f], [0.0, 0.5, 1.0])

    def test_access(self):
        self.assertEqual(3, len(self.series))
        self.assertAlmostEqual(2.0, self.series[1].max_abs())
        self.assertEqual(3, len(list(self.series)))

    def test_dt(self):
        self.assertEqual(0.5, self.series.dt)
        uneven = FieldSeries.from_fields([self.f, self.f, self.f], [0.0, 0.5, 2.0])
        self.assertIsNone(uneven.dt)

    def test_reversed_and_scaled(self):
        reversed_series = self.series.reversed()
        self.assertEqual([1.0, 0.5, 0.0], list(reversed_series.times))
        self.assertAlmostEqual(3.0, reversed_series[0].max_abs())
        np.testing.assert_allclose(2 * self.series.l2_norms(), self.series.scaled(2).l2_norms())

    def test_l2_norms(self):
        np.testing.assert_allclose(self.f.l2_norm() * np.array([1.0, 2.0, 3.0]), self.series.l2_norms())

    def test_shape_mismatch(self):
        with self.assertRaises(DomainError):
            FieldSeries(self.grid, np.array([0.0, 1.0]), np.zeros((3, 256)))


if __name__ == '__main__':
    unittest.main()
