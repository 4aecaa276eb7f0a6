import math
import unittest

import numpy as np

from amalgam_strichartz.core.amalgam import AmalgamSpec, amalgam_norm
from amalgam_strichartz.core.errors import ConvergenceError, DomainError, ResolutionError
from amalgam_strichartz.core.oracle import GaussianState
from amalgam_strichartz.core.potential import PotentialSpec, TimeGrid, find_contraction_horizon, \
    make_rough_potential, multiplication_check, picard_iterate, potential_amalgam_norm, potential_from_function, \
    rough_coefficients, split_step_evolve
from amalgam_strichartz.core.spectral import Grid, SampledField, free_propagate, lebesgue_norm, sample, sobolev_norm


def _constant(value: float):
    return lambda t, x: np.full_like(x, value)


class PotentialSpecTest(unittest.TestCase):
    def test_defaults(self):
        spec = PotentialSpec()
        self.assertAlmostEqual(4.0 / 3.0, spec.p_dual)
        self.assertAlmostEqual(0.25, spec.min_sobolev)

    def test_validation(self):
        with self.assertRaises(DomainError):
            PotentialSpec(alpha=0.5)
        with self.assertRaises(DomainError):
            PotentialSpec(p=1.0)
        with self.assertRaises(DomainError):
            PotentialSpec(alpha=1.0, p=2.0)
        with self.assertRaises(DomainError):
            PotentialSpec(sobolev_s=0.2)


class TimeGridTest(unittest.TestCase):
    def test_forward(self):
        tgrid = TimeGrid(1.0, 4)
        self.assertEqual(0.25, tgrid.dt)
        np.testing.assert_allclose([0.0, 0.25, 0.5, 0.75, 1.0], tgrid.times)
        np.testing.assert_allclose([0.125, 0.375, 0.625, 0.875], tgrid.midpoints)

    def test_backward(self):
        tgrid = TimeGrid(-1.0, 4)
        self.assertEqual(-0.25, tgrid.dt)
        self.assertEqual(-1.0, tgrid.times[-1])

    def test_validation(self):
        with self.assertRaises(DomainError):
            TimeGrid(0.0, 4)
        with self.assertRaises(DomainError):
            TimeGrid(1.0, 0)


class RoughPotentialTest(unittest.TestCase):
    def test_hermitian_when_real(self):
        c = rough_coefficients(PotentialSpec(), 64)
        half = 32
        for k in range(1, half):
            self.assertAlmostEqual(c[half + k], np.conj(c[half - k]))
        self.assertEqual(0.0, c[half].imag)

    def test_reproducible(self):
        spec = PotentialSpec(seed=3)
        np.testing.assert_array_equal(rough_coefficients(spec, 64, 2), rough_coefficients(spec, 64, 2))
        self.assertFalse(np.allclose(rough_coefficients(spec, 64, 1), rough_coefficients(spec, 64, 2)))

    def test_low_modes_independent_of_resolution(self):
        spec = PotentialSpec(seed=5)
        coarse = rough_coefficients(spec, 64)
        fine = rough_coefficients(spec, 128)
        np.testing.assert_allclose(coarse[32:64], fine[64:96])

    def test_make_rough_potential(self):
        grid = Grid(1, 16.0, 256)
        tgrid = TimeGrid(1.0, 3)
        V = make_rough_potential(PotentialSpec(), grid, tgrid)
        self.assertEqual(3, len(V))
        np.testing.assert_allclose(tgrid.midpoints, V.times)
        self.assertEqual(0.0, float(np.max(np.abs(V.values.imag))))
        self.assertGreater(V[0].max_abs(), 0.0)

        complex_V = make_rough_potential(PotentialSpec(real_valued=False), grid, tgrid)
        self.assertGreater(float(np.max(np.abs(complex_V.values.imag))), 0.0)

    def test_roughness_grows_with_resolution(self):
        # the H^2 norm keeps growing with N while the L^2 norm settles
        spec = PotentialSpec(sobolev_s=0.5)
        tgrid = TimeGrid(1.0, 1)
        norms = []
        for n in (256, 1024):
            V = make_rough_potential(spec, Grid(1, 16.0, n), tgrid)
            norms.append((sobolev_norm(V[0], 0.0), sobolev_norm(V[0], 2.0)))
        self.assertLess(abs(norms[1][0] - norms[0][0]) / norms[0][0], 0.1)
        self.assertGreater(norms[1][1] / norms[0][1], 1.1)

    def test_two_dimensions_unsupported(self):
        with self.assertRaises(DomainError):
            make_rough_potential(PotentialSpec(dim=2, p=4.0), Grid(2, 16.0, 64), TimeGrid(1.0, 1))


class SplitStepTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 32.0, 512)
        self.u0 = sample(GaussianState(1, 1), self.grid)
        self.tgrid = TimeGrid(0.05, 128)

    def test_free_evolution(self):
        V = potential_from_function(_constant(0.0), self.grid, self.tgrid)
        series = split_step_evolve(self.u0, V, self.tgrid)
        self.assertEqual(129, len(series))
        expected = free_propagate(self.u0, 0.05)
        self.assertLess(np.max(np.abs(series[-1].values - expected.values)), 1e-10)

    def test_constant_potential_is_a_gauge(self):
        V = potential_from_function(_constant(0.7), self.grid, self.tgrid)
        series = split_step_evolve(self.u0, V, self.tgrid)
        expected = np.exp(-0.7j * 0.05) * free_propagate(self.u0, 0.05).values
        self.assertLess(np.max(np.abs(series[-1].values - expected)), 1e-10)

    def test_real_potential_conserves_mass(self):
        V = potential_from_function(lambda t, x: np.cos(x + t), self.grid, self.tgrid)
        norms = split_step_evolve(self.u0, V, self.tgrid).l2_norms()
        np.testing.assert_allclose(np.full(len(norms), norms[0]), norms, rtol=1e-12)

    def test_time_reversal(self):
        V = potential_from_function(lambda t, x: np.cos(x + t), self.grid, self.tgrid)
        forward = split_step_evolve(self.u0, V, self.tgrid)
        backward = split_step_evolve(forward[-1], V.reversed(), TimeGrid(-0.05, 128))
        self.assertLess(np.max(np.abs(backward[-1].values - self.u0.values)), 1e-8)

    def test_strang_order(self):
        def cosine(t, x):
            return np.cos(2.0 * math.pi * x / self.grid.extent)

        finals = []
        for steps in (512, 1024, 2048):
            tgrid = TimeGrid(0.2, steps)
            V = potential_from_function(cosine, self.grid, tgrid)
            finals.append(split_step_evolve(self.u0, V, tgrid).values[-1])
        order = math.log2(np.linalg.norm(finals[0] - finals[1]) / np.linalg.norm(finals[1] - finals[2]))
        self.assertLess(abs(order - 2.0), 0.1)

    def test_time_step_too_large(self):
        tgrid = TimeGrid(0.05, 4)
        V = potential_from_function(_constant(0.0), self.grid, tgrid)
        with self.assertRaises(ResolutionError) as cm:
            split_step_evolve(self.u0, V, tgrid)
        self.assertIn('steps', cm.exception.suggestion)

    def test_mismatched_potential(self):
        V = potential_from_function(_constant(0.0), self.grid, TimeGrid(0.05, 64))
        with self.assertRaises(DomainError):
            split_step_evolve(self.u0, V, self.tgrid)
        other = potential_from_function(_constant(0.0), Grid(1, 32.0, 256), self.tgrid)
        with self.assertRaises(DomainError):
            split_step_evolve(self.u0, other, self.tgrid)


class PicardTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 16.0, 128)
        self.u0 = sample(GaussianState(1, 1), self.grid)

    def test_zero_potential_is_stationary(self):
        tgrid = TimeGrid(0.05, 16)
        V = potential_from_function(_constant(0.0), self.grid, tgrid)
        result = picard_iterate(self.u0, V, tgrid)
        self.assertEqual(0.0, result.contraction)
        self.assertEqual(0.0, result.differences[-1])
        expected = free_propagate(self.u0, 0.05)
        self.assertLess(np.max(np.abs(result.solution[-1].values - expected.values)), 1e-12)

    def test_constant_potential(self):
        tgrid = TimeGrid(0.05, 64)
        V = potential_from_function(_constant(0.5), self.grid, tgrid)
        result = picard_iterate(self.u0, V, tgrid)
        expected = np.exp(-0.5j * 0.05) * free_propagate(self.u0, 0.05).values
        self.assertLess(np.max(np.abs(result.solution[-1].values - expected)), 1e-6)
        self.assertLess(result.contraction, 0.5)

    def test_agrees_with_split_step(self):
        tgrid = TimeGrid(0.05, 128)
        V = potential_from_function(lambda t, x: np.cos(2.0 * math.pi * x / 16.0), self.grid, tgrid)
        picard = picard_iterate(self.u0, V, tgrid, n_iter=12)
        split = split_step_evolve(self.u0, V, tgrid)
        self.assertLess(lebesgue_norm(picard.solution[-1] - split[-1], 2), 1e-4)

    def test_divergence(self):
        tgrid = TimeGrid(1.0, 64)
        V = potential_from_function(_constant(50.0), self.grid, tgrid)
        with self.assertRaises(ConvergenceError) as cm:
            picard_iterate(self.u0, V, tgrid, n_iter=4)
        self.assertGreater(cm.exception.ratio, 1.0)

    def test_validation(self):
        tgrid = TimeGrid(0.05, 16)
        V = potential_from_function(_constant(0.0), self.grid, tgrid)
        with self.assertRaises(DomainError):
            picard_iterate(self.u0, V, tgrid, n_iter=0)

    def test_contraction_horizon(self):
        # the first ratio is about V T / 2
        factory = lambda tgrid: potential_from_function(_constant(10.0), self.grid, tgrid)
        found = find_contraction_horizon(self.u0, factory)
        self.assertEqual(0.0625, found.horizon)
        self.assertLess(found.ratio, 0.5)

        with self.assertRaises(ConvergenceError):
            find_contraction_horizon(self.u0, lambda tgrid: potential_from_function(_constant(50.0), self.grid, tgrid),
                                     min_horizon=1.0)


class MultiplicationTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 32.0, 512)
        self.f = sample(GaussianState(1, 1), self.grid)

    def test_index_relation(self):
        with self.assertRaises(DomainError):
            multiplication_check(self.f, self.f, 4, 4, 4)

    def test_ratio_is_moderate(self):
        ratio = multiplication_check(self.f, self.f, 4, 4, 2)
        self.assertGreater(ratio, 0.1)
        self.assertLess(ratio, 10.0)

    def test_zero_product(self):
        zero = SampledField(self.grid, np.zeros(512))
        self.assertEqual(0.0, multiplication_check(zero, self.f, 4, 4, 2))

    def test_potential_amalgam_norm(self):
        tgrid = TimeGrid(0.5, 4)
        V = potential_from_function(lambda t, x: np.exp(-math.pi * x ** 2), self.grid, tgrid)
        single = amalgam_norm(V[0], AmalgamSpec.fourier_lebesgue(4.0 / 3.0, 4.0))
        self.assertAlmostEqual(single * math.sqrt(0.5), potential_amalgam_norm(V, 2.0, 4.0), places=10)
        self.assertAlmostEqual(single, potential_amalgam_norm(V, math.inf, 4.0), places=10)


if __name__ == '__main__':
    unittest.main()
