import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgam_strichartz.core.errors import DomainError
from amalgam_strichartz.core.oracle import GaussianState, chirp_state, conjugate, evolved_rescaled_norm, \
    exact_chirp_amalgam_norm, exact_evolved_lr1_lr2_norm, exact_flq_lr_norm, exact_lr1_lr2_norm, free_evolve_gaussian, \
    gauss_convolve, gauss_inner_product, gauss_integral, gauss_multiply, inv, kernel_state, rescaled_gaussian, \
    state_flq_lr_norm, state_l2_norm, state_lp_norm, state_lr1_lr2_norm

exponents = st.sampled_from([1.0, 1.5, 2.0, 4.0, 8.0, math.inf])


class OracleExponentTest(unittest.TestCase):
    def test_inv(self):
        self.assertEqual(0.5, inv(2))
        self.assertEqual(0.0, inv(math.inf))
        with self.assertRaises(DomainError):
            inv(0)

    def test_conjugate(self):
        self.assertEqual(2.0, conjugate(2))
        self.assertEqual(math.inf, conjugate(1))
        self.assertEqual(1.0, conjugate(math.inf))
        self.assertAlmostEqual(4.0 / 3.0, conjugate(4))
        with self.assertRaises(DomainError):
            conjugate(0.5)


class GaussianStateTest(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(DomainError):
            GaussianState(1, 0)
        with self.assertRaises(DomainError):
            GaussianState(1, -1 + 1j)
        with self.assertRaises(DomainError):
            GaussianState(1, 1, dim=4)

    def test_evaluate(self):
        u = GaussianState(2, 1)
        self.assertAlmostEqual(2.0, u(0.0).real)
        self.assertAlmostEqual(2.0 * math.exp(-math.pi), u(1.0).real)

        u2 = GaussianState(1, 1, dim=2)
        self.assertAlmostEqual(math.exp(-2.0 * math.pi), u2(np.array([1.0, 1.0])).real)

    def test_kernel_is_chirp(self):
        k = kernel_state(1.0)
        self.assertTrue(k.is_chirp)
        self.assertAlmostEqual((4.0 * math.pi) ** -0.5, abs(k.amplitude))
        with self.assertRaises(DomainError):
            kernel_state(0.0)

    def test_chirp_state(self):
        self.assertEqual(GaussianState(1, 1), chirp_state(1, 0))
        with self.assertRaises(DomainError):
            chirp_state(-1, 1)
        with self.assertRaises(DomainError):
            chirp_state(0, 0)

    def test_rescaled_gaussian(self):
        self.assertEqual(GaussianState(1, 4), rescaled_gaussian(2))
        with self.assertRaises(DomainError):
            rescaled_gaussian(0)


class GaussianArithmeticTest(unittest.TestCase):
    def test_gauss_integral(self):
        self.assertAlmostEqual(2 ** -0.5, gauss_integral(2).real)
        self.assertAlmostEqual(0.5, gauss_integral(2, d=2).real)

    def test_multiply_and_convolve(self):
        u = GaussianState(1, 1)
        self.assertEqual(GaussianState(1, 2), gauss_multiply(u, u))

        v = gauss_convolve(u, u)
        self.assertAlmostEqual(2 ** -0.5, v.amplitude.real)
        self.assertAlmostEqual(0.5, v.c.real)

    def test_inner_product(self):
        u = GaussianState(1, 1)
        self.assertAlmostEqual(state_l2_norm(u) ** 2, gauss_inner_product(u, u).real)

        with self.assertRaises(DomainError):
            gauss_inner_product(kernel_state(1), kernel_state(1))

    def test_free_evolution_preserves_l2(self):
        u = GaussianState(1, 1)
        for t in (0.01, 1.0, 100.0, -3.0):
            self.assertAlmostEqual(state_l2_norm(u), state_l2_norm(free_evolve_gaussian(u, t)), places=12)

    def test_free_evolution_composes(self):
        u = GaussianState(1, 2)
        twice = free_evolve_gaussian(free_evolve_gaussian(u, 0.05), 0.07)
        once = free_evolve_gaussian(u, 0.12)
        self.assertAlmostEqual(once.c, twice.c, places=12)
        self.assertAlmostEqual(once.amplitude, twice.amplitude, places=12)

    def test_free_evolution_of_chirp_fails(self):
        with self.assertRaises(DomainError):
            free_evolve_gaussian(kernel_state(1), 1)


class ExactNormTest(unittest.TestCase):
    def test_chirp_amalgam_norm(self):
        self.assertAlmostEqual(0.8409, exact_chirp_amalgam_norm(1.0, 2), places=4)
        # (1 + a^2)^{-1/4} at p = inf
        self.assertAlmostEqual(2 ** -0.25, exact_chirp_amalgam_norm(1.0, math.inf), places=12)
        with self.assertRaises(DomainError):
            exact_chirp_amalgam_norm(0.0, 2)

    def test_flq_lr_energy_case(self):
        # W(FL^2, L^2) = ||f||_2 ||g||_2 does not see the chirp parameter
        for b in (0.0, 1.0, 10.0):
            self.assertAlmostEqual(2 ** -0.5 * 4 ** -0.25, exact_flq_lr_norm(4.0, b, 2, 2), places=12)

    def test_flq_lr_vectorized(self):
        a = np.array([0.5, 1.0, 2.0])
        values = exact_flq_lr_norm(a, 1.0, 4, 2)
        self.assertEqual((3,), values.shape)
        for ai, value in zip(a, values):
            self.assertAlmostEqual(exact_flq_lr_norm(float(ai), 1.0, 4, 2), value)
        with self.assertRaises(DomainError):
            exact_flq_lr_norm(0.0, 1.0, 2, 2)

    def test_lr1_lr2_energy_case(self):
        self.assertAlmostEqual(2 ** -0.5, exact_lr1_lr2_norm(1.0, 5.0, 2, 2), places=12)

    def test_state_norms(self):
        u = GaussianState(3, 2)
        self.assertAlmostEqual(3.0 * 4 ** -0.25, state_l2_norm(u))
        self.assertAlmostEqual(3.0, state_lp_norm(u, math.inf))
        with self.assertRaises(DomainError):
            state_lp_norm(kernel_state(1), 2)

    def test_state_flq_lr_matches_chirp_family(self):
        u = chirp_state(1.0, 1.0)
        self.assertAlmostEqual(exact_flq_lr_norm(1.0, 1.0, 4, 2), state_flq_lr_norm(u, 4, 2), places=12)

    def test_state_norms_of_kernel(self):
        k = kernel_state(1 / (4 * math.pi))
        self.assertAlmostEqual(exact_chirp_amalgam_norm(1.0, 2), state_flq_lr_norm(k, 2, math.inf), places=12)
        with self.assertRaises(DomainError):
            state_flq_lr_norm(k, 2, 2)
        with self.assertRaises(DomainError):
            state_lr1_lr2_norm(k, 2, 2)

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(0.05, 20.0), b=st.floats(-20.0, 20.0), q=exponents, r=exponents)
    def test_flq_lr_positive(self, a, b, q, r):
        value = exact_flq_lr_norm(a, b, q, r)
        self.assertTrue(value > 0)
        self.assertTrue(math.isfinite(value))

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(0.05, 20.0), r1=exponents, r2=exponents)
    def test_lr1_lr2_ignores_chirp(self, a, r1, r2):
        # |phi^{(a+ib)} T_y g| does not depend on b
        self.assertAlmostEqual(exact_lr1_lr2_norm(a, 0.0, r1, r2), exact_lr1_lr2_norm(a, 3.0, r1, r2))


class EvolvedNormTest(unittest.TestCase):
    def test_rescaled_norm_at_zero(self):
        self.assertEqual(1.0, evolved_rescaled_norm(1.0, 0.0, 2, 2))
        with self.assertRaises(DomainError):
            evolved_rescaled_norm(0.0, 1.0, 2, 2)

    def test_rescaled_norm_decay(self):
        # |t|^{d(1/r2 - 1/2)} for large t
        values = evolved_rescaled_norm(1.0, np.array([1e3, 1e4]), 2, math.inf)
        self.assertAlmostEqual(-0.5, math.log10(values[1] / values[0]), places=4)

    def test_exact_evolved_norm_conserves_l2(self):
        values = exact_evolved_lr1_lr2_norm(2.0, np.array([0.0, 0.5, 10.0]), 2, 2)
        np.testing.assert_allclose(np.full(3, values[0]), values)


if __name__ == '__main__':
    unittest.main()
