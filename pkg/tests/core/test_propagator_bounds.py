import math
import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np
import pandas as pd

from amalgam_strichartz.core.errors import DomainError
from amalgam_strichartz.core.oracle import GaussianState, rescaled_gaussian
from amalgam_strichartz.core.propagator_bounds import FixedTimeSpec, RegionQuery, converged_strichartz_ratio, \
    dispersive_envelope, emit_region, evolved_profile, fixed_time_envelope, fixed_time_ratio, fixed_time_sweep, \
    is_admissible, kernel_amalgam_norm, region_layers, strichartz_ratio
from amalgam_strichartz.core.spectral import Grid, sample


class FixedTimeSpecTest(unittest.TestCase):
    def test_from_rq(self):
        spec = FixedTimeSpec.from_rq(math.inf, 2)
        self.assertEqual(2.0, spec.s)
        self.assertEqual(2.0, spec.s_dual)
        self.assertEqual(1.0, spec.r_dual)

        spec = FixedTimeSpec.from_rq(2, 4)
        self.assertAlmostEqual(2.0, spec.s)

        spec = FixedTimeSpec.from_rq(math.inf, math.inf)
        self.assertEqual(math.inf, spec.s)

    def test_validation(self):
        with self.assertRaises(DomainError):
            FixedTimeSpec(3, 3, 3)
        with self.assertRaises(DomainError):
            FixedTimeSpec.from_rq(1.5, 2)


class KernelTest(unittest.TestCase):
    def test_kernel_amalgam_norm(self):
        self.assertAlmostEqual(2 ** -0.25, kernel_amalgam_norm(1 / (4 * math.pi), 2), places=12)
        with self.assertRaises(DomainError):
            kernel_amalgam_norm(0.0, 2)

    def test_kernel_decay(self):
        # |t|^{-d} for p = 1 as t -> 0, |t|^{-d/2} for p = 2 as t -> inf
        small = [kernel_amalgam_norm(t, 1) for t in (1e-4, 1e-3)]
        self.assertAlmostEqual(-1.0, math.log10(small[1] / small[0]), places=2)
        large = [kernel_amalgam_norm(t, 2) for t in (1e3, 1e4)]
        self.assertAlmostEqual(-0.5, math.log10(large[1] / large[0]), places=2)


class EnvelopeTest(unittest.TestCase):
    def test_energy_case_is_flat(self):
        spec = FixedTimeSpec.from_rq(2, 4)
        np.testing.assert_allclose(np.ones(3), fixed_time_envelope([0.1, 1.0, 10.0], spec))

    def test_dispersive_envelope(self):
        # q = 2: (1 + t^2)^{-1/4} in d = 1
        self.assertAlmostEqual(2 ** -0.25, dispersive_envelope(1.0, 2))
        self.assertAlmostEqual(101 ** -0.25, dispersive_envelope(-10.0, 2))

    def test_zero_time(self):
        with self.assertRaises(DomainError):
            fixed_time_envelope(0.0, FixedTimeSpec.from_rq(4, 2))
        with self.assertRaises(DomainError):
            fixed_time_ratio(GaussianState(1, 1), 0.0, FixedTimeSpec.from_rq(4, 2))


class FixedTimeRatioTest(unittest.TestCase):
    def test_energy_ratio_is_one(self):
        spec = FixedTimeSpec.from_rq(2, 2)
        for lam in (0.1, 1.0, 10.0):
            for t in (0.01, 1.0, 100.0):
                self.assertAlmostEqual(1.0, fixed_time_ratio(rescaled_gaussian(lam), t, spec), places=10)

    def test_sampled_agrees_with_closed_form(self):
        spec = FixedTimeSpec.from_rq(2, 2)
        u0 = GaussianState(1, 1)
        f = sample(u0, Grid(1, 32.0, 1024))
        self.assertLess(abs(fixed_time_ratio(f, 0.1, spec) - 1.0), 1e-3)

    def test_dimension_mismatch(self):
        with self.assertRaises(DomainError):
            fixed_time_ratio(GaussianState(1, 1, dim=2), 1.0, FixedTimeSpec.from_rq(4, 2))

    def test_sweep_bounded(self):
        spec = FixedTimeSpec.from_rq(math.inf, 2)
        sweep = fixed_time_sweep(spec, np.geomspace(0.1, 10.0, 5), (0.01, 1.0, 100.0))
        self.assertGreater(sweep.ratio_min, 0.0)
        self.assertLessEqual(sweep.ratio_min, sweep.ratio_max)
        self.assertTrue(sweep.bounded)


class AdmissibilityTest(unittest.TestCase):
    def test_energy_corner(self):
        self.assertTrue(is_admissible(RegionQuery(math.inf, 2, math.inf, 2)))

    def test_reasons(self):
        result = is_admissible(RegionQuery(2, math.inf, math.inf, math.inf, 2))
        self.assertEqual(('r1_inf_d2', 'r2_inf_d2'), result.reasons)
        self.assertEqual(('pri2',), is_admissible(RegionQuery(4, 2, 4, 2)).reasons)
        self.assertIn('r1_gt_r2', is_admissible(RegionQuery(math.inf, 4, math.inf, 2)).reasons)
        self.assertIn('q2_lt_2', is_admissible(RegionQuery(math.inf, 2, 1.5, 2)).reasons)

    def test_r1_cap_in_three_dimensions(self):
        self.assertIn('r1_cap', is_admissible(RegionQuery(math.inf, 8, math.inf, 8, 3)).reasons)

    def test_fractions_are_exact(self):
        # 2/q + d/r = d/2 on the boundary of both layers
        query = RegionQuery.from_inverses(Fraction(1, 8), Fraction(1, 4), Fraction(1, 8), Fraction(1, 4))
        self.assertEqual(Fraction(8), query.q1)
        self.assertTrue(is_admissible(query))
        self.assertEqual('8,4,8,4', query.label())

    def test_region_layers(self):
        frame = region_layers(1, 3)
        self.assertEqual(9, len(frame))
        self.assertEqual(["dim", "inv_q", "inv_r", "in_I1", "in_I2"], list(frame.columns))
        corner = frame[(frame.inv_q == 0.0) & (frame.inv_r == 0.5)].iloc[0]
        self.assertTrue(corner.in_I2)
        far = frame[(frame.inv_q == 1.0) & (frame.inv_r == 1.0)].iloc[0]
        self.assertTrue(far.in_I1)
        self.assertFalse(far.in_I2)
        with self.assertRaises(DomainError):
            region_layers(1, 1)

    def test_emit_region(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'region.csv')
            emit_region(2, 5, path)
            frame = pd.read_csv(path)
        self.assertEqual(25, len(frame))
        self.assertTrue((frame.dim == 2).all())


class StrichartzRatioTest(unittest.TestCase):
    def test_energy_corner(self):
        result = converged_strichartz_ratio(GaussianState(1, 1), RegionQuery(math.inf, 2, math.inf, 2))
        self.assertTrue(result.converged)
        self.assertAlmostEqual(2 ** -0.25, result.ratio, places=6)

    def test_inadmissible(self):
        with self.assertRaises(DomainError) as cm:
            strichartz_ratio(GaussianState(1, 1), RegionQuery(4, 2, 4, 2), 10.0)
        self.assertEqual(('pri2',), cm.exception.reasons)

    def test_evolved_profile_conserves_energy(self):
        profile = evolved_profile(GaussianState(1, 1), 2, 2)
        values = profile(np.array([0.0, 1.0, 100.0]))
        np.testing.assert_allclose(np.full(3, values[0]), values)

    def test_chirp_data(self):
        with self.assertRaises(DomainError):
            evolved_profile(GaussianState(1, 1j), 2, 2)


if __name__ == '__main__':
    unittest.main()
