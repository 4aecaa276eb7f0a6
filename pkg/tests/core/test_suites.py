import os
import tempfile
import unittest

import pandas as pd

from amalgam_strichartz.core.config import RunConfig
from amalgam_strichartz.core.errors import DomainError
from amalgam_strichartz.core.spectral import Grid
from amalgam_strichartz.core.suites import SharpnessQuery, _norm_case, _profile_stride, build_cases, potential_cases, \
    run, run_region


def _config(**flags) -> RunConfig:
    return RunConfig.from_sources(env={}, flags=dict(dict(jobs=1), **flags))


class SharpnessQueryTest(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(DomainError):
            SharpnessQuery('z4')

    def test_defaults(self):
        query = SharpnessQuery('dd5', q1=6.0)
        self.assertEqual(6.0, query.value('q1'))
        self.assertEqual(8.0, query.value('q2'))
        self.assertIsNone(query.value('alpha'))
        self.assertEqual({"claim": 'dd5', "q1": 6.0}, query.to_dict())


class BuildCasesTest(unittest.TestCase):
    def test_single_suite(self):
        cases = build_cases(_config(experiment='norms'))
        self.assertEqual({'norms'}, {case.experiment for case in cases})
        self.assertEqual(13, len(cases))
        self.assertEqual('a=0.25,b=0', cases[0].name)

    def test_all_suites(self):
        experiments = [case.experiment for case in build_cases(_config())]
        self.assertEqual(['norms', 'fixed-time', 'strichartz', 'sharpness', 'potential'],
                         list(dict.fromkeys(experiments)))

    def test_query_replaces_suites(self):
        cases = build_cases(_config(experiment='sharpness'), SharpnessQuery('z3'))
        self.assertEqual(['z3'], [case.name for case in cases])

    def test_potential_needs_one_dimension(self):
        with self.assertLogs('amalgam_strichartz.core.suites', 'WARNING'):
            self.assertEqual([], potential_cases(_config(dim=2)))


class NormCaseTest(unittest.TestCase):
    def test_rows_carry_norm_values(self):
        rows = _norm_case(_config(experiment='norms', grid_n=4096, grid_l=64.0), 1.0, 0.0, (1.0, 2.0))
        self.assertEqual(4, len(rows))
        for row in rows:
            self.assertTrue(row.passed, msg=row.case)
            self.assertEqual(1, len(row.norm_values))
            record = row.norm_values[0]
            self.assertEqual('chirp:a=1,b=0', record["field_id"])
            self.assertEqual('fourier_lebesgue', record["local_kind"])
            self.assertEqual((row.params["q"], row.params["r"]), (record["p"], record["q"]))
            self.assertEqual(row.measured, record["value"])

    def test_profile_stride(self):
        self.assertEqual(2, _profile_stride(Grid(1, 64.0, 1024)))
        self.assertEqual(16, _profile_stride(Grid(1, 8.0, 1024)))
        self.assertEqual(1, _profile_stride(Grid(1, 64.0, 256)))
        # at least two centers remain
        self.assertEqual(2, _profile_stride(Grid(1, 0.1, 4)))


class RunTest(unittest.TestCase):
    def test_single_claim(self):
        report = run(_config(experiment='sharpness', seed=4), SharpnessQuery('z3', r=4.0))
        self.assertEqual(1, len(report.rows))
        row = report.rows[0]
        self.assertEqual('z3:d=1,r=4', row.case)
        self.assertEqual(-0.25, row.predicted)
        self.assertAlmostEqual(-0.25, row.measured, delta=0.05)
        self.assertTrue(report.passed)
        self.assertEqual({"claim": 'z3', "r": 4.0}, report.config["query"])
        self.assertEqual(4, report.config["seed"])
        self.assertNotIn("jobs", report.config)

    def test_domain_errors_abort(self):
        with self.assertRaises(DomainError):
            run(_config(experiment='sharpness'), SharpnessQuery('s3', r=2.0))

    def test_region(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = run_region(1, tmp, resolution=11)
            self.assertEqual(os.path.join(tmp, 'region-d1.csv'), path)
            frame = pd.read_csv(path)
        self.assertEqual(121, len(frame))
        self.assertTrue(frame.in_I1.any())


if __name__ == '__main__':
    unittest.main()
