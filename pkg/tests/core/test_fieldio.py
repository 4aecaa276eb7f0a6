import json
import os
import tempfile
import unittest

import numpy as np

from amalgam_strichartz.core.errors import DomainError
from amalgam_strichartz.core.fieldio import decode_field, encode_field, read_field, read_series, write_field, \
    write_series
from amalgam_strichartz.core.oracle import GaussianState, chirp_state
from amalgam_strichartz.core.spectral import FieldSeries, Grid, free_propagate, sample


class FieldCodecTest(unittest.TestCase):
    def setUp(self):
        self.grid = Grid(1, 16.0, 128)
        self.f = sample(chirp_state(1.0, 2.0), self.grid)

    def test_round_trip(self):
        back = decode_field(encode_field(self.f))
        self.assertEqual(self.grid, back.grid)
        np.testing.assert_array_equal(self.f.values, back.values)

    def test_layout(self):
        data = encode_field(self.f)
        self.assertEqual(8 + 8 + 8 + 16 * 128, len(data))
        self.assertEqual(1, int(np.frombuffer(data[:8], dtype='<i8')[0]))
        self.assertEqual(16.0, float(np.frombuffer(data[16:24], dtype='<f8')[0]))

    def test_two_dimensions(self):
        grid = Grid(2, 16.0, 32)
        f = sample(GaussianState(1, 1, dim=2), grid)
        data = encode_field(f)
        self.assertEqual(8 + 2 * 8 + 2 * 8 + 16 * 32 * 32, len(data))
        np.testing.assert_array_equal(f.values, decode_field(data).values)

    def test_truncated(self):
        data = encode_field(self.f)
        with self.assertRaises(DomainError):
            decode_field(data[:-1])
        with self.assertRaises(DomainError):
            decode_field(data[:4])

    def test_bad_dimension(self):
        data = np.array([5], dtype='<i8').tobytes() + encode_field(self.f)[8:]
        with self.assertRaises(DomainError):
            decode_field(data)

    def test_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'chirp.bin')
            write_field(path, self.f)
            back = read_field(path)
        np.testing.assert_array_equal(self.f.values, back.values)


class SeriesFileTest(unittest.TestCase):
    def setUp(self):
        f = sample(GaussianState(1, 1), Grid(1, 16.0, 128))
        times = [0.0, 0.01, 0.02]
        self.series = FieldSeries.from_fields([free_propagate(f, t) for t in times], times)

    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            manifest_path = write_series(tmp, self.series, name='solution', seed=3, spec={"alpha": 2.0})
            self.assertEqual(os.path.join(tmp, 'solution.manifest.json'), manifest_path)
            with open(manifest_path) as fp:
                manifest = json.load(fp)
            back = read_series(manifest_path)

        self.assertEqual('solution.bin', manifest["file"])
        self.assertEqual(3, manifest["seed"])
        self.assertEqual({"alpha": 2.0}, manifest["spec"])
        self.assertEqual([0.0, 0.01, 0.02], manifest["times"])
        self.assertEqual([0, 24 + 16 * 128, 2 * (24 + 16 * 128)], manifest["offsets"])
        np.testing.assert_array_equal(self.series.values, back.values)
        np.testing.assert_array_equal(self.series.times, back.times)

    def test_inconsistent_manifest(self):
        with tempfile.TemporaryDirectory() as tmp:
            manifest_path = write_series(tmp, self.series)
            with open(manifest_path) as fp:
                manifest = json.load(fp)

            manifest["times"] = manifest["times"][:2]
            with open(manifest_path, 'w') as fp:
                json.dump(manifest, fp)
            with self.assertRaises(DomainError):
                read_series(manifest_path)

            manifest["times"], manifest["offsets"] = [], []
            with open(manifest_path, 'w') as fp:
                json.dump(manifest, fp)
            with self.assertRaises(DomainError):
                read_series(manifest_path)


if __name__ == '__main__':
    unittest.main()
