"""Binary snapshots of sampled fields.

A field file is a little-endian header, the dimension (int64), the number of
points per axis (int64 each) and the extent per axis (float64 each), followed
by the complex128 values in row-major order. A series is a directory of field
files plus a JSON manifest listing times and byte offsets.
"""
import io
import json
import logging
import os
from typing import Any, BinaryIO, Dict, Optional, Union

import numpy as np

from amalgam_strichartz.core.errors import DomainError
from amalgam_strichartz.core.spectral import FieldSeries, Grid, SampledField

LOG = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.json'

_INT = np.dtype('<i8')
_FLOAT = np.dtype('<f8')
_COMPLEX = np.dtype('<c16')

PathLike = Union[str, os.PathLike]


def _read_exact(stream: BinaryIO, size: int) -> bytes:
    data = stream.read(size)
    if len(data) != size:
        raise DomainError(f"Truncated field data: expected {size} bytes, got {len(data)}")
    return data


def encode_field(f: SampledField) -> bytes:
    grid = f.grid
    header = (np.array([grid.dim] + [grid.points] * grid.dim, dtype=_INT).tobytes()
              + np.array([grid.extent] * grid.dim, dtype=_FLOAT).tobytes())
    return header + np.ascontiguousarray(f.values, dtype=_COMPLEX).tobytes()


def _decode_stream(stream: BinaryIO) -> SampledField:
    dim = int(np.frombuffer(_read_exact(stream, _INT.itemsize), dtype=_INT)[0])
    if dim < 1 or dim > 3:
        raise DomainError(f"Invalid field header: dimension {dim}")
    points = np.frombuffer(_read_exact(stream, dim * _INT.itemsize), dtype=_INT)
    extents = np.frombuffer(_read_exact(stream, dim * _FLOAT.itemsize), dtype=_FLOAT)
    if len(set(points.tolist())) != 1 or len(set(extents.tolist())) != 1:
        raise DomainError("Only grids with equal axes are supported")
    grid = Grid(dim, float(extents[0]), int(points[0]))
    count = int(np.prod(points))
    values = np.frombuffer(_read_exact(stream, count * _COMPLEX.itemsize), dtype=_COMPLEX)
    return SampledField(grid, values.reshape(grid.shape))


def decode_field(data: bytes) -> SampledField:
    """Inverse of encode_field.

    Raises:
        DomainError: for a malformed header or truncated values
    """
    return _decode_stream(io.BytesIO(data))


def write_field(path: PathLike, f: SampledField):
    with open(path, 'wb') as fp:
        fp.write(encode_field(f))


def read_field(path: PathLike) -> SampledField:
    with open(path, 'rb') as fp:
        return _decode_stream(fp)


def write_series(directory: PathLike, series: FieldSeries, name: str = 'field',
                 seed: Optional[int] = None, spec: Optional[Dict[str, Any]] = None) -> str:
    """Writes all snapshots into one file and a manifest next to it.

    Args:
        directory: Target directory, created if missing
        series: The snapshots
        name: Base name of the data file
        seed: Seed recorded in the manifest
        spec: Parameters recorded in the manifest

    Returns:
        The manifest path
    """
    os.makedirs(directory, exist_ok=True)
    data_name = f"{name}.bin"
    offsets = []
    with open(os.path.join(directory, data_name), 'wb') as fp:
        for f in series:
            offsets.append(fp.tell())
            fp.write(encode_field(f))
    manifest = {
        "file": data_name,
        "seed": seed,
        "spec": spec or {},
        "times": [float(t) for t in series.times],
        "offsets": offsets,
    }
    manifest_path = os.path.join(directory, f"{name}.{MANIFEST_NAME}")
    with open(manifest_path, 'w') as fp:
        json.dump(manifest, fp, indent=2, sort_keys=True)
    LOG.debug("wrote %d snapshots to %s", len(series), directory)
    return manifest_path


def read_series(manifest_path: PathLike) -> FieldSeries:
    """Reads a series through its manifest.

    Raises:
        DomainError: if the manifest and data do not agree
    """
    with open(manifest_path) as fp:
        manifest = json.load(fp)
    times, offsets = manifest["times"], manifest["offsets"]
    if len(times) != len(offsets):
        raise DomainError(f"Manifest lists {len(times)} times but {len(offsets)} offsets")
    if not offsets:
        raise DomainError("Manifest lists no snapshots")
    data_path = os.path.join(os.path.dirname(os.fspath(manifest_path)), manifest["file"])
    fields = []
    with open(data_path, 'rb') as fp:
        for offset in offsets:
            fp.seek(offset)
            fields.append(_decode_stream(fp))
    return FieldSeries.from_fields(fields, times)
