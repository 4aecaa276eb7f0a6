"""Uniform periodic grids and discrete Fourier analysis.

The transform convention is f^(xi) = int f(x) exp(-2 pi i x.xi) dx. The
free propagator e^{it Delta} is the multiplier exp(-4 pi^2 i t |xi|^2).
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from amalgam_strichartz.const import NYQUIST_TOL, SUPPORT_LEVEL, SUPPORTED_DIMS, TAIL_TOL
from amalgam_strichartz.core.errors import DomainError, ResolutionError
from amalgam_strichartz.core.oracle import Exponent, GaussianState
from amalgam_strichartz.defaults import GRID_DEFAULTS

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grid:
    """A centered uniform lattice x_k = (k - N/2) h, h = L/N, on each axis.

    Args:
        dim (int): Space dimension d
        extent (float): Period L per axis
        points (int): Number of samples N per axis, a power of two
    """
    dim: int
    extent: float
    points: int

    def __post_init__(self):
        if self.dim not in SUPPORTED_DIMS:
            raise DomainError(f"Dimension must be one of {SUPPORTED_DIMS}, got {self.dim}")
        if self.points < 2 or self.points & (self.points - 1):
            raise DomainError(f"Grid points must be a power of two >= 2, got {self.points}")
        if not self.extent > 0:
            raise DomainError(f"Grid extent must be positive, got {self.extent}")
        object.__setattr__(self, 'extent', float(self.extent))

    @classmethod
    def default(cls, dim: int = 1) -> 'Grid':
        return cls(dim, **GRID_DEFAULTS[dim])

    @property
    def spacing(self) -> float:
        return self.extent / self.points

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.points,) * self.dim

    @property
    def cell(self) -> float:
        """Volume h^d of one lattice cell."""
        return self.spacing ** self.dim

    def axis(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.spacing

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*([self.axis()] * self.dim), indexing='ij'))

    def r2(self) -> np.ndarray:
        """Squared radius |x|^2 on the lattice."""
        ax2 = self.axis() ** 2
        r2 = ax2
        for _ in range(self.dim - 1):
            r2 = np.add.outer(r2, ax2)
        return r2

    def dual(self) -> 'Grid':
        """The frequency lattice {k/L}; dual().dual() is the grid itself."""
        return Grid(self.dim, self.points / self.extent, self.points)

    def refined(self) -> 'Grid':
        """Same extent, twice the points."""
        return Grid(self.dim, self.extent, 2 * self.points)

    def enlarged(self) -> 'Grid':
        """Twice the extent and the points; the spacing is kept."""
        return Grid(self.dim, 2 * self.extent, 2 * self.points)

    def fitted(self, *states: GaussianState, max_doublings: int = 12) -> 'Grid':
        """Smallest dyadic enlargement of this grid on which all states can be sampled.

        Raises:
            ResolutionError: if no enlargement within max_doublings suffices
        """
        needed = max(required_extent(s) for s in states)
        grid = self
        for _ in range(max_doublings):
            if grid.extent >= needed:
                if grid is not self:
                    LOG.debug("grid enlarged to L=%g, N=%d", grid.extent, grid.points)
                return grid
            grid = grid.enlarged()
        raise ResolutionError(f"Cannot fit states on grid L={self.extent}",
                              suggestion=f"need L >= {needed:.4g}")


def required_extent(state: GaussianState) -> float:
    """Box length L with |state|(L/2) < TAIL_TOL |state|(0)."""
    if state.c.real <= 0:
        raise DomainError("Only decaying states (Re(c) > 0) can be sampled")
    return 2.0 * math.sqrt(math.log(1.0 / TAIL_TOL) / (math.pi * state.c.real))


@dataclass(frozen=True, eq=False)
class SampledField:
    """Complex samples of a function on a periodic grid; values are read-only."""
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise DomainError(f"Values of shape {values.shape} do not match grid {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("Sampled field contains NaN or Inf")
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def __mul__(self, other) -> 'SampledField':
        if isinstance(other, SampledField):
            _check_same_grid(self, other)
            return SampledField(self.grid, self.values * other.values)
        return SampledField(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: 'SampledField') -> 'SampledField':
        _check_same_grid(self, other)
        return SampledField(self.grid, self.values + other.values)

    def __sub__(self, other: 'SampledField') -> 'SampledField':
        _check_same_grid(self, other)
        return SampledField(self.grid, self.values - other.values)

    def l2_norm(self) -> float:
        return lebesgue_norm(self, 2)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


def _check_same_grid(f: SampledField, g: SampledField):
    if f.grid != g.grid:
        raise DomainError(f"Grid mismatch: {f.grid} vs {g.grid}")


def sample(state: GaussianState, grid: Grid) -> SampledField:
    """Evaluates a decaying state on the lattice.

    Raises:
        ResolutionError: if the state is not below TAIL_TOL of its peak at the box edge
    """
    if state.dim != grid.dim:
        raise DomainError(f"Dimension mismatch: state {state.dim}, grid {grid.dim}")
    needed = required_extent(state)
    if grid.extent < needed:
        raise ResolutionError(f"Grid extent L={grid.extent} too small to sample state with c={state.c}",
                              suggestion=f"use L >= {needed:.4g}")
    return SampledField(grid, state.evaluate_r2(grid.r2()))


def forward_transform(f: SampledField) -> SampledField:
    """Riemann-sum Fourier transform; the result lives on the dual grid."""
    axes = tuple(range(f.grid.dim))
    spectrum = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(f.values, axes=axes), axes=axes), axes=axes)
    return SampledField(f.grid.dual(), spectrum * f.grid.cell)


def inverse_transform(spectrum: SampledField) -> SampledField:
    target = spectrum.grid.dual()
    axes = tuple(range(target.dim))
    values = np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(spectrum.values, axes=axes), axes=axes), axes=axes)
    return SampledField(target, values / target.cell)


def lebesgue_norm(f: SampledField, p: Exponent) -> float:
    modulus = np.abs(f.values)
    if math.isinf(p):
        return float(np.max(modulus))
    return float((np.sum(modulus ** p) * f.grid.cell) ** (1.0 / p))


def fourier_lebesgue_norm(f: SampledField, p: Exponent) -> float:
    return lebesgue_norm(forward_transform(f), p)


def sobolev_norm(f: SampledField, s: float) -> float:
    """Discrete H_s norm, (sum (1+|xi|^2)^s |f^(xi)|^2 / L^d)^{1/2}."""
    spectrum = forward_transform(f)
    weight = (1.0 + spectrum.grid.r2()) ** s
    return float(np.sqrt(np.sum(weight * np.abs(spectrum.values) ** 2) * spectrum.grid.cell))


def _nyquist_shell(values: np.ndarray) -> np.ndarray:
    mask = np.zeros(values.shape, dtype=bool)
    for axis in range(values.ndim):
        index = [slice(None)] * values.ndim
        index[axis] = 0
        mask[tuple(index)] = True
        index[axis] = -1
        mask[tuple(index)] = True
    return mask


def radius_above(f: SampledField, level: float) -> float:
    """Largest |x| where |f| is at least level times its peak."""
    modulus = np.abs(f.values)
    peak = modulus.max()
    if peak == 0:
        return 0.0
    return float(np.sqrt(f.grid.r2()[modulus >= level * peak].max()))


def bandwidth(f: SampledField, level: float = SUPPORT_LEVEL) -> float:
    return radius_above(forward_transform(f), level)


def check_resolved(f: SampledField):
    """Raises ResolutionError unless the spectrum is negligible on the Nyquist shell."""
    spectrum = np.abs(forward_transform(f).values)
    peak = spectrum.max()
    if peak > 0 and spectrum[_nyquist_shell(spectrum)].max() > NYQUIST_TOL * peak:
        raise ResolutionError(f"Field is not band-limited on grid with h={f.grid.spacing}",
                              suggestion=f"use at least N={2 * f.grid.points} points")


def check_dispersion(f: SampledField, t: float):
    """Raises ResolutionError when the field disperses out of the box by time t."""
    reach = 4.0 * math.pi * abs(t) * bandwidth(f) + radius_above(f, SUPPORT_LEVEL)
    if reach >= f.grid.extent / 2:
        raise ResolutionError(f"Data disperses beyond the box by t={t}",
                              suggestion=f"use L > {2 * reach:.4g}")


def propagator_multiplier(grid: Grid, t: float) -> np.ndarray:
    """exp(-4 pi^2 i t |xi|^2) on the dual lattice of grid."""
    return np.exp(-4j * math.pi ** 2 * t * grid.dual().r2())


def free_propagate(f: SampledField, t: float, check: bool = True) -> SampledField:
    """Applies e^{it Delta} by its Fourier multiplier.

    Args:
        f (SampledField): Data
        t (float): Time, either sign
        check (bool): Whether to verify band limitation and dispersion first

    Raises:
        ResolutionError: if the field is not resolved or leaves the box
    """
    if t == 0:
        return f
    if check:
        check_resolved(f)
        check_dispersion(f, t)
    spectrum = forward_transform(f)
    return inverse_transform(SampledField(spectrum.grid, spectrum.values * propagator_multiplier(f.grid, t)))


def convolve(f: SampledField, g: SampledField) -> SampledField:
    """Periodic convolution with Riemann normalization h^d."""
    _check_same_grid(f, g)
    return inverse_transform(forward_transform(f) * forward_transform(g))


@dataclass(frozen=True, eq=False)
class FieldSeries:
    """Fields at a sequence of times, values of shape (len(times),) + grid.shape."""
    grid: Grid
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=complex)
        if values.shape != (len(times),) + self.grid.shape:
            raise DomainError(f"Series values of shape {values.shape} do not match "
                              f"{len(times)} times on grid {self.grid.shape}")
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_fields(cls, fields: Sequence[SampledField], times: Sequence[float]) -> 'FieldSeries':
        grid = fields[0].grid
        for f in fields:
            _check_same_grid(fields[0], f)
        return cls(grid, np.asarray(times), np.stack([f.values for f in fields]))

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, index: int) -> SampledField:
        return SampledField(self.grid, self.values[index])

    def __iter__(self) -> Iterator[SampledField]:
        for i in range(len(self)):
            yield self[i]

    @property
    def dt(self) -> Optional[float]:
        """The time step if the times are uniform, else None."""
        if len(self.times) < 2:
            return None
        steps = np.diff(self.times)
        if np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            return float(steps[0])
        return None

    def reversed(self) -> 'FieldSeries':
        return FieldSeries(self.grid, self.times[::-1], self.values[::-1])

    def scaled(self, factor: float) -> 'FieldSeries':
        return FieldSeries(self.grid, self.times, self.values * factor)

    def l2_norms(self) -> np.ndarray:
        axes = tuple(range(1, self.values.ndim))
        return np.sqrt(np.sum(np.abs(self.values) ** 2, axis=axes) * self.grid.cell)
