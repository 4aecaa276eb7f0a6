"""Schroedinger evolution with a time-dependent potential, i u_t + D u = V u.

Potentials are piecewise constant in time: V_m acts on [t_m, t_{m+1}] and is
sampled at the step midpoint.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from amalgam_strichartz.const import BAND_LEVEL, MAX_PHASE_PER_STEP
from amalgam_strichartz.core.amalgam import AmalgamSpec, WindowSpec, amalgam_norm
from amalgam_strichartz.core.errors import ConvergenceError, DomainError, ResolutionError
from amalgam_strichartz.core.oracle import Exponent, conjugate, inv
from amalgam_strichartz.core.spectral import (FieldSeries, Grid, SampledField, bandwidth, check_dispersion,
                                              check_resolved, propagator_multiplier)

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class PotentialSpec:
    """Parameters of a rough potential in L^alpha_t W(FL^{p'}, L^p)_x.

    Args:
        alpha (float): Time exponent, at least 1
        p (float): Space exponent, d < p <= inf
        sobolev_s (float): Sobolev regularity, s > 1/p' - 1/2
        seed (int): Seed of the random phases
        real_valued (bool): Whether V is real
        dim (int): Space dimension
        amplitude (float): Overall size of the coefficients

    Raises:
        DomainError: if 1/alpha + d/p > 1 or s is too small
    """
    alpha: float = 2.0
    p: float = 4.0
    sobolev_s: float = 0.3
    seed: int = 0
    real_valued: bool = True
    dim: int = 1
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 1:
            raise DomainError(f"Time exponent alpha must be at least 1, got {self.alpha}")
        if not self.p > self.dim:
            raise DomainError(f"Space exponent p must exceed d={self.dim}, got {self.p}")
        if inv(self.alpha) + self.dim * inv(self.p) > 1 + 1e-12:
            raise DomainError(f"Index condition 1/alpha + d/p <= 1 fails for alpha={self.alpha}, p={self.p}")
        if not self.sobolev_s > self.min_sobolev:
            raise DomainError(f"Sobolev index must exceed 1/p' - 1/2 = {self.min_sobolev}, got {self.sobolev_s}")

    @property
    def p_dual(self) -> float:
        return conjugate(self.p)

    @property
    def min_sobolev(self) -> float:
        return inv(self.p_dual) - 0.5


@dataclass(frozen=True)
class TimeGrid:
    """Uniform steps of [0, T]; a negative horizon runs backwards in time."""
    horizon: float
    steps: int

    def __post_init__(self):
        if self.horizon == 0:
            raise DomainError("Time horizon must be non-zero")
        if self.steps < 1:
            raise DomainError(f"Need at least one time step, got {self.steps}")

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.dt

    @property
    def midpoints(self) -> np.ndarray:
        return (np.arange(self.steps) + 0.5) * self.dt


def rough_coefficients(spec: PotentialSpec, points: int, step: int = 0) -> np.ndarray:
    """Fourier coefficients c_k, k = -N/2 .. N/2 - 1, of the potential at one time step.

    |c_k| = amplitude (1 + |k|)^{-s-1/2} / (1 + log(1 + |k|)) with random phases;
    the draws for low |k| do not depend on N.
    """
    rng = np.random.default_rng([spec.seed, step])
    half = points // 2
    k = np.arange(half + 1)
    modulus = spec.amplitude * (1.0 + k) ** (-spec.sobolev_s - 0.5) / (1.0 + np.log1p(k))
    phases = np.exp(2j * math.pi * rng.random((half + 1, 2)))
    coefficients = np.zeros(points, dtype=complex)
    # index k + half holds mode k
    if spec.real_valued:
        positive = modulus * phases[:, 0]
        positive[0] = modulus[0]
        positive[half] = modulus[half]
        coefficients[half:] = positive[:half]
        coefficients[:half] = np.conj(positive[half:0:-1])
    else:
        coefficients[half:] = modulus[:half] * phases[:half, 0]
        coefficients[:half] = modulus[half:0:-1] * phases[half:0:-1, 1]
    return coefficients


def _envelope(grid: Grid) -> np.ndarray:
    width = grid.extent / 8.0
    return np.exp(-math.pi * grid.r2() / width ** 2)


def _synthesize(coefficients: np.ndarray, grid: Grid) -> np.ndarray:
    """sum_k c_k exp(2 pi i k x / L) on the centered lattice."""
    n = grid.points
    k = np.arange(n) - n // 2
    # x_j = (j - N/2) h, so the mode k picks up the phase (-1)^k
    shifted = np.fft.ifftshift(coefficients * np.where(k % 2 == 0, 1.0, -1.0))
    return np.fft.ifft(shifted) * n


def make_rough_potential(spec: PotentialSpec, grid: Grid, tgrid: TimeGrid) -> FieldSeries:
    """A rough potential, redrawn independently on every time step.

    V(t_m, x) = envelope(x) sum_k c_k(m) exp(2 pi i k x / L) with the envelope
    exp(-pi |x|^2 / (L/8)^2); the grid band-limits the roughness.

    Raises:
        DomainError: unless d = 1 or if the grid and spec dimensions differ
    """
    if spec.dim != 1 or grid.dim != 1:
        raise DomainError("Rough potentials are constructed in one dimension only")
    envelope = _envelope(grid)
    values = []
    for m in range(tgrid.steps):
        field = envelope * _synthesize(rough_coefficients(spec, grid.points, m), grid)
        values.append(field.real if spec.real_valued else field)
    LOG.debug("rough potential: s=%g, %d steps, N=%d", spec.sobolev_s, tgrid.steps, grid.points)
    return FieldSeries(grid, tgrid.midpoints, np.stack(values))


def potential_from_function(fn: Callable[..., np.ndarray], grid: Grid, tgrid: TimeGrid) -> FieldSeries:
    """Samples fn(t, x_1, ..., x_d) at the step midpoints."""
    coordinates = grid.coordinates()
    values = [np.broadcast_to(fn(t, *coordinates), grid.shape) for t in tgrid.midpoints]
    return FieldSeries(grid, tgrid.midpoints, np.stack(values))


def _check_potential(u0: SampledField, V: FieldSeries, tgrid: TimeGrid):
    if V.grid != u0.grid:
        raise DomainError(f"Potential grid {V.grid} differs from data grid {u0.grid}")
    if len(V) != tgrid.steps:
        raise DomainError(f"Potential has {len(V)} entries for {tgrid.steps} time steps")


def _check_time_step(u0: SampledField, tgrid: TimeGrid):
    band = bandwidth(u0, BAND_LEVEL)
    phase = abs(tgrid.dt) * 4.0 * math.pi ** 2 * band ** 2
    if phase >= MAX_PHASE_PER_STEP:
        steps = int(math.ceil(abs(tgrid.horizon) * 4.0 * math.pi ** 2 * band ** 2 / MAX_PHASE_PER_STEP))
        raise ResolutionError(f"Time step {tgrid.dt:.4g} turns the phase by {phase:.3g} per step",
                              suggestion=f"use at least {steps + 1} steps")


def _fft_multiplier(grid: Grid, t: float) -> np.ndarray:
    return np.fft.ifftshift(propagator_multiplier(grid, t))


def split_step_evolve(u0: SampledField, V: FieldSeries, tgrid: TimeGrid, check: bool = True) -> FieldSeries:
    """Strang splitting: half free step, phase exp(-i V_m dt), half free step.

    Returns:
        The solution at every point of tgrid.times

    Raises:
        ResolutionError: if u0 is not resolved, leaves the box or the step is too large
        DomainError: if V does not match the grid or the number of steps
    """
    _check_potential(u0, V, tgrid)
    if check:
        check_resolved(u0)
        check_dispersion(u0, tgrid.horizon)
        _check_time_step(u0, tgrid)
    dt = tgrid.dt
    axes = tuple(range(u0.grid.dim))
    half = _fft_multiplier(u0.grid, 0.5 * dt)
    u = np.array(u0.values)
    out = [u]
    for m in range(tgrid.steps):
        u = np.fft.ifftn(half * np.fft.fftn(u, axes=axes), axes=axes)
        u = np.exp(-1j * V.values[m] * dt) * u
        u = np.fft.ifftn(half * np.fft.fftn(u, axes=axes), axes=axes)
        out.append(u)
    return FieldSeries(u0.grid, tgrid.times, np.stack(out))


class PicardResult(NamedTuple):
    solution: FieldSeries
    differences: np.ndarray
    ratios: np.ndarray

    @property
    def contraction(self) -> float:
        """Largest ratio of successive differences, 0 when the iteration is stationary."""
        return float(np.max(self.ratios)) if len(self.ratios) else 0.0


def picard_iterate(u0: SampledField, V: FieldSeries, tgrid: TimeGrid, n_iter: int = 8) -> PicardResult:
    """Iterates v -> e^{itD} u0 - i int_0^t e^{i(t-s)D} V(s) v(s) ds from the free solution.

    The Duhamel integral is the composite trapezoid rule on the step lattice,
    evaluated on the Fourier side. Differences are max_t ||v_{n+1} - v_n||_{L^2}.

    Raises:
        ConvergenceError: if the last two difference ratios exceed 1
    """
    _check_potential(u0, V, tgrid)
    if n_iter < 1:
        raise DomainError(f"Need at least one iteration, got {n_iter}")
    grid = u0.grid
    axes = tuple(range(1, grid.dim + 1))
    dt = tgrid.dt
    times = tgrid.times
    xi2 = np.fft.ifftshift(grid.dual().r2())
    forward = np.exp(-4j * math.pi ** 2 * np.multiply.outer(times, xi2))
    backward = np.conj(forward)
    u0_hat = np.fft.fftn(u0.values)
    v = np.fft.ifftn(forward * u0_hat, axes=axes)
    potential = V.values

    def step(w: np.ndarray) -> np.ndarray:
        left = np.fft.fftn(potential * w[:-1], axes=axes) * backward[:-1]
        right = np.fft.fftn(potential * w[1:], axes=axes) * backward[1:]
        increments = 0.5 * dt * (left + right)
        duhamel = np.concatenate([np.zeros((1,) + grid.shape, dtype=complex), np.cumsum(increments, axis=0)])
        return np.fft.ifftn(forward * (u0_hat - 1j * duhamel), axes=axes)

    differences: List[float] = []
    for _ in range(n_iter):
        w = step(v)
        diff = float(np.max(np.sqrt(np.sum(np.abs(w - v) ** 2, axis=axes) * grid.cell)))
        differences.append(diff)
        v = w
        if diff == 0.0:
            break
    differences = np.array(differences)
    previous = differences[:-1]
    ratios = differences[1:][previous > 0] / previous[previous > 0]
    LOG.debug("Picard on T=%g: differences %s", tgrid.horizon, np.array2string(differences, precision=3))
    if len(ratios) >= 2 and np.all(ratios[-2:] > 1):
        raise ConvergenceError(f"Picard iteration diverges on T={tgrid.horizon:g} with ratio {ratios[-1]:.3g}, "
                               f"use a smaller horizon", ratio=float(ratios[-1]))
    return PicardResult(FieldSeries(grid, times, v), differences, ratios)


class ContractionHorizon(NamedTuple):
    horizon: float
    ratio: float
    result: PicardResult


def find_contraction_horizon(u0: SampledField, potential: Callable[[TimeGrid], FieldSeries],
                             start: float = 1.0, steps: int = 64, n_iter: int = 6,
                             min_horizon: float = 2.0 ** -12, threshold: float = 0.5) -> ContractionHorizon:
    """Largest dyadic horizon start 2^{-k} on which the Picard ratio stays below threshold.

    Args:
        u0: Data
        potential: Builds the potential for a time grid
        start: First horizon tried
        steps: Time steps per horizon
        n_iter: Picard iterations per horizon
        min_horizon: Smallest horizon tried
        threshold: Contraction threshold

    Raises:
        ConvergenceError: if no horizon down to min_horizon contracts
    """
    horizon = start
    ratio = math.inf
    while abs(horizon) >= min_horizon:
        tgrid = TimeGrid(horizon, steps)
        try:
            result = picard_iterate(u0, potential(tgrid), tgrid, n_iter)
            ratio = result.contraction
            if ratio < threshold:
                LOG.info("contraction on T=%g with ratio %.3g", horizon, ratio)
                return ContractionHorizon(horizon, ratio, result)
        except ConvergenceError as e:
            ratio = e.ratio
        LOG.debug("no contraction on T=%g (ratio %.3g)", horizon, ratio)
        horizon /= 2.0
    raise ConvergenceError(f"No contraction down to T={min_horizon:g}", ratio=ratio)


def multiplication_check(f: SampledField, h: SampledField, p: Exponent, q: Exponent, r: Exponent,
                         window: Optional[WindowSpec] = None) -> float:
    """||f h||_{W(FL^r, L^{r'})} / (||f||_{W(FL^{p'}, L^p)} ||h||_{W(FL^{q'}, L^q)}).

    Raises:
        DomainError: unless 1/p + 1/q = 1/r'
    """
    r_dual = conjugate(r)
    if abs(inv(p) + inv(q) - inv(r_dual)) > 1e-12:
        raise DomainError(f"Index relation 1/p + 1/q = 1/r' fails for p={p}, q={q}, r={r}")
    window = window or WindowSpec()
    lhs = amalgam_norm(f * h, AmalgamSpec.fourier_lebesgue(r, r_dual, window))
    if lhs == 0:
        return 0.0
    rhs = (amalgam_norm(f, AmalgamSpec.fourier_lebesgue(conjugate(p), p, window))
           * amalgam_norm(h, AmalgamSpec.fourier_lebesgue(conjugate(q), q, window)))
    return lhs / rhs


def potential_amalgam_norm(V: FieldSeries, alpha: Exponent, p: Exponent,
                           window: Optional[WindowSpec] = None) -> float:
    """||V||_{L^alpha_t W(FL^{p'}, L^p)_x} with the step lattice as time quadrature."""
    spec = AmalgamSpec.fourier_lebesgue(conjugate(p), p, window or WindowSpec())
    norms = np.array([amalgam_norm(v, spec) for v in V])
    dt = V.dt if V.dt is not None else 1.0
    if math.isinf(alpha):
        return float(norms.max())
    return float((np.sum(norms ** alpha) * abs(dt)) ** (1.0 / alpha))
