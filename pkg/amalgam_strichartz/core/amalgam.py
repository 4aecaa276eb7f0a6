"""Wiener amalgam and mixed-norm engine.

A local-norm profile y -> ||f T_y g||_B is computed for every lattice point y
by gathering the patch of samples around y, multiplying by the window and
taking the Lebesgue (or Fourier-Lebesgue) norm of the patch. The global norm
is the Riemann-weighted l^q norm of that profile.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from amalgam_strichartz.const import WINDOW_CUTOFF
from amalgam_strichartz.core.errors import DomainError, ResolutionError
from amalgam_strichartz.core.oracle import Exponent, conjugate, inv
from amalgam_strichartz.core.spectral import FieldSeries, SampledField, convolve, lebesgue_norm

LOG = logging.getLogger(__name__)

LEBESGUE = 'lebesgue'
FOURIER_LEBESGUE = 'fourier_lebesgue'

_CHUNK_ELEMENTS = 2 ** 22
_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _check_exponent(p: Exponent, name: str):
    if not (p >= 1):
        raise DomainError(f"Exponent {name} must lie in [1, inf], got {p}")


@dataclass(frozen=True)
class WindowSpec:
    """A separable window: exp(-pi |x|^2 / w^2) or the indicator of a cube.

    Args:
        kind (str): 'gaussian' or 'boxcar'
        width (float): Gaussian width w, or the boxcar half-width rho
        center (float): Boxcar center on every axis
        normalize (bool): Rescale the sampled window to unit discrete L^2 norm
    """
    kind: str = 'gaussian'
    width: float = 1.0
    center: float = 0.0
    normalize: bool = False

    def __post_init__(self):
        if self.kind not in ('gaussian', 'boxcar'):
            raise DomainError(f"Unknown window kind {self.kind!r}")
        if not self.width > 0:
            raise DomainError(f"Window width must be positive, got {self.width}")
        if self.kind == 'gaussian' and self.center != 0:
            raise DomainError("Gaussian windows are centered at the origin")

    @classmethod
    def gaussian(cls, width: float = 1.0, normalize: bool = False) -> 'WindowSpec':
        return cls('gaussian', width, 0.0, normalize)

    @classmethod
    def boxcar(cls, half_width: float, center: float = 0.0, normalize: bool = False) -> 'WindowSpec':
        return cls('boxcar', half_width, center, normalize)

    @property
    def support(self) -> Tuple[float, float]:
        """Interval outside of which the window vanishes (numerically) on each axis."""
        if self.kind == 'gaussian':
            r = self.width * math.sqrt(math.log(1.0 / WINDOW_CUTOFF) / math.pi)
            return -r, r
        return self.center - self.width, self.center + self.width

    @property
    def radius(self) -> float:
        lo, hi = self.support
        return max(abs(lo), abs(hi))

    @property
    def is_symmetric(self) -> bool:
        return self.kind == 'gaussian' or self.center == 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """One-dimensional window profile."""
        x = np.asarray(x, dtype=float)
        if self.kind == 'gaussian':
            return np.exp(-np.pi * (x / self.width) ** 2)
        return (np.abs(x - self.center) <= self.width * (1 + 1e-12)).astype(float)

    def label(self) -> str:
        if self.kind == 'gaussian':
            return f"gaussian(w={self.width:g})"
        return f"boxcar(rho={self.width:g},c={self.center:g})"

    def sampled(self, offsets: np.ndarray, spacing: float, dim: int) -> np.ndarray:
        profile = self(offsets * spacing)
        values = profile
        for _ in range(dim - 1):
            values = np.multiply.outer(values, profile)
        if self.normalize:
            values = values / math.sqrt(np.sum(values ** 2) * spacing ** dim)
        return values


@dataclass(frozen=True)
class AmalgamSpec:
    """W(B, L^q) with B = L^p (lebesgue) or FL^p (fourier_lebesgue)."""
    local: str
    p: Exponent
    q: Exponent
    window: WindowSpec = field(default_factory=WindowSpec)

    def __post_init__(self):
        if self.local not in (LEBESGUE, FOURIER_LEBESGUE):
            raise DomainError(f"Unknown local component {self.local!r}")
        _check_exponent(self.p, 'p')
        _check_exponent(self.q, 'q')

    @classmethod
    def lebesgue(cls, p: Exponent, q: Exponent, window: Optional[WindowSpec] = None) -> 'AmalgamSpec':
        return cls(LEBESGUE, p, q, window or WindowSpec())

    @classmethod
    def fourier_lebesgue(cls, p: Exponent, q: Exponent, window: Optional[WindowSpec] = None) -> 'AmalgamSpec':
        return cls(FOURIER_LEBESGUE, p, q, window or WindowSpec())


@dataclass(frozen=True)
class MixedTimeSpec:
    """W(L^{q1}, L^{q2}) over time."""
    q1: Exponent
    q2: Exponent
    window: WindowSpec = field(default_factory=WindowSpec)

    def __post_init__(self):
        _check_exponent(self.q1, 'q1')
        _check_exponent(self.q2, 'q2')


def _lp(modulus: np.ndarray, p: Exponent, cell: float, axes: Tuple[int, ...]) -> np.ndarray:
    if math.isinf(p):
        return np.max(modulus, axis=axes)
    return (np.sum(modulus ** p, axis=axes) * cell) ** (1.0 / p)


def _patch_offsets(n: int, spacing: float, window: WindowSpec, local: str) -> np.ndarray:
    m = int(math.ceil(window.radius / spacing))
    size = 2 * m + 1
    if local == FOURIER_LEBESGUE:
        # room for frequency sampling: at least twice the support
        size = 1 << int(math.ceil(math.log2(2 * size)))
    if size >= n:
        return np.arange(n) - n // 2
    if local == FOURIER_LEBESGUE:
        return np.arange(size) - size // 2
    return np.arange(-m, m + 1)


def _gather(values: np.ndarray, centers: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Patches values[(center + offset) mod n], shape (len(centers),) + (len(offsets),) * d."""
    d = values.ndim
    index = []
    for axis in range(d):
        shape = [len(centers)] + [1] * d
        shape[axis + 1] = len(offsets)
        idx = (centers[:, axis][:, None] + offsets[None, :]) % values.shape[axis]
        index.append(idx.reshape(shape))
    return values[tuple(index)]


def _profile(values: np.ndarray, spacing: float, local: str, ps: Sequence[Exponent],
             window: WindowSpec, centers: Optional[np.ndarray] = None, workers: int = 1) -> np.ndarray:
    """Local norms ||f T_y g|| for the given lattice centers (all lattice points by default).

    Each patch is transformed once; the result has one row per exponent in ps.
    """
    d = values.ndim
    n = values.shape[0]
    offsets = _patch_offsets(n, spacing, window, local)
    win = window.sampled(offsets, spacing, d)
    patch_axes = tuple(range(1, d + 1))
    cell = spacing ** d
    freq_cell = (1.0 / (len(offsets) * spacing)) ** d
    if centers is None:
        centers = np.stack([c.ravel() for c in np.indices(values.shape)], axis=-1)
    chunk = max(1, _CHUNK_ELEMENTS // len(offsets) ** d)

    def run(start: int) -> np.ndarray:
        patches = _gather(values, centers[start:start + chunk], offsets) * win
        if local == FOURIER_LEBESGUE:
            modulus, measure = np.abs(np.fft.fftn(patches, axes=patch_axes) * cell), freq_cell
        else:
            modulus, measure = np.abs(patches), cell
        return np.stack([_lp(modulus, p, measure, patch_axes) for p in ps])

    starts = range(0, len(centers), chunk)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    return np.concatenate(parts, axis=1)


def _check_window_fits(f: SampledField, window: WindowSpec):
    if 2 * window.radius >= f.grid.extent:
        raise ResolutionError(f"Window {window.label()} does not fit into the box L={f.grid.extent}",
                              suggestion=f"use L > {2 * window.radius:.4g}")


def local_profile(f: SampledField, spec: AmalgamSpec, workers: int = 1) -> np.ndarray:
    """The local-norm function on the full lattice, shaped like the grid."""
    _check_window_fits(f, spec.window)
    profile = _profile(f.values, f.grid.spacing, spec.local, (spec.p,), spec.window, workers=workers)[0]
    return profile.reshape(f.grid.shape)


def local_profiles(f: SampledField, local: str, ps: Sequence[Exponent], window: Optional[WindowSpec] = None,
                   stride: int = 1) -> np.ndarray:
    """Local-norm functions for several exponents, sampled at every stride-th lattice point per axis.

    Returns:
        Array of shape (len(ps),) + (N / stride,) * d; the outer norm weights
        each sample by (stride h)^d

    Raises:
        DomainError: if stride does not divide N
    """
    window = window or WindowSpec()
    _check_window_fits(f, window)
    n = f.grid.points
    if stride < 1 or n % stride:
        raise DomainError(f"Stride {stride} does not divide the {n} grid points")
    index = np.meshgrid(*([np.arange(0, n, stride)] * f.grid.dim), indexing='ij')
    centers = np.stack([c.ravel() for c in index], axis=-1)
    profiles = _profile(f.values, f.grid.spacing, local, tuple(ps), window, centers=centers)
    return profiles.reshape((len(ps),) + (n // stride,) * f.grid.dim)


def local_norm(f: SampledField, spec: AmalgamSpec, y) -> float:
    """||f T_y g||_B at a lattice point y.

    Raises:
        DomainError: if y is not a lattice point
    """
    _check_window_fits(f, spec.window)
    grid = f.grid
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.size == 1 and grid.dim > 1:
        y = np.repeat(y, grid.dim)
    k = np.rint(y / grid.spacing)
    if y.size != grid.dim or np.any(np.abs(k * grid.spacing - y) > 1e-9 * grid.spacing):
        raise DomainError(f"{tuple(y)} is not a point of the lattice with spacing {grid.spacing}")
    center = ((k.astype(int) + grid.points // 2) % grid.points)[None, :]
    return float(_profile(f.values, grid.spacing, spec.local, (spec.p,), spec.window, centers=center)[0, 0])


def amalgam_norm(f: SampledField, spec: AmalgamSpec, workers: int = 1) -> float:
    """||f||_{W(B, L^q)} over the full translation lattice."""
    profile = local_profile(f, spec, workers=workers)
    return float(_lp(profile.ravel(), spec.q, f.grid.cell, (0,)))


def lebesgue_series_norm(values: np.ndarray, spacing: float, q: Exponent) -> float:
    return float(_lp(np.abs(np.asarray(values)), q, spacing, (0,)))


def time_mixed_norm(times: np.ndarray, values: np.ndarray, spec: MixedTimeSpec) -> float:
    """W(L^{q1}, L^{q2}) norm of a nonnegative series on a uniform time grid.

    The series is extended by zero outside the sampled interval.

    Raises:
        DomainError: for a non-uniform grid or negative values
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.ndim != 1 or times.shape != values.shape or len(times) < 2:
        raise DomainError("Time series needs matching 1-d times and values with at least two samples")
    steps = np.diff(times)
    dt = float(steps[0])
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise DomainError("Time grid must be uniform and increasing")
    if np.any(values < 0):
        raise DomainError("Time series values must be nonnegative")
    pad = int(math.ceil(spec.window.radius / dt)) + 1
    padded = np.pad(values, pad)
    profile = _profile(padded, dt, LEBESGUE, (spec.q1,), spec.window)[0]
    return float(_lp(profile, spec.q2, dt, (0,)))


def _graded_breaks(lo: float, hi: float, piece: float, peak: Optional[float],
                   peak_width: Optional[float]) -> np.ndarray:
    count = max(1, int(math.ceil((hi - lo) / piece)))
    breaks = [np.linspace(lo, hi, count + 1)]
    if peak is not None and peak_width:
        # grade towards the point of [lo, hi] nearest to the peak
        anchor = min(max(peak, lo), hi)
        steps = peak_width * 2.0 ** np.arange(-4, 64)
        steps = steps[steps < hi - lo]
        breaks.append(anchor + steps[anchor + steps < hi])
        breaks.append(anchor - steps[anchor - steps > lo])
    return np.unique(np.concatenate(breaks))


def _composite_gauss(fn: Callable[[np.ndarray], np.ndarray], breaks: np.ndarray) -> float:
    half = 0.5 * np.diff(breaks)
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    nodes = mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]
    weights = half[:, None] * _GAUSS_WEIGHTS[None, :]
    return float(np.sum(weights * fn(nodes)))


class ProfileNorm:
    """Mixed time norm of a closed-form nonnegative profile F(t).

    Inner integrals use composite Gauss-Legendre rules on breakpoints graded
    towards the peak of F, outer integrals use adaptive quadrature.

    Args:
        profile: Vectorized map t -> F(t) >= 0
        spec (MixedTimeSpec): Exponents and time window
        horizon (float): F is cut off to |t| <= horizon
        scale (float): Natural time scale on which F varies away from its peak
        peak (float): Location of the peak of F
        peak_width (float): Width of the peak, used to grade the nodes
        even (bool): Whether F(-t) = F(t)
    """

    def __init__(self,
                 profile: Callable[[np.ndarray], np.ndarray],
                 spec: MixedTimeSpec,
                 horizon: float = math.inf,
                 scale: float = 1.0,
                 peak: Optional[float] = 0.0,
                 peak_width: Optional[float] = None,
                 even: bool = True):
        self._profile = profile
        self._spec = spec
        self._horizon = horizon
        self._scale = scale
        self._peak = peak
        self._peak_width = peak_width
        self._even = even

    def _weighted(self, y: float) -> Callable[[np.ndarray], np.ndarray]:
        window = self._spec.window
        return lambda t: self._profile(t) * window(t - y)

    def local(self, y: float) -> float:
        a, b = self._spec.window.support
        lo = max(y + a, -self._horizon)
        hi = min(y + b, self._horizon)
        if lo >= hi:
            return 0.0
        breaks = _graded_breaks(lo, hi, 0.25 * self._spec.window.width, self._peak, self._peak_width)
        weighted = self._weighted(y)
        q1 = self._spec.q1
        if math.isinf(q1):
            half = 0.5 * np.diff(breaks)
            mid = 0.5 * (breaks[1:] + breaks[:-1])
            nodes = np.concatenate([breaks, (mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]).ravel(),
                                    [min(max(y if self._peak is None else self._peak, lo), hi)]])
            return float(np.max(weighted(nodes)))
        return _composite_gauss(lambda t: weighted(t) ** q1, breaks) ** (1.0 / q1)

    def _outer_range(self, outer: Optional[Tuple[float, float]]) -> Tuple[float, float]:
        if outer is not None:
            return outer
        a, b = self._spec.window.support
        return -self._horizon - b, self._horizon - a

    def norm(self, outer: Optional[Tuple[float, float]] = None) -> float:
        """The W(L^{q1}, L^{q2}) norm, the outer integral taken over outer (default: everywhere)."""
        lo, hi = self._outer_range(outer)
        symmetric = self._even and self._spec.window.is_symmetric and lo == -hi
        if symmetric:
            lo = 0.0
        q2 = self._spec.q2
        if math.isinf(q2):
            return self._sup(lo, hi)
        integrand = lambda y: self.local(y) ** q2
        total = self._integrate(integrand, lo, hi)
        if symmetric:
            total *= 2.0
        return total ** (1.0 / q2)

    def _integrate(self, integrand: Callable[[float], float], lo: float, hi: float) -> float:
        options = dict(epsabs=0.0, epsrel=1e-8, limit=400)
        peak = self._peak if self._peak is not None else 0.0
        reach = 8.0 * self._scale
        total = 0.0
        if math.isinf(hi):
            cut = max(lo, peak) + reach if not math.isinf(lo) else peak + reach
            total += self._tail(integrand, cut, 1.0, options)
            hi = cut
        if math.isinf(lo):
            cut = min(hi, peak) - reach
            total += self._tail(integrand, cut, -1.0, options)
            lo = cut
        points = None
        if self._peak_width:
            grades = np.concatenate([[peak], peak + self._peak_width * 4.0 ** np.arange(0, 24),
                                     peak - self._peak_width * 4.0 ** np.arange(0, 24)])
            points = sorted(p for p in grades if lo < p < hi) or None
        value, _ = integrate.quad(integrand, lo, hi, points=points, **options)
        return total + value

    def _tail(self, integrand: Callable[[float], float], start: float, sign: float, options: Dict) -> float:
        scale = self._scale
        value, _ = integrate.quad(lambda s: integrand(start + sign * scale * s) * scale, 0.0, math.inf, **options)
        return value

    def _sup(self, lo: float, hi: float) -> float:
        peak = self._peak if self._peak is not None else 0.0
        reach = self._scale * 1e6
        finite_lo = lo if not math.isinf(lo) else peak - reach
        finite_hi = hi if not math.isinf(hi) else peak + reach
        width = self._peak_width or self._scale
        geometric = width * np.geomspace(1e-6, 1e6, 121)
        candidates = np.concatenate([np.linspace(finite_lo, finite_hi, 257), [peak],
                                     peak + geometric, peak - geometric])
        candidates = np.unique(candidates[(candidates >= finite_lo) & (candidates <= finite_hi)])
        values = np.array([self.local(y) for y in candidates])
        best = int(np.argmax(values))
        left = candidates[max(best - 1, 0)]
        right = candidates[min(best + 1, len(candidates) - 1)]
        if right > left:
            result = optimize.minimize_scalar(lambda y: -self.local(y), bounds=(left, right), method='bounded')
            return float(max(values[best], -result.fun))
        return float(values[best])


def profile_mixed_norm(profile: Callable[[np.ndarray], np.ndarray], spec: MixedTimeSpec,
                       horizon: float = math.inf, outer: Optional[Tuple[float, float]] = None,
                       **kwargs) -> float:
    return ProfileNorm(profile, spec, horizon=horizon, **kwargs).norm(outer)


def lebesgue_profile_check(f: SampledField, p: Exponent, window: Optional[WindowSpec] = None) -> float:
    """Ratio ||f||_{W(L^p, L^p)} / (||f||_p ||g||_p); equal to 1 for the continuum."""
    window = window or WindowSpec()
    offsets = _patch_offsets(f.grid.points, f.grid.spacing, window, LEBESGUE)
    g = window.sampled(offsets, f.grid.spacing, f.grid.dim)
    g_norm = float(_lp(np.abs(g).ravel(), p, f.grid.cell, (0,)))
    return amalgam_norm(f, AmalgamSpec.lebesgue(p, p, window)) / (lebesgue_norm(f, p) * g_norm)


class CompactSupportCheck(NamedTuple):
    ratio: float
    bound: float
    support_length: float


def compact_support_check(times: np.ndarray, values: np.ndarray, q: Exponent, r: Exponent) -> CompactSupportCheck:
    """Compares ||f||_{W(L^1, L^r)} with L^{1/p} ||f||_{W(L^1, L^q)}, 1/p + 1/q = 1/r.

    The window is the indicator of [0, 1] and L the length of the sampled support.

    Raises:
        DomainError: unless q >= r
    """
    ip = inv(r) - inv(q)
    if ip < 0:
        raise DomainError(f"Need q >= r, got q={q}, r={r}")
    values = np.asarray(values, dtype=float)
    dt = float(times[1] - times[0])
    nonzero = np.flatnonzero(values)
    if len(nonzero) == 0:
        return CompactSupportCheck(0.0, 1.0, 0.0)
    length = (nonzero[-1] - nonzero[0] + 1) * dt
    window = WindowSpec.boxcar(0.5, center=0.5)
    lhs = time_mixed_norm(times, values, MixedTimeSpec(1, r, window))
    rhs = time_mixed_norm(times, values, MixedTimeSpec(1, q, window))
    return CompactSupportCheck(lhs / (length ** ip * rhs), ((length + 2.0) / length) ** ip, length)


def convolution_relation_check(f: SampledField, u: SampledField, p: Exponent, q: Exponent,
                               window: Optional[WindowSpec] = None) -> float:
    """||f * u||_{W(FL^p, L^q)} / (||f||_{W(FL^inf, L^1)} ||u||_{W(FL^p, L^q)})."""
    window = window or WindowSpec()
    lhs = amalgam_norm(convolve(f, u), AmalgamSpec.fourier_lebesgue(p, q, window))
    rhs = (amalgam_norm(f, AmalgamSpec.fourier_lebesgue(math.inf, 1, window))
           * amalgam_norm(u, AmalgamSpec.fourier_lebesgue(p, q, window)))
    return lhs / rhs


def inclusion_ratio(f: SampledField, first: Tuple[Exponent, Exponent], second: Tuple[Exponent, Exponent],
                    window: Optional[WindowSpec] = None) -> float:
    """||f||_{W(L^{p2}, L^{q2})} / ||f||_{W(L^{p1}, L^{q1})} for p1 >= p2, q1 <= q2.

    Raises:
        DomainError: if the exponents are not ordered as an inclusion
    """
    (p1, q1), (p2, q2) = first, second
    if p1 < p2 or q1 > q2:
        raise DomainError(f"W(L^{p1}, L^{q1}) is not included in W(L^{p2}, L^{q2})")
    return (amalgam_norm(f, AmalgamSpec.lebesgue(p2, q2, window))
            / amalgam_norm(f, AmalgamSpec.lebesgue(p1, q1, window)))


def series_mixed_norm(series: FieldSeries, time_spec: MixedTimeSpec, space_spec: AmalgamSpec) -> float:
    """||F||_{W(L^{q1}, L^{q2})_t W(B, L^r)_x} of a time-indexed field."""
    if series.dt is None:
        raise DomainError("Series must be sampled on a uniform time grid")
    profile = np.array([amalgam_norm(f, space_spec) for f in series])
    return time_mixed_norm(series.times, profile, time_spec)


def holder_pairing_check(F: FieldSeries, G: FieldSeries, q: Exponent, r: Exponent,
                         q_dual: Optional[Exponent] = None, r_dual: Optional[Exponent] = None,
                         window: Optional[WindowSpec] = None, time_window: Optional[WindowSpec] = None) -> float:
    """|<F, G>| over ||F||_{W(L^inf, L^q)_t W(L^2, L^r)_x} ||G||_{W(L^1, L^q')_t W(L^2, L^r')_x}.

    Raises:
        DomainError: if the series do not match or the dual exponents are not conjugate
    """
    q_dual = conjugate(q) if q_dual is None else q_dual
    r_dual = conjugate(r) if r_dual is None else r_dual
    if abs(inv(q) + inv(q_dual) - 1) > 1e-12 or abs(inv(r) + inv(r_dual) - 1) > 1e-12:
        raise DomainError(f"Exponents ({q}, {q_dual}) and ({r}, {r_dual}) are not conjugate pairs")
    if F.grid != G.grid or F.times.shape != G.times.shape or not np.allclose(F.times, G.times):
        raise DomainError("Series must share grid and times")
    dt = F.dt
    if dt is None:
        raise DomainError("Series must be sampled on a uniform time grid")
    window = window or WindowSpec()
    time_window = time_window or WindowSpec()
    pairing = abs(np.sum(F.values * np.conj(G.values))) * F.grid.cell * dt
    norm_f = series_mixed_norm(F, MixedTimeSpec(math.inf, q, time_window), AmalgamSpec.lebesgue(2, r, window))
    norm_g = series_mixed_norm(G, MixedTimeSpec(1, q_dual, time_window), AmalgamSpec.lebesgue(2, r_dual, window))
    if norm_f == 0 or norm_g == 0:
        return 0.0
    return float(pairing / (norm_f * norm_g))


def norm_record(field_id: str, f: SampledField, spec: AmalgamSpec, value: float) -> Dict:
    """A CSV row describing one norm evaluation."""
    return {
        "field_id": field_id,
        "local_kind": spec.local,
        "p": spec.p,
        "q": spec.q,
        "window": spec.window.label(),
        "value": value,
        "grid_N": f.grid.points,
        "grid_L": f.grid.extent,
    }


NORM_RECORD_COLUMNS: Sequence[str] = ("field_id", "local_kind", "p", "q", "window", "value", "grid_N", "grid_L")
