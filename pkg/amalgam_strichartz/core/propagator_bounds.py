"""Fixed-time estimates, the admissible exponent region and Strichartz ratios."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from amalgam_strichartz.const import BOUNDED_SPREAD, T_DOUBLING_TOL
from amalgam_strichartz.core.amalgam import AmalgamSpec, MixedTimeSpec, ProfileNorm, WindowSpec, amalgam_norm
from amalgam_strichartz.core.errors import DomainError, warn
from amalgam_strichartz.core.oracle import (Exponent, GaussianState, conjugate, exact_chirp_amalgam_norm,
                                            exact_lr1_lr2_norm, free_evolve_gaussian, inv,
                                            rescaled_gaussian, state_flq_lr_norm, state_l2_norm)
from amalgam_strichartz.core.spectral import SampledField, free_propagate

LOG = logging.getLogger(__name__)

Data = Union[GaussianState, SampledField]


@dataclass(frozen=True)
class FixedTimeSpec:
    """Exponents of the estimate e^{itD}: W(FL^s, L^{r'}) -> W(FL^{s'}, L^r).

    Args:
        s (float): Local exponent of the data side
        r (float): Global exponent of the solution side
        q (float): Interpolation index, 1/s = 1/r + (2/q)(1/2 - 1/r)
        dim (int): Space dimension

    Raises:
        DomainError: if an exponent lies outside [2, inf] or the relation fails
    """
    s: Exponent
    r: Exponent
    q: Exponent
    dim: int = 1

    def __post_init__(self):
        for name in ('s', 'r', 'q'):
            value = getattr(self, name)
            if not value >= 2:
                raise DomainError(f"Exponent {name} must lie in [2, inf], got {value}")
        if abs(inv(self.s) - inv(self.r) - 2.0 * inv(self.q) * (0.5 - inv(self.r))) > 1e-12:
            raise DomainError(f"Exponents s={self.s}, r={self.r}, q={self.q} violate "
                              f"1/s = 1/r + (2/q)(1/2 - 1/r)")

    @classmethod
    def from_rq(cls, r: Exponent, q: Exponent, dim: int = 1) -> 'FixedTimeSpec':
        ir = inv(r)
        i_s = ir + 2.0 * inv(q) * (0.5 - ir)
        return cls(math.inf if i_s == 0 else 1.0 / i_s, r, q, dim)

    @property
    def s_dual(self) -> float:
        return conjugate(self.s)

    @property
    def r_dual(self) -> float:
        return conjugate(self.r)


def kernel_amalgam_norm(t: float, p: Exponent, d: int = 1) -> float:
    """Exact ||K_t||_{W(FL^p, L^inf)} with the Gaussian window.

    The kernel is the chirp f_{(4 pi t) i}, prefactor included.

    Raises:
        DomainError: if t = 0

    Examples:
        >>> round(kernel_amalgam_norm(1 / (4 * math.pi), 2), 5)
        0.8409
    """
    if t == 0:
        raise DomainError("The kernel norm is undefined at t = 0")
    return exact_chirp_amalgam_norm(4.0 * math.pi * t, p, d)


def fixed_time_envelope(t, spec: FixedTimeSpec):
    """|t|^{d(2/q-1)(1-2/r)} (1+t^2)^{d(1/4-1/q)(1-2/r)}, vectorized in t."""
    t = np.abs(np.asarray(t, dtype=float))
    if np.any(t == 0):
        raise DomainError("The fixed-time envelope is undefined at t = 0")
    d, iq, gap = spec.dim, inv(spec.q), 1.0 - 2.0 * inv(spec.r)
    value = t ** (d * (2.0 * iq - 1.0) * gap) * (1.0 + t * t) ** (d * (0.25 - iq) * gap)
    return value if value.ndim else float(value)


def dispersive_envelope(t, q: Exponent, d: int = 1):
    """Envelope of W(FL^q, L^1) -> W(FL^{q'}, L^inf), the r = inf case."""
    return fixed_time_envelope(t, FixedTimeSpec.from_rq(math.inf, q, d))


def _fixed_time_norms(u0: Data, t: float, spec: FixedTimeSpec,
                      window: Optional[WindowSpec]) -> Tuple[float, float]:
    if isinstance(u0, GaussianState):
        if u0.dim != spec.dim:
            raise DomainError(f"Dimension mismatch: data {u0.dim}, estimate {spec.dim}")
        lhs = state_flq_lr_norm(free_evolve_gaussian(u0, t), spec.s_dual, spec.r)
        rhs = state_flq_lr_norm(u0, spec.s, spec.r_dual)
        return lhs, rhs
    window = window or WindowSpec()
    lhs = amalgam_norm(free_propagate(u0, t), AmalgamSpec.fourier_lebesgue(spec.s_dual, spec.r, window))
    rhs = amalgam_norm(u0, AmalgamSpec.fourier_lebesgue(spec.s, spec.r_dual, window))
    return lhs, rhs


def fixed_time_ratio(u0: Data, t: float, spec: FixedTimeSpec, window: Optional[WindowSpec] = None) -> float:
    """LHS / (envelope * RHS) of the fixed-time estimate.

    Gaussian data are measured with the closed forms, sampled data with the
    numeric amalgam engine.

    Raises:
        DomainError: if t = 0
        ResolutionError: if sampled data leave the box by time t
    """
    if t == 0:
        raise DomainError("Fixed-time ratio is undefined at t = 0")
    lhs, rhs = _fixed_time_norms(u0, t, spec, window)
    return lhs / (fixed_time_envelope(t, spec) * rhs)


class FixedTimeSweep(NamedTuple):
    ratio_min: float
    ratio_max: float
    ratio_ref: float

    @property
    def spread(self) -> float:
        return self.ratio_max / self.ratio_ref

    @property
    def bounded(self) -> bool:
        return self.spread <= BOUNDED_SPREAD


def fixed_time_sweep(spec: FixedTimeSpec, lambdas: Sequence[float], times: Sequence[float]) -> FixedTimeSweep:
    """Ratios over the family exp(-pi lam^2 |x|^2) and the given times.

    The reference is the ratio at lam = 1, t = 1. The estimate is an upper
    bound, so boundedness is judged by max / reference.
    """
    ratios = np.array([[fixed_time_ratio(rescaled_gaussian(lam, spec.dim), t, spec) for t in times]
                       for lam in lambdas])
    ref = fixed_time_ratio(rescaled_gaussian(1.0, spec.dim), 1.0, spec)
    LOG.debug("fixed-time sweep s=%g r=%g q=%g: min=%g max=%g ref=%g",
              spec.s, spec.r, spec.q, ratios.min(), ratios.max(), ref)
    return FixedTimeSweep(float(ratios.min()), float(ratios.max()), float(ref))


def _inverse(p) -> Fraction:
    if isinstance(p, Fraction):
        if p <= 0:
            raise DomainError(f"Exponent must be positive, got {p}")
        return 1 / p
    if not p > 0:
        raise DomainError(f"Exponent must be positive, got {p}")
    if math.isinf(p):
        return Fraction(0)
    return 1 / Fraction(p).limit_denominator(10 ** 9)


def index1_reasons(iq: Fraction, ir: Fraction, d: int) -> Tuple[str, ...]:
    """Failed constraints of the solution-side pair (1/q1, 1/r1)."""
    reasons = []
    if iq > 1:
        reasons.append('q1_lt_1')
    if ir > 1:
        reasons.append('r1_lt_1')
    if 2 * iq + d * ir < Fraction(d, 2):
        reasons.append('pri1')
    if ir == 0 and d == 2:
        reasons.append('r1_inf_d2')
    if d >= 3 and ir < Fraction(d - 2, 2 * d):
        reasons.append('r1_cap')
    return tuple(reasons)


def index2_reasons(iq: Fraction, ir: Fraction, d: int) -> Tuple[str, ...]:
    """Failed constraints of the pair (1/q2, 1/r2)."""
    reasons = []
    if iq > Fraction(1, 2):
        reasons.append('q2_lt_2')
    if ir > Fraction(1, 2):
        reasons.append('r2_lt_2')
    if 2 * iq + d * ir > Fraction(d, 2):
        reasons.append('pri2')
    if ir == 0 and d == 2:
        reasons.append('r2_inf_d2')
    return tuple(reasons)


@dataclass(frozen=True)
class RegionQuery:
    """Exponents of W(L^{q1}, L^{q2})_t W(L^{r1}, L^{r2})_x. Fractions are kept exact."""
    q1: Union[float, Fraction]
    r1: Union[float, Fraction]
    q2: Union[float, Fraction]
    r2: Union[float, Fraction]
    dim: int = 1

    @classmethod
    def from_inverses(cls, iq1: Fraction, ir1: Fraction, iq2: Fraction, ir2: Fraction, dim: int = 1) -> 'RegionQuery':
        def exponent(i: Fraction):
            return math.inf if i == 0 else 1 / Fraction(i)

        return cls(exponent(iq1), exponent(ir1), exponent(iq2), exponent(ir2), dim)

    def inverses(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return _inverse(self.q1), _inverse(self.r1), _inverse(self.q2), _inverse(self.r2)

    def label(self) -> str:
        return ','.join(f"{float(p):g}" for p in (self.q1, self.r1, self.q2, self.r2))


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    reasons: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(query: RegionQuery) -> AdmissibilityResult:
    """Whether the homogeneous Strichartz estimate holds for these exponents.

    Reason codes name every failed constraint: q1_lt_1, r1_lt_1, q2_lt_2,
    r2_lt_2, r1_gt_r2, pri1, pri2, r1_inf_d2, r2_inf_d2 and r1_cap.

    Examples:
        >>> bool(is_admissible(RegionQuery(math.inf, 2, math.inf, 2)))
        True
        >>> is_admissible(RegionQuery(2, math.inf, math.inf, math.inf, 2)).reasons
        ('r1_inf_d2', 'r2_inf_d2')
    """
    iq1, ir1, iq2, ir2 = query.inverses()
    d = query.dim
    reasons = list(index1_reasons(iq1, ir1, d))
    if ir1 < ir2:
        reasons.append('r1_gt_r2')
    reasons.extend(index2_reasons(iq2, ir2, d))
    return AdmissibilityResult(not reasons, tuple(reasons))


def region_layers(d: int, resolution: int) -> pd.DataFrame:
    """Rasters the (1/q, 1/r) unit square with both index constraint layers.

    The coupling r1 <= r2 is between layers and not part of either raster.
    """
    if resolution < 2:
        raise DomainError(f"Resolution must be at least 2, got {resolution}")
    rows = []
    for i in range(resolution):
        iq = Fraction(i, resolution - 1)
        for j in range(resolution):
            ir = Fraction(j, resolution - 1)
            rows.append({
                "dim": d,
                "inv_q": float(iq),
                "inv_r": float(ir),
                "in_I1": not index1_reasons(iq, ir, d),
                "in_I2": not index2_reasons(iq, ir, d),
            })
    return pd.DataFrame(rows, columns=["dim", "inv_q", "inv_r", "in_I1", "in_I2"])


def emit_region(d: int, resolution: int = 101, path: Optional[str] = None) -> pd.DataFrame:
    """The admissible region as plot-ready rows, written as CSV when path is given."""
    frame = region_layers(d, resolution)
    if path is not None:
        frame.to_csv(path, index=False)
        LOG.info("region for d=%d written to %s", d, path)
    return frame


def evolved_profile(u0: GaussianState, r1: Exponent, r2: Exponent) -> Callable[[np.ndarray], np.ndarray]:
    """t -> ||e^{itD} u0||_{W(L^{r1}, L^{r2})} in closed form, vectorized."""
    if u0.is_chirp:
        raise DomainError("Strichartz data must decay")
    d = u0.dim

    def profile(t: np.ndarray) -> np.ndarray:
        w = 1.0 + 4j * math.pi * np.asarray(t, dtype=float) * u0.c
        c = u0.c / w
        return abs(u0.amplitude) * np.abs(w) ** (-d / 2.0) * exact_lr1_lr2_norm(c.real, 0.0, r1, r2, d)

    return profile


def strichartz_ratio(u0: GaussianState, query: RegionQuery, horizon: float,
                     window: Optional[WindowSpec] = None) -> float:
    """||e^{itD} u0||_{W(L^{q1}, L^{q2})_t W(L^{r1}, L^{r2})_x} over ||u0||_{L^2}, time cut to |t| <= horizon.

    Raises:
        DomainError: for inadmissible exponents, with their reason codes
    """
    result = is_admissible(query)
    if not result:
        raise DomainError(f"Exponents ({query.label()}) are not admissible in d={query.dim}: "
                          f"{', '.join(result.reasons)}", reasons=result.reasons)
    if u0.dim != query.dim:
        raise DomainError(f"Dimension mismatch: data {u0.dim}, query {query.dim}")
    spec = MixedTimeSpec(float(query.q1), float(query.q2), window or WindowSpec.gaussian(1.0))
    peak_width = 1.0 / (4.0 * math.pi * abs(u0.c))
    norm = ProfileNorm(evolved_profile(u0, float(query.r1), float(query.r2)), spec,
                       horizon=horizon, scale=max(1.0, peak_width), peak=0.0,
                       peak_width=peak_width).norm()
    return norm / state_l2_norm(u0)


class StrichartzResult(NamedTuple):
    ratio: float
    horizon: float
    converged: bool


def converged_strichartz_ratio(u0: GaussianState, query: RegionQuery, horizon: float = 10.0,
                               max_horizon: float = 1024.0, tol: float = T_DOUBLING_TOL,
                               window: Optional[WindowSpec] = None) -> StrichartzResult:
    """Doubles the horizon until the ratio changes by less than tol."""
    ratio = strichartz_ratio(u0, query, horizon, window)
    while horizon < max_horizon:
        doubled = strichartz_ratio(u0, query, 2.0 * horizon, window)
        change = abs(doubled - ratio) / ratio if ratio > 0 else abs(doubled)
        horizon *= 2.0
        ratio = doubled
        if change < tol:
            return StrichartzResult(ratio, horizon, True)
    warn(f"Strichartz ratio for ({query.label()}) did not settle by T={horizon:g}")
    return StrichartzResult(ratio, horizon, False)
