"""Verification suites run by the command line.

Every suite is a list of independent cases. A case returns report rows and
is executed in a thread pool; the rows are assembled in submission order so
that the report depends only on the configuration.
"""
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from amalgam_strichartz.const import BAND_LEVEL, BOUNDED_SPREAD, BUMP_TOL, INF, LAMBDA_LARGE, LAMBDA_SMALL, \
    MAX_PHASE_PER_STEP, PROFILE_SPACING
from amalgam_strichartz.core.amalgam import FOURIER_LEBESGUE, AmalgamSpec, convolution_relation_check, \
    lebesgue_profile_check, lebesgue_series_norm, local_profiles, norm_record
from amalgam_strichartz.core.config import RunConfig
from amalgam_strichartz.core.errors import ConvergenceError, DomainError
from amalgam_strichartz.core.fieldio import write_field, write_series
from amalgam_strichartz.core.oracle import (GaussianState, chirp_state, exact_flq_lr_norm, free_evolve_gaussian,
                                            rescaled_gaussian)
from amalgam_strichartz.core.potential import (PotentialSpec, TimeGrid, find_contraction_horizon,
                                               make_rough_potential, multiplication_check, picard_iterate,
                                               potential_amalgam_norm, potential_from_function, split_step_evolve)
from amalgam_strichartz.core.propagator_bounds import (FixedTimeSpec, RegionQuery, converged_strichartz_ratio,
                                                       emit_region, fixed_time_ratio, fixed_time_sweep,
                                                       is_admissible, kernel_amalgam_norm, region_layers)
from amalgam_strichartz.core.report import EstimateReport, ReportRow
from amalgam_strichartz.core.sharpness import (SharpnessVerdict, check_pd1, check_prop1, check_prop2,
                                               dd5_verdict, dd6_verdict, lambda_exponent, q2_verdict,
                                               strichartz_index)
from amalgam_strichartz.core.spectral import (FieldSeries, Grid, SampledField, bandwidth, free_propagate, lebesgue_norm,
                                              sample, sobolev_norm)
from amalgam_strichartz.defaults import CLAIM_DEFAULTS, SHARPNESS_CLAIMS

LOG = logging.getLogger(__name__)

SUITE_NAMES = ("norms", "fixed-time", "strichartz", "sharpness", "potential")

FIELDS_DIR = 'fields'

STRICHARTZ_QUADRUPLES = ((INF, 2, INF, 2), (8, 4, 8, 4), (INF, 2, 8, 4), (4, INF, 4, INF), (6, 4, 12, 4))


class Case(NamedTuple):
    experiment: str
    name: str
    run: Callable[[], List[ReportRow]]


@dataclass(frozen=True)
class SharpnessQuery:
    """A single claim requested on the command line; omitted exponents use CLAIM_DEFAULTS."""
    claim: str
    r: Optional[float] = None
    r1: Optional[float] = None
    r2: Optional[float] = None
    q1: Optional[float] = None
    q2: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if self.claim not in SHARPNESS_CLAIMS:
            raise DomainError(f"Unknown claim {self.claim!r}, expected one of {', '.join(SHARPNESS_CLAIMS)}")

    def value(self, name: str):
        given = getattr(self, name)
        return CLAIM_DEFAULTS[name] if given is None else given

    def to_dict(self) -> Dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _relative_error(measured: float, expected: float) -> float:
    return abs(measured - expected) / abs(expected)


def _verdict_row(verdict: SharpnessVerdict, case: str, expected_consistent: Optional[bool] = None,
                 experiment: str = 'sharpness') -> ReportRow:
    """A row for a scaling claim; with expected_consistent it also checks the boundary flip."""
    passed = verdict.passed
    params = dict(verdict.params, consistent=verdict.consistent, r_squared=verdict.fit.r_squared)
    params.update({k: v for k, v in verdict.details.items() if isinstance(v, (int, float, bool))})
    notes = []
    if not verdict.fit.accepted:
        notes.append(f"fit r^2={verdict.fit.r_squared:.6f}")
    if expected_consistent is not None:
        params["expected_consistent"] = expected_consistent
        if verdict.consistent != expected_consistent:
            passed = False
            notes.append("consistency flip not reproduced")
    return ReportRow(experiment, case, params, verdict.predicted, verdict.fit.slope, verdict.tolerance,
                     passed, '; '.join(notes))


def _dump_dir(config: RunConfig) -> str:
    path = os.path.join(config.output_dir, FIELDS_DIR)
    os.makedirs(path, exist_ok=True)
    return path


# norms


def _profile_stride(grid: Grid) -> int:
    """Largest power of two keeping the center spacing at most PROFILE_SPACING."""
    stride = 1
    while 2 * stride * grid.spacing <= PROFILE_SPACING and 2 * stride <= grid.points // 2:
        stride *= 2
    return stride


def _norm_case(config: RunConfig, a: float, b: float, exponents: Sequence[float]) -> List[ReportRow]:
    state = chirp_state(a, b, config.dim)
    grid = config.grid.fitted(state)
    f = sample(state, grid)
    if config.dump_fields:
        write_field(os.path.join(_dump_dir(config), f"chirp-a{a:g}-b{b:g}.bin"), f)
    # the local profile does not depend on the outer exponent and is smooth on the unit scale
    stride = _profile_stride(grid)
    profiles = local_profiles(f, FOURIER_LEBESGUE, exponents, stride=stride)
    weight = grid.cell * stride ** grid.dim
    field_id = f"chirp:a={a:g},b={b:g}"
    rows = []
    for q, profile in zip(exponents, profiles):
        for r in exponents:
            expected = float(exact_flq_lr_norm(a, b, q, r, config.dim))
            measured = lebesgue_series_norm(profile.ravel(), weight, r)
            error = _relative_error(measured, expected)
            record = norm_record(field_id, f, AmalgamSpec.fourier_lebesgue(q, r), measured)
            rows.append(ReportRow('norms', f"flq_lr:a={a:g},b={b:g},q={q:g},r={r:g}",
                                  {"a": a, "b": b, "q": q, "r": r, "d": config.dim,
                                   "grid_N": grid.points, "grid_L": grid.extent, "stride": stride},
                                  expected, measured, config.tol_norm, error < config.tol_norm,
                                  norm_values=(record,)))
    return rows


def _propagator_case(config: RunConfig, t: float) -> List[ReportRow]:
    u0 = GaussianState(1.0, 1.0, config.dim)
    evolved = free_evolve_gaussian(u0, t)
    grid = config.grid.fitted(evolved)
    f = sample(u0, grid)
    u = free_propagate(f, t)
    error = float(np.max(np.abs(u.values - evolved.evaluate_r2(grid.r2()))))
    drift = abs(u.l2_norm() - f.l2_norm()) / f.l2_norm()
    params = {"t": t, "d": config.dim, "grid_N": grid.points, "grid_L": grid.extent}
    return [ReportRow('norms', f"propagator:t={t:g}", params, 0.0, error, 1e-8, error < 1e-8),
            ReportRow('norms', f"l2_conservation:t={t:g}", params, 0.0, drift, 1e-12, drift < 1e-12)]


def _relation_case(config: RunConfig) -> List[ReportRow]:
    """Window identity and the convolution relation, each stable under refinement."""
    grid = Grid(config.dim, 32.0, 2 ** 10 if config.dim == 1 else 2 ** 7)
    rows = []
    f = sample(GaussianState(1.0, 1.0, config.dim), grid)
    for p in (1.0, 2.0, 4.0):
        ratio = lebesgue_profile_check(f, p)
        rows.append(ReportRow('norms', f"lebesgue_window:p={p:g}", {"p": p, "d": config.dim}, 1.0, ratio,
                              config.tol_norm, abs(ratio - 1.0) < config.tol_norm))
    for a in (0.5, 1.0, 2.0):
        kernel = chirp_state(a, 0.0, config.dim)
        data = chirp_state(1.0, 1.0, config.dim)
        ratios = [convolution_relation_check(sample(kernel, g), sample(data, g), 2, 2) for g in (grid, grid.refined())]
        change = abs(ratios[1] - ratios[0]) / ratios[0]
        rows.append(ReportRow('norms', f"convolution_relation:a={a:g}", {"a": a, "p": 2, "q": 2, "d": config.dim,
                                                                        "refinement_change": change},
                              BOUNDED_SPREAD, ratios[0], config.tol_norm,
                              ratios[0] <= BOUNDED_SPREAD and change < config.tol_norm))
    return rows


def norms_cases(config: RunConfig) -> List[Case]:
    exponents = config.exponent_values
    cases = [Case('norms', f"a={a:g},b={b:g}", lambda a=a, b=b: _norm_case(config, a, b, exponents))
             for a in (0.25, 1.0, 4.0) for b in (0.0, 1.0, 10.0)]
    cases.extend(Case('norms', f"propagator:t={t:g}", lambda t=t: _propagator_case(config, t))
                 for t in (0.1, 1.0, 10.0))
    cases.append(Case('norms', 'relations', lambda: _relation_case(config)))
    return cases


# fixed-time


def _sweep_case(config: RunConfig, r: float, q: float) -> List[ReportRow]:
    spec = FixedTimeSpec.from_rq(r, q, config.dim)
    lambdas = np.geomspace(config.lambda_min, config.lambda_max, 9)
    times = np.geomspace(config.t_min, config.t_max, 9)
    sweep = fixed_time_sweep(spec, lambdas, times)
    params = {"s": spec.s, "r": r, "q": q, "d": config.dim, "ratio_min": sweep.ratio_min,
              "ratio_max": sweep.ratio_max, "ratio_ref": sweep.ratio_ref}
    return [ReportRow('fixed-time', f"sweep:r={r:g},q={q:g}", params, BOUNDED_SPREAD, sweep.spread, 0.0,
                      sweep.bounded)]


def _kernel_case(config: RunConfig) -> List[ReportRow]:
    d = config.dim
    rows = []
    regimes = ((1.0, LAMBDA_SMALL, -d, 'small_t'), (2.0, LAMBDA_LARGE, -d / 2.0, 'large_t'))
    for p, lam_range, predicted, label in regimes:
        fit = lambda_exponent(lambda t: kernel_amalgam_norm(t, p, d), lam_range)
        rows.append(ReportRow('fixed-time', f"kernel_decay:p={p:g},{label}", {"p": p, "d": d,
                                                                              "r_squared": fit.r_squared},
                              predicted, fit.slope, config.tol_slope,
                              fit.accepted and abs(fit.slope - predicted) < config.tol_slope))
    return rows


def _numeric_ratio_case(config: RunConfig, r: float, q: float) -> List[ReportRow]:
    """Sampled data against the closed form at lam = 1, t = 1."""
    spec = FixedTimeSpec.from_rq(r, q, config.dim)
    u0 = GaussianState(1.0, 1.0, config.dim)
    grid = config.grid.fitted(free_evolve_gaussian(u0, 1.0))
    expected = fixed_time_ratio(u0, 1.0, spec)
    measured = fixed_time_ratio(sample(u0, grid), 1.0, spec)
    error = _relative_error(measured, expected)
    return [ReportRow('fixed-time', f"numeric_ratio:r={r:g},q={q:g}",
                      {"r": r, "q": q, "d": config.dim, "grid_N": grid.points, "grid_L": grid.extent},
                      expected, measured, config.tol_norm, error < config.tol_norm)]


def _decay_case(config: RunConfig, r: float) -> List[ReportRow]:
    r_ge_2, z2, z3 = check_prop1(r, config.dim, tol=config.tol_slope)
    return [_verdict_row(z3, f"z3:r={r:g}", experiment='fixed-time'),
            _verdict_row(z2, f"z2:r={r:g}", experiment='fixed-time')]


def fixed_time_cases(config: RunConfig) -> List[Case]:
    cases = [Case('fixed-time', f"sweep:r={r:g},q={q:g}", lambda r=r, q=q: _sweep_case(config, r, q))
             for r, q in ((2.0, 2.0), (4.0, 2.0), (INF, 2.0), (INF, 4.0))]
    cases.append(Case('fixed-time', 'kernel', lambda: _kernel_case(config)))
    cases.extend(Case('fixed-time', f"decay:r={r:g}", lambda r=r: _decay_case(config, r)) for r in (4.0, INF))
    if config.dim == 1:
        cases.append(Case('fixed-time', 'numeric', lambda: _numeric_ratio_case(config, 4.0, 2.0)))
    return cases


# strichartz


def _strichartz_case(config: RunConfig, quadruple) -> List[ReportRow]:
    query = RegionQuery(*quadruple, dim=config.dim)
    lambdas = np.geomspace(config.lambda_min, config.lambda_max, 9)
    results = [converged_strichartz_ratio(rescaled_gaussian(lam, config.dim), query) for lam in lambdas]
    ratios = np.array([res.ratio for res in results])
    spread = float(ratios.max() / ratios.min())
    converged = all(res.converged for res in results)
    params = {"q1": quadruple[0], "r1": quadruple[1], "q2": quadruple[2], "r2": quadruple[3], "d": config.dim,
              "ratio_min": float(ratios.min()), "ratio_max": float(ratios.max()),
              "horizon_max": max(res.horizon for res in results), "converged": converged}
    rows = [ReportRow('strichartz', f"bounded:{query.label()}", params, BOUNDED_SPREAD, spread, 0.0,
                      spread <= BOUNDED_SPREAD and converged, '' if converged else 'horizon doubling did not settle')]
    if quadruple == (INF, 2, INF, 2):
        # sup_t ||u(t)||_{L^2} ||g||_{L^2} with ||g||_{L^2} = 2^{-1/4}
        expected = 2.0 ** -0.25
        measured = float(ratios[len(ratios) // 2])
        rows.append(ReportRow('strichartz', 'energy_corner', {"d": config.dim}, expected ** config.dim, measured,
                              config.tol_norm, _relative_error(measured, expected ** config.dim) < config.tol_norm))
    return rows


def _inadmissible_case(config: RunConfig) -> List[ReportRow]:
    dd3, _ = check_pd1(4.0, 2.0, d=config.dim, tol=config.tol_slope)
    return [_verdict_row(dd3, 'inadmissible:r1=4,r2=2', expected_consistent=False, experiment='strichartz')]


def _region_spot_check(config: RunConfig, resolution: int = 25, samples: int = 10) -> List[ReportRow]:
    frame = region_layers(config.dim, resolution)
    rng = np.random.default_rng(config.seed)
    mismatches = 0
    for index in rng.choice(len(frame), size=samples, replace=False):
        row = frame.iloc[int(index)]
        iq = Fraction(int(round(row.inv_q * (resolution - 1))), resolution - 1)
        ir = Fraction(int(round(row.inv_r * (resolution - 1))), resolution - 1)
        # a pair in I_1 coupled with itself in I_2 is admissible iff it lies in both layers
        admissible = bool(is_admissible(RegionQuery.from_inverses(iq, ir, iq, ir, config.dim)))
        mismatches += admissible != bool(row.in_I1 and row.in_I2)
    return [ReportRow('strichartz', 'region_spot_check', {"d": config.dim, "resolution": resolution,
                                                          "samples": samples, "seed": config.seed},
                      0.0, float(mismatches), 0.0, mismatches == 0)]


def strichartz_cases(config: RunConfig) -> List[Case]:
    cases = [Case('strichartz', RegionQuery(*quadruple).label(), lambda qd=quadruple: _strichartz_case(config, qd))
             for quadruple in STRICHARTZ_QUADRUPLES]
    cases.append(Case('strichartz', 'inadmissible', lambda: _inadmissible_case(config)))
    cases.append(Case('strichartz', 'region', lambda: _region_spot_check(config)))
    return cases


# sharpness


def _prop1_case(config: RunConfig, r: float, alphas=()) -> List[ReportRow]:
    tol = config.tol_slope
    r_ge_2, z2, z3 = check_prop1(r, config.dim, tol=tol)
    rows = [_verdict_row(r_ge_2, f"r_ge_2:r={r:g}", expected_consistent=r >= 2)]
    if r < 2:
        return rows
    rows.append(_verdict_row(z3, f"z3:r={r:g}", expected_consistent=True))
    for alpha, expected in alphas:
        _, z2_alpha, _ = check_prop1(r, config.dim, alpha=alpha, tol=tol)
        rows.append(_verdict_row(z2_alpha, f"z2:r={r:g},alpha={alpha:g}", expected_consistent=expected))
    if not alphas:
        rows.append(_verdict_row(z2, f"z2:r={r:g}"))
    return rows


def _prop2_case(config: RunConfig, r: float) -> List[ReportRow]:
    d, tol = config.dim, config.tol_slope
    q = strichartz_index(r, d)
    rows = []
    for factor, expected in ((0.75, False), (1.0, True), (1.5, True)):
        s3, _ = check_prop2(r, d, alpha=q / 2.0, beta=factor * q, tol=tol)
        rows.append(_verdict_row(s3, f"s3:r={r:g},beta={factor:g}q", expected_consistent=expected))
    for factor, expected in ((0.375, True), (0.5, True), (0.75, False)):
        _, s2 = check_prop2(r, d, alpha=factor * q, beta=q, tol=tol)
        rows.append(_verdict_row(s2, f"s2:r={r:g},alpha={factor:g}q", expected_consistent=expected))
    return rows


def _pd1_case(config: RunConfig, r1: float, r2: float) -> List[ReportRow]:
    dd3, dd3bis = check_pd1(r1, r2, d=config.dim, tol=config.tol_slope)
    return [_verdict_row(dd3, f"dd3:r1={r1:g},r2={r2:g}", expected_consistent=r1 <= r2),
            _verdict_row(dd3bis, f"dd3bis:r1={r1:g},r2={r2:g}", expected_consistent=True)]


def _pd2_case(config: RunConfig, claim: str, q: float, r: float) -> List[ReportRow]:
    """Boundary-crossing families: dd5 with r1 = r2 = r, q1 = q2 = q; dd6 with r1 = 2, q1 = q2 = q."""
    d, tol = config.dim, config.tol_slope
    if claim == 'dd5':
        verdict = dd5_verdict(q, q, r, r, d, tol)
        expected = -2.0 / q - d / r <= -d / 2.0
    else:
        verdict = dd6_verdict(q, q, 2.0, r, d, tol)
        expected = -2.0 / q - d / r >= -d / 2.0
    return [_verdict_row(verdict, f"{claim}:q={q:g},r={r:g}", expected_consistent=expected)]


def _bump_case(config: RunConfig) -> List[ReportRow]:
    verdict = q2_verdict(1.0, 1.0, 2.0, INF, config.dim, tol=BUMP_TOL)
    row = _verdict_row(verdict, 'q2:q2=1', expected_consistent=False)
    if not verdict.details["l2_bound_holds"]:
        return [ReportRow(row.experiment, row.case, row.params, row.predicted, row.measured, row.tolerance, False,
                          'L2 bound violated')]
    return [row]


def query_cases(config: RunConfig, query: SharpnessQuery) -> List[Case]:
    """The single case answering one command line claim."""
    d, tol, claim = config.dim, config.tol_slope, query.claim

    def run() -> List[ReportRow]:
        if claim in ('r_ge_2', 'z2', 'z3'):
            verdicts = dict(zip(('r_ge_2', 'z2', 'z3'),
                                check_prop1(query.value('r'), d, alpha=query.value('alpha'), tol=tol)))
        elif claim in ('s3', 's2'):
            verdicts = dict(zip(('s3', 's2'), check_prop2(query.value('r'), d, alpha=query.value('alpha'),
                                                          beta=query.value('beta'), tol=tol)))
        elif claim in ('dd3', 'dd3bis'):
            verdicts = dict(zip(('dd3', 'dd3bis'), check_pd1(query.value('r1'), query.value('r2'), d=d, tol=tol)))
        else:
            exponents = tuple(query.value(name) for name in ('q1', 'q2', 'r1', 'r2'))
            factory = {'dd5': dd5_verdict, 'dd6': dd6_verdict, 'q2': q2_verdict}[claim]
            verdicts = {claim: factory(*exponents, d, tol)}
        verdict = verdicts[claim]
        label = ','.join(f"{k}={v:g}" for k, v in sorted(verdict.params.items()) if isinstance(v, (int, float)))
        return [_verdict_row(verdict, f"{claim}:{label}")]

    return [Case('sharpness', claim, run)]


def sharpness_cases(config: RunConfig) -> List[Case]:
    d = config.dim
    # z2 at r = 4: alpha at the threshold -2d(1/2 - 1/4) and a quarter above it
    alphas = ((-0.5 * d, True), (-0.5 * d + 0.25, False))
    cases = [
        Case('sharpness', 'prop1:r=4', lambda: _prop1_case(config, 4.0, alphas)),
        Case('sharpness', 'prop1:r=inf', lambda: _prop1_case(config, INF)),
        Case('sharpness', 'prop1:r=1.5', lambda: _prop1_case(config, 1.5)),
    ]
    if d <= 2:
        cases.append(Case('sharpness', 'prop2:r=inf', lambda: _prop2_case(config, INF)))
    cases.extend(Case('sharpness', f"pd1:r1={r1:g},r2={r2:g}", lambda r1=r1, r2=r2: _pd1_case(config, r1, r2))
                 for r1, r2 in ((2.0, 4.0), (4.0, 4.0), (4.0, 2.0)))
    if d == 1:
        cases.extend(Case('sharpness', f"{claim}:q={q:g}", lambda claim=claim, q=q: _pd2_case(config, claim, q, 4.0))
                     for claim in ('dd5', 'dd6') for q in (6.0, 8.0, 16.0))
        cases.append(Case('sharpness', 'q2', lambda: _bump_case(config)))
    return cases


# potential


def _smooth_time_grid(u0: SampledField, horizon: float) -> TimeGrid:
    """Dyadic step count meeting the split-step phase condition for u0."""
    band = bandwidth(u0, BAND_LEVEL)
    needed = abs(horizon) * 4.0 * math.pi ** 2 * band ** 2 / MAX_PHASE_PER_STEP
    return TimeGrid(horizon, 2 ** int(math.ceil(math.log2(needed + 1.0))))


def _potential_grid() -> Grid:
    return Grid(1, 64.0, 1024)


def _conservation_case(config: RunConfig) -> List[ReportRow]:
    grid = _potential_grid()
    u0 = sample(GaussianState(1.0, 1.0), grid)
    tgrid = _smooth_time_grid(u0, 0.05)
    spec = PotentialSpec(seed=config.seed)
    V = make_rough_potential(spec, grid, tgrid)
    u = split_step_evolve(u0, V, tgrid)
    norms = u.l2_norms()
    drift = float(np.max(np.abs(norms - norms[0])) / norms[0] / abs(tgrid.horizon))
    rows = [ReportRow('potential', 'mass_conservation', {"seed": config.seed, "steps": tgrid.steps},
                      0.0, drift, 1e-10, drift < 1e-10)]

    gauge = 0.7
    shifted = FieldSeries(V.grid, V.times, V.values + gauge)
    w = split_step_evolve(u0, shifted, tgrid)
    phase = np.exp(-1j * gauge * tgrid.times)[:, None]
    error = float(np.max(np.abs(w.values - phase * u.values)))
    rows.append(ReportRow('potential', 'gauge_covariance', {"c": gauge}, 0.0, error, 1e-10, error < 1e-10))

    back = split_step_evolve(u[len(u) - 1], V.reversed(), TimeGrid(-tgrid.horizon, tgrid.steps), check=False)
    error = float(np.max(np.abs(back.values[-1] - u0.values)))
    rows.append(ReportRow('potential', 'time_reversal', {}, 0.0, error, 1e-8, error < 1e-8))

    norm = potential_amalgam_norm(V, spec.alpha, spec.p)
    rows.append(ReportRow('potential', 'potential_norm', {"alpha": spec.alpha, "p": spec.p, "s": spec.sobolev_s},
                          None, norm, None, bool(np.isfinite(norm))))
    if config.dump_fields:
        directory = _dump_dir(config)
        write_series(directory, V, name='potential', seed=config.seed, spec=asdict(spec))
        write_series(directory, u, name='solution', seed=config.seed, spec=asdict(spec))
    return rows


def _roughness_case(config: RunConfig) -> List[ReportRow]:
    """H_s stays put under refinement while H_{s+1/2} keeps growing."""
    spec = PotentialSpec(seed=config.seed)
    tgrid = TimeGrid(1.0, 1)
    norms = {}
    for points in (512, 1024, 2048):
        v = make_rough_potential(spec, Grid(1, 64.0, points), tgrid)[0]
        norms[points] = (sobolev_norm(v, spec.sobolev_s), sobolev_norm(v, spec.sobolev_s + 0.5))
    rough_growth = norms[2048][1] / norms[1024][1]
    smooth_change = abs(norms[2048][0] - norms[1024][0]) / norms[1024][0]
    params = {"s": spec.sobolev_s, "seed": config.seed, "hs_change": smooth_change}
    return [ReportRow('potential', 'roughness', params, 1.0, rough_growth, 0.0,
                      rough_growth > 1.0 and norms[1024][1] > norms[512][1] and smooth_change < rough_growth - 1.0)]


def _strang_order_case(config: RunConfig) -> List[ReportRow]:
    grid = Grid(1, 32.0, 512)
    u0 = sample(GaussianState(1.0, 1.0), grid)
    base = _smooth_time_grid(u0, 0.2)

    def cosine(t, x):
        return np.cos(2.0 * math.pi * x / grid.extent)

    finals = []
    for factor in (1, 2, 4):
        tgrid = TimeGrid(base.horizon, base.steps * factor)
        V = potential_from_function(cosine, grid, tgrid)
        finals.append(split_step_evolve(u0, V, tgrid).values[-1])
    order = math.log2(np.linalg.norm(finals[0] - finals[1]) / np.linalg.norm(finals[1] - finals[2]))
    return [ReportRow('potential', 'strang_order', {"steps": base.steps}, 2.0, order, 0.1, abs(order - 2.0) < 0.1)]


def _picard_case(config: RunConfig) -> List[ReportRow]:
    grid = _potential_grid()
    u0 = sample(GaussianState(1.0, 1.0), grid)
    spec = PotentialSpec(seed=config.seed)

    def factory(tgrid: TimeGrid):
        return make_rough_potential(spec, grid, tgrid)

    try:
        found = find_contraction_horizon(u0, factory)
    except ConvergenceError as e:
        return [ReportRow('potential', 'picard_contraction', {"seed": config.seed}, 0.5, e.ratio, 0.0, False,
                          f"aborted: {e}")]
    rows = [ReportRow('potential', 'picard_contraction', {"seed": config.seed, "horizon": found.horizon},
                      0.5, found.ratio, 0.0, found.ratio < 0.5)]
    tgrid = _smooth_time_grid(u0, found.horizon)
    V = factory(tgrid)
    picard = picard_iterate(u0, V, tgrid, n_iter=12)
    split = split_step_evolve(u0, V, tgrid)
    difference = lebesgue_norm(picard.solution[len(tgrid.times) - 1] - split[len(tgrid.times) - 1], 2)
    rows.append(ReportRow('potential', 'picard_vs_split_step', {"horizon": found.horizon, "steps": tgrid.steps},
                          0.0, difference, 1e-4, difference < 1e-4))
    return rows


def _multiplication_case(config: RunConfig) -> List[ReportRow]:
    grid = Grid(1, 32.0, 1024)
    rows = []
    for a in (0.5, 1.0, 2.0):
        for b in (0.5, 1.0, 2.0):
            ratios = [multiplication_check(sample(chirp_state(a, 0.0), g), sample(chirp_state(b, 0.0), g), 4, 4, 2)
                      for g in (grid, grid.refined())]
            change = abs(ratios[1] - ratios[0]) / ratios[0]
            rows.append(ReportRow('potential', f"multiplication:a={a:g},b={b:g}",
                                  {"a": a, "b": b, "p": 4, "q": 4, "r": 2, "refinement_change": change},
                                  None, ratios[0], config.tol_norm,
                                  0.1 <= ratios[0] <= 10.0 and change < config.tol_norm))
    return rows


def potential_cases(config: RunConfig) -> List[Case]:
    if config.dim != 1:
        LOG.warning("potential suite runs in d=1 only, skipped for d=%d", config.dim)
        return []
    return [Case('potential', 'conservation', lambda: _conservation_case(config)),
            Case('potential', 'roughness', lambda: _roughness_case(config)),
            Case('potential', 'strang_order', lambda: _strang_order_case(config)),
            Case('potential', 'picard', lambda: _picard_case(config)),
            Case('potential', 'multiplication', lambda: _multiplication_case(config))]


SUITES = {
    "norms": norms_cases,
    "fixed-time": fixed_time_cases,
    "strichartz": strichartz_cases,
    "sharpness": sharpness_cases,
    "potential": potential_cases,
}


def build_cases(config: RunConfig, query: Optional[SharpnessQuery] = None) -> List[Case]:
    if query is not None:
        return query_cases(config, query)
    names = SUITE_NAMES if config.experiment == 'all' else (config.experiment,)
    cases = []
    for name in names:
        cases.extend(SUITES[name](config))
    return cases


def _execute(case: Case) -> List[ReportRow]:
    LOG.info("running %s/%s", case.experiment, case.name)
    try:
        return case.run()
    except ConvergenceError as e:
        LOG.warning("%s/%s aborted: %s", case.experiment, case.name, e)
        return [ReportRow(case.experiment, case.name, {}, None, e.ratio, None, False, f"aborted: {e}")]


def run(config: RunConfig, query: Optional[SharpnessQuery] = None) -> EstimateReport:
    """Runs the selected suites and collects their rows.

    Domain and resolution errors abort the run; Picard divergence only fails its case.
    """
    echo = config.to_dict(reproducible=True)
    if query is not None:
        echo["query"] = query.to_dict()
    report = EstimateReport(echo)
    cases = build_cases(config, query)
    with ThreadPoolExecutor(max_workers=config.jobs) as executor:
        for rows in executor.map(_execute, cases):
            report.extend(rows)
    LOG.info("%d of %d cases passed", report.summary["passed"], report.summary["total"])
    return report


def run_region(d: int, out_dir: str, resolution: int = 101) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"region-d{d}.csv")
    emit_region(d, resolution, path)
    return path
