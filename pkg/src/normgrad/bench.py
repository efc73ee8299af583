"""Benchmark harness: experiments, sweeps, rate fits, and property suites.

Everything here is deterministic given explicit seeds. The default sweep
(dimension 10, start at distance 1 from the minimizer, seeds 0..2, horizons
2^8..2^14) drives the interpolation families against all four learners and
checks every bound on every cell.

Rate-fit experiments use their own canonical start distance. A start at
distance exactly 1 with step scale 1 makes the dual-averaging iterate land
exactly on the minimizer at step 2 (and the constant-step oscillation phase
lock to the horizon on power-of-4 horizons), which degenerates log-log
fits; RATE_FIT_DISTANCE is a high-entropy value that keeps the oscillation
phase generic at every default horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .learners import LEARNER_KINDS, LearnerConfig
from .problems import (
    Huber,
    L2Norm,
    LogSumExp,
    PowerNorm,
    Problem,
    Quadratic,
    check_descent_inequality,
    check_grad_bound,
    finite_diff_grad,
    local_constant_from_parts,
    local_holder_constant,
    problem_from_config,
    sample_holder_constant,
)
from .reduction import (
    DEFAULT_EPS_ZERO,
    BoundReport,
    RunRecord,
    bound_report,
    hm_gm_am,
    run_adagrad_warmup,
    run_normalized,
    start_at_distance,
)
from .vectors import l2_norm

__all__ = [
    "ConfigError",
    "DEFAULT_DIMENSION",
    "DEFAULT_DISTANCE",
    "DEFAULT_SEEDS",
    "DEFAULT_HORIZONS",
    "DEFAULT_SWEEP_NUS",
    "DEFAULT_SWEEP_LEARNERS",
    "RATE_FIT_DISTANCE",
    "RATE_FIT_STEP_SCALES",
    "RateFit",
    "fit_rate",
    "ExperimentConfig",
    "parse_experiment_config",
    "resolve_learner_config",
    "CellResult",
    "run_cell",
    "bound_violations",
    "summary_record",
    "trajectory_rows",
    "TRAJECTORY_COLUMNS",
    "SWEEP_COLUMNS",
    "sweep_rows",
    "rows_to_csv",
    "rate_fit_from_records",
    "rate_experiment",
    "SuiteResult",
    "SUITES",
    "run_suites",
    "canonical_problems",
]

DEFAULT_DIMENSION = 10
DEFAULT_DISTANCE = 1.0
DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_HORIZONS = tuple(2 ** k for k in range(8, 15))
DEFAULT_SWEEP_NUS = (0.0, 0.5, 1.0)
DEFAULT_SWEEP_LEARNERS = ("ogd_const", "da_sqrt", "kt", "adagrad_da")

# Start distance for rate-fit experiments; see the module docstring.
RATE_FIT_DISTANCE = 1.3541320163922068
# Step scales giving well-conditioned fits at that distance.
RATE_FIT_STEP_SCALES = {"ogd_const": 1.0, "da_sqrt": 1.25, "kt": 1.0, "adagrad_da": 1.0}


class ConfigError(Exception):
    """Malformed experiment configuration (CLI exit code 2)."""


# ---------------------------------------------------------------------------
# rate fitting


@dataclass
class RateFit:
    """Least-squares line through (log T, log gap) with the value the
    interpolation rate predicts for the slope, -(1+nu)/2."""

    slope: float
    intercept: float
    r_squared: float
    predicted_slope: float
    n_points: int
    n_excluded: int

    def as_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "predicted_slope": self.predicted_slope,
            "n_points": self.n_points,
            "n_excluded": self.n_excluded,
        }


def fit_rate(horizons, gaps, predicted_slope: float) -> RateFit:
    """Fit log(gap) against log(T). Horizons with nonpositive gap (early
    stops at the optimum) are excluded; fewer than 3 usable points raise
    ConfigError("insufficient data")."""
    pts = [(t, g) for t, g in zip(horizons, gaps) if g is not None and g > 0.0]
    excluded = len(list(horizons)) - len(pts)
    if len(pts) < 3:
        raise ConfigError(
            f"insufficient data: rate fit needs >= 3 horizons with positive "
            f"suboptimality, got {len(pts)}")
    lx = [math.log(t) for t, _ in pts]
    ly = [math.log(g) for _, g in pts]
    n = len(pts)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((x - mx) ** 2 for x in lx)
    sxy = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(lx, ly))
    ss_tot = sum((y - my) ** 2 for y in ly)
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else (1.0 if ss_res == 0.0 else 0.0)
    return RateFit(slope, intercept, r2, predicted_slope, n, excluded)


# ---------------------------------------------------------------------------
# experiment configuration


@dataclass
class ExperimentConfig:
    problem: Problem
    learner_record: dict
    horizons: list
    seed: int = 0
    eps_zero: float = DEFAULT_EPS_ZERO


def parse_experiment_config(record: dict) -> ExperimentConfig:
    """Validate and resolve a config record:

    {"problem": {...}, "learner": {"kind": ..., "start": [...] |
     "start_distance": float, ...}, "horizons": [ints, strictly increasing],
     "seed": int, "eps_zero": float}
    """
    try:
        problem = problem_from_config(record["problem"])
        learner = dict(record["learner"])
        horizons = [int(t) for t in record["horizons"]]
    except (KeyError, TypeError, ValueError, ContractViolation) as exc:
        raise ConfigError(f"bad experiment config: {exc}") from exc
    if not horizons:
        raise ConfigError("bad experiment config: horizons must be nonempty")
    if any(b <= a for a, b in zip(horizons, horizons[1:])) or horizons[0] < 1:
        raise ConfigError("bad experiment config: horizons must be strictly increasing positives")
    if learner.get("kind") not in LEARNER_KINDS:
        raise ConfigError(
            f"bad experiment config: learner kind must be one of {LEARNER_KINDS}")
    seed = int(record.get("seed", 0))
    eps_zero = float(record.get("eps_zero", DEFAULT_EPS_ZERO))
    if not (eps_zero > 0.0):
        raise ConfigError("bad experiment config: eps_zero must be positive")
    return ExperimentConfig(problem, learner, horizons, seed, eps_zero)


def resolve_learner_config(problem: Problem, record: dict, horizon: int,
                           seed: int) -> LearnerConfig:
    """Turn a learner record into a concrete config for one horizon.

    The start point comes from an explicit "start" list or from
    "start_distance" (direction drawn from the seed; default distance 1).
    ogd_const always runs at horizon == T regardless of any horizon field.
    The adagrad_da gradient bound defaults to the gradient norm at the
    start (its largest realized value on the shipped descent problems),
    floored at 1.
    """
    kind = record["kind"]
    if "start" in record and record["start"] is not None:
        start = np.asarray(record["start"], dtype=np.float64)
    else:
        start = start_at_distance(problem, float(record.get("start_distance", DEFAULT_DISTANCE)), seed)
    kwargs = {
        "kind": kind,
        "start": start,
        "step_scale": float(record.get("step_scale", 1.0)),
        "wealth_init": float(record.get("wealth_init", 1.0)),
    }
    if kind == "ogd_const":
        kwargs["horizon"] = horizon
    if kind == "adagrad_da":
        if "grad_bound_init" in record:
            kwargs["grad_bound_init"] = float(record["grad_bound_init"])
        else:
            kwargs["grad_bound_init"] = max(1.0, l2_norm(problem.grad(start)))
    return LearnerConfig(**kwargs)


@dataclass
class CellResult:
    problem: Problem
    config: LearnerConfig
    horizon: int
    seed: int
    run: RunRecord
    report: BoundReport


def run_cell(problem: Problem, learner_record: dict, horizon: int, seed: int,
             eps_zero: float = DEFAULT_EPS_ZERO) -> CellResult:
    """Run one (problem, learner, horizon, seed) cell with its bound report."""
    config = resolve_learner_config(problem, learner_record, horizon, seed)
    if config.kind == "adagrad_da":
        run = run_adagrad_warmup(config, problem, horizon)
    else:
        run = run_normalized(config, problem, horizon, eps_zero)
    report = bound_report(run, problem, config)
    return CellResult(problem, config, horizon, seed, run, report)


def _leq(a: float, b: float, slack: float = 1e-9) -> bool:
    return a <= b + slack * (1.0 + abs(b))


def bound_violations(result: CellResult, slack: float = 1e-9) -> list:
    """Bound-chain violations for one cell (empty list means all hold).

    Checks measured <= bound_closed_form, measured <= bound_gm <= bound_am,
    each with the given relative slack."""
    r = result.report
    out = []
    label = (f"learner={result.config.kind} problem={result.problem!r} "
             f"T={result.horizon} seed={result.seed}")
    if not _leq(r.measured, r.bound_closed_form, slack):
        out.append(f"measured {r.measured!r} > closed-form bound "
                   f"{r.bound_closed_form!r} [{label}]")
    if not _leq(r.measured, r.bound_gm, slack):
        out.append(f"measured {r.measured!r} > geometric-mean bound {r.bound_gm!r} [{label}]")
    if not _leq(r.bound_gm, r.bound_am, slack):
        out.append(f"geometric-mean bound {r.bound_gm!r} > arithmetic-mean "
                   f"bound {r.bound_am!r} [{label}]")
    return out


# ---------------------------------------------------------------------------
# artifacts (CSV / JSON payloads)

TRAJECTORY_COLUMNS = ("t", "f_gap", "grad_norm", "weight", "local_L")

SWEEP_COLUMNS = (
    "nu", "learner", "T", "seed", "steps_taken", "terminated_early",
    "grad_bound_exceeded", "f_gap_avg", "f_gap_mean", "psi_at_xstar",
    "bound_gm", "bound_am", "bound_closed_form", "max_iterate_dist_sq",
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows, columns) -> str:
    """Render dict rows into a deterministic CSV body (no timestamps)."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def trajectory_rows(result: CellResult) -> list:
    """One row per loss-fed step: t, f_gap, grad_norm, weight, local_L.

    weight is 1/||g_t|| for normalized runs and 1.0 (uniform) for warm-up
    runs; local_L is empty at steps sitting exactly at the optimum."""
    unit = result.config.kind != "adagrad_da"
    spec = result.problem.spec
    rows = []
    for i, (gn, gap) in enumerate(zip(result.run.grad_norms, result.run.suboptimalities)):
        if spec.nu == 0.0:
            local = gn
        elif gap > 0.0:
            local = local_constant_from_parts(spec, gn, gap)
        else:
            local = ""
        rows.append({
            "t": i + 1,
            "f_gap": gap,
            "grad_norm": gn,
            "weight": (1.0 / gn) if unit else 1.0,
            "local_L": local,
        })
    return rows


def summary_record(result: CellResult, eps_zero: float = DEFAULT_EPS_ZERO) -> dict:
    r = result.report
    return {
        "config": {
            "problem": result.problem.config_record(),
            "learner": result.config.config_record(),
            "T": result.horizon,
            "seed": result.seed,
            "eps_zero": eps_zero,
        },
        "steps_taken": result.run.steps_taken,
        "terminated_early": result.run.terminated_early,
        "grad_bound_exceeded": result.run.grad_bound_exceeded,
        "f_gap_avg": r.measured,
        "f_gap_mean": result.run.mean_suboptimality,
        "psi_at_xstar": r.psi_at_xstar,
        "bound_gm": r.bound_gm,
        "bound_am": r.bound_am,
        "bound_closed_form": r.bound_closed_form,
    }


def _problem_nu(problem_record: dict) -> float:
    family = problem_record["family"]
    if family == "power_norm":
        return float(problem_record["parameters"]["nu"])
    return {"quadratic": 1.0, "l2_norm": 0.0, "huber": 1.0, "log_sum_exp": 1.0}[family]


def rate_fit_from_records(records) -> RateFit:
    """Fit the convergence rate from summary records (one per horizon).

    Uses f_gap_mean of runs that did not stop early; all records must share
    the same smoothness exponent."""
    if not records:
        raise ConfigError("insufficient data: no summary records")
    nus = {_problem_nu(rec["config"]["problem"]) for rec in records}
    if len(nus) != 1:
        raise ConfigError(f"rate fit needs a single nu, got {sorted(nus)}")
    nu = nus.pop()
    horizons = []
    gaps = []
    for rec in sorted(records, key=lambda r: r["config"]["T"]):
        horizons.append(rec["config"]["T"])
        gaps.append(None if rec["terminated_early"] else rec["f_gap_mean"])
    return fit_rate(horizons, gaps, predicted_slope=-(1.0 + nu) / 2.0)


# ---------------------------------------------------------------------------
# sweeps


def sweep_rows(nus=DEFAULT_SWEEP_NUS, learners=DEFAULT_SWEEP_LEARNERS,
               horizons=DEFAULT_HORIZONS, seeds=DEFAULT_SEEDS,
               dimension=DEFAULT_DIMENSION, distance=DEFAULT_DISTANCE,
               step_scale=1.0, eps_zero=DEFAULT_EPS_ZERO):
    """Run the (nu x learner x horizon x seed) grid over the interpolation
    family and yield one row dict per cell, in deterministic grid order."""
    if not nus or not learners or not horizons or not seeds:
        raise ConfigError("sweep grid must be nonempty in every axis")
    for kind in learners:
        if kind not in LEARNER_KINDS:
            raise ConfigError(f"unknown learner kind {kind!r}")
    rows = []
    for nu in nus:
        problem = PowerNorm(float(nu), dimension)
        for kind in learners:
            record = {"kind": kind, "start_distance": distance, "step_scale": step_scale}
            for horizon in horizons:
                for seed in seeds:
                    cell = run_cell(problem, record, int(horizon), int(seed), eps_zero)
                    max_dist_sq = 0.0
                    pts = list(cell.run.iterates)
                    if cell.run.average_point is not None and cell.run.terminated_early:
                        pts.append(cell.run.average_point)
                    for x in pts:
                        dist_sq = float(np.dot(x - problem.minimizer, x - problem.minimizer))
                        max_dist_sq = max(max_dist_sq, dist_sq)
                    r = cell.report
                    rows.append({
                        "nu": float(nu),
                        "learner": kind,
                        "T": int(horizon),
                        "seed": int(seed),
                        "steps_taken": cell.run.steps_taken,
                        "terminated_early": cell.run.terminated_early,
                        "grad_bound_exceeded": cell.run.grad_bound_exceeded,
                        "f_gap_avg": r.measured,
                        "f_gap_mean": cell.run.mean_suboptimality,
                        "psi_at_xstar": r.psi_at_xstar,
                        "bound_gm": r.bound_gm,
                        "bound_am": r.bound_am,
                        "bound_closed_form": r.bound_closed_form,
                        "max_iterate_dist_sq": max_dist_sq,
                        "_cell": cell,
                    })
    return rows


def rate_experiment(nu: float, kind: str, horizons=DEFAULT_HORIZONS,
                    dimension=DEFAULT_DIMENSION, seed: int = 0,
                    distance: float = RATE_FIT_DISTANCE):
    """Canonical rate-fit experiment: one learner on the interpolation
    family across horizons, returning (summary records, RateFit)."""
    problem = PowerNorm(float(nu), dimension)
    record = {
        "kind": kind,
        "start_distance": distance,
        "step_scale": RATE_FIT_STEP_SCALES.get(kind, 1.0),
    }
    summaries = []
    for horizon in horizons:
        cell = run_cell(problem, record, int(horizon), seed)
        summaries.append(summary_record(cell))
    return summaries, rate_fit_from_records(summaries)


# ---------------------------------------------------------------------------
# property suites


@dataclass
class SuiteResult:
    name: str
    samples: int
    failures: int
    worst_slack: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "worst_slack": self.worst_slack,
            "passed": self.passed,
            "note": self.note,
        }


def canonical_problems(dimension: int = 3) -> list:
    """One instance per family, used by the sampling suites."""
    return [
        Quadratic(dimension),
        PowerNorm(0.5, dimension),
        L2Norm(dimension),
        Huber(dimension, delta=1.0),
        LogSumExp(dimension),
    ]


_SAMPLE_RADIUS = 10.0


def _sample_point(problem: Problem, rng, min_smooth_dist: float = 0.0) -> np.ndarray:
    while True:
        x = rng.uniform(-_SAMPLE_RADIUS, _SAMPLE_RADIUS, problem.dimension)
        if min_smooth_dist <= 0.0 or problem.distance_to_nonsmooth(x) > min_smooth_dist:
            return x


def suite_descent(samples: int, seed: int, l_scale: float = 1.0,
                  name: str = "descent") -> SuiteResult:
    """Descent inequality on random pairs, per family."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            x = _sample_point(problem, rng)
            y = _sample_point(problem, rng)
            check = check_descent_inequality(problem, x, y, l_scale=l_scale)
            total += 1
            worst = max(worst, check.residual - check.slack)
            if not check.passed:
                failures += 1
    return SuiteResult(name, total, failures, worst, failures == 0)


def suite_descent_negative_control(samples: int, seed: int) -> SuiteResult:
    """Same sampling with the declared constants halved; passes iff the
    corruption is detected (i.e. the descent check fails somewhere)."""
    inner = suite_descent(samples, seed, l_scale=0.5, name="descent_negative_control")
    detected = inner.failures > 0
    return SuiteResult(inner.name, inner.samples, inner.failures, inner.worst_slack,
                       detected, note="passes iff halved constants are caught")


def suite_grad_bound(samples: int, seed: int) -> SuiteResult:
    """Gradient-norm bound on random points, families with nu > 0."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        if problem.spec.nu <= 0.0:
            continue
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            x = _sample_point(problem, rng)
            check = check_grad_bound(problem, x)
            total += 1
            worst = max(worst, check.residual - 1e-9 * (1.0 + abs(check.rhs)))
            if not check.passed:
                failures += 1
    return SuiteResult("grad_bound", total, failures, worst, failures == 0)


def suite_gradient_check(samples: int, seed: int) -> SuiteResult:
    """Analytic gradients against central differences (1e-5 relative),
    sampling away from nonsmooth sets."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            x = _sample_point(problem, rng, min_smooth_dist=1e-3)
            a = problem.grad(x)
            fd = finite_diff_grad(problem, x, h=1e-6)
            rel = l2_norm(a - fd) / (1e-12 + l2_norm(a))
            total += 1
            worst = max(worst, rel - 1e-5)
            if rel > 1e-5:
                failures += 1
    return SuiteResult("gradient_check", total, failures, worst, failures == 0)


def suite_convexity(samples: int, seed: int) -> SuiteResult:
    """f(lam x + (1-lam) y) <= lam f(x) + (1-lam) f(y) + 1e-9 on random
    segments (a tenth of the configured samples per family)."""
    n = max(1, samples // 10)
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        rng = np.random.default_rng(seed)
        for _ in range(n):
            x = _sample_point(problem, rng)
            y = _sample_point(problem, rng)
            lam = rng.uniform()
            mid = problem.eval(lam * x + (1.0 - lam) * y)
            chord = lam * problem.eval(x) + (1.0 - lam) * problem.eval(y)
            residual = mid - chord - 1e-9
            total += 1
            worst = max(worst, residual)
            if residual > 0.0:
                failures += 1
    return SuiteResult("convexity", total, failures, worst, failures == 0)


def suite_holder_sampling(samples: int, seed: int) -> SuiteResult:
    """Sampled smoothness ratio never above the declared constant (10 seeds
    per family, a tenth of the configured samples each)."""
    n = max(1, samples // 10)
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        for offset in range(10):
            value = sample_holder_constant(problem, n, seed + offset)
            excess = value - problem.spec.l_nu - 1e-9
            total += 1
            worst = max(worst, excess)
            if excess > 0.0:
                failures += 1
    return SuiteResult("holder_sampling", total, failures, worst, failures == 0)


def suite_local_constant(samples: int, seed: int) -> SuiteResult:
    """Pointwise local constants never above the global one (nu > 0)."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems():
        if problem.spec.nu <= 0.0:
            continue
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            x = _sample_point(problem, rng)
            if problem.gap(x) <= 0.0:
                continue
            excess = local_holder_constant(problem, x) - problem.spec.l_nu - 1e-9
            total += 1
            worst = max(worst, excess)
            if excess > 0.0:
                failures += 1
    return SuiteResult("local_constant", total, failures, worst, failures == 0)


def suite_means_ordering(samples: int, seed: int) -> SuiteResult:
    """hm <= gm <= am (relative 1e-12) on random positive sequences of
    lengths 1..64 spanning twelve orders of magnitude."""
    rng = np.random.default_rng(seed)
    failures = 0
    worst = -math.inf
    for _ in range(samples):
        n = int(rng.integers(1, 65))
        vals = np.exp(rng.uniform(-14.0, 14.0, n))
        hm, gm, am = hm_gm_am(vals)
        slack = max((hm - gm) / gm, (gm - am) / am)
        worst = max(worst, slack - 1e-12)
        if slack > 1e-12:
            failures += 1
    return SuiteResult("means_ordering", samples, failures, worst, failures == 0)


_CHAIN_HORIZONS = tuple(2 ** k for k in range(4, 13))


def _chain_learner_records():
    return [
        {"kind": "ogd_const", "step_scale": 1.0},
        {"kind": "da_sqrt", "step_scale": 1.0},
        {"kind": "kt", "wealth_init": 1.0},
    ]


def suite_bounded_iterates(samples: int, seed: int) -> SuiteResult:
    """Constant-step normalized runs keep every iterate within
    ||x_1 - x*||^2 + alpha^2 of the minimizer (squared distances)."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems(DEFAULT_DIMENSION):
        record = {"kind": "ogd_const", "step_scale": 1.0, "start_distance": DEFAULT_DISTANCE}
        for horizon in _CHAIN_HORIZONS:
            cell = run_cell(problem, record, horizon, seed)
            d_sq = l2_norm(cell.config.start - problem.minimizer) ** 2
            limit = d_sq + cell.config.step_scale ** 2 + 1e-9
            pts = list(cell.run.iterates)
            if cell.run.terminated_early and cell.run.average_point is not None:
                pts.append(cell.run.average_point)
            for x in pts:
                dist_sq = l2_norm(x - problem.minimizer) ** 2
                total += 1
                worst = max(worst, dist_sq - limit)
                if dist_sq > limit:
                    failures += 1
    return SuiteResult("bounded_iterates", total, failures, worst, failures == 0)


def suite_reduction_chain(samples: int, seed: int) -> SuiteResult:
    """End-to-end chain on every family and unit-norm learner:

    measured <= gm-bound <= am-bound <= closed form (relative slack 1e-9),
    the averaged point obeys the weighted mean of the per-step gaps
    (+1e-9), the weighted gap sum stays below psi (+1e-6), and an early
    stop really sits at a zero-gradient point."""
    failures = 0
    worst = -math.inf
    total = 0
    for problem in canonical_problems(DEFAULT_DIMENSION):
        for record in _chain_learner_records():
            record = dict(record, start_distance=DEFAULT_DISTANCE)
            for horizon in _CHAIN_HORIZONS:
                cell = run_cell(problem, record, horizon, seed)
                run, rep = cell.run, cell.report
                checks = []
                checks.append(run.average_suboptimality - run.mean_suboptimality - 1e-9)
                if run.steps_taken > 0:
                    gap_w = sum(g / n for g, n in zip(run.suboptimalities, run.grad_norms))
                    checks.append(gap_w - rep.psi_at_xstar - 1e-6)
                    checks.append(rep.measured - rep.bound_gm - 1e-9 * (1.0 + rep.bound_gm))
                    checks.append(rep.bound_gm - rep.bound_am - 1e-9 * (1.0 + rep.bound_am))
                if not run.terminated_early:
                    # psi/steps matches the closed form only for full runs
                    checks.append(rep.bound_am - rep.bound_closed_form
                                  - 1e-9 * (1.0 + rep.bound_closed_form))
                checks.append(rep.measured - rep.bound_closed_form
                              - 1e-9 * (1.0 + rep.bound_closed_form))
                if run.terminated_early:
                    gstop = l2_norm(problem.grad(run.average_point))
                    checks.append(gstop - DEFAULT_EPS_ZERO)
                for c in checks:
                    total += 1
                    worst = max(worst, c)
                    if c > 0.0:
                        failures += 1
    return SuiteResult("reduction_chain", total, failures, worst, failures == 0)


SUITES = {
    "descent": suite_descent,
    "descent_negative_control": suite_descent_negative_control,
    "grad_bound": suite_grad_bound,
    "gradient_check": suite_gradient_check,
    "convexity": suite_convexity,
    "holder_sampling": suite_holder_sampling,
    "local_constant": suite_local_constant,
    "means_ordering": suite_means_ordering,
    "bounded_iterates": suite_bounded_iterates,
    "reduction_chain": suite_reduction_chain,
}


def run_suites(names=None, samples: int = 10_000, seed: int = 0):
    """Run the named suites (all by default); returns the result list."""
    if names is None:
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
        results.append(SUITES[name](samples, seed))
    return results
