"""Parameter-setting strategies: standard, INTERP, FOURIER and linear transfer.

Every driver returns a :class:`StrategyReport`. ``eval_count`` counts
objective calls made by an optimizer; the final re-evaluation used to fill
``expectation`` is reporting only and is not counted.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .optimize import ObjectiveTrace, global_minimize, local_minimize
from .oracle import simulated_annealing
from .problems import IsingInstance, Normalization, normalize_instance
from .schedules import FourierCoeffs, LinearParams, Schedule, fourier_to_schedule, interp_extend, linear_schedule
from .simulator import CostTable, SampleSet, build_cost_table, evolve, expectation, sample
from .validation import check_convention, check_instance, check_p

__all__ = [
    "StrategyReport",
    "DEFAULT_BOUNDS",
    "reference_energy",
    "run_standard",
    "run_interp",
    "run_fourier",
    "linxfer_train",
    "linxfer_apply",
]

DEFAULT_BOUNDS = ((-2.0, 2.0),) * 4
STRATEGIES = ("standard", "interp", "fourier", "linxfer")


@dataclass
class StrategyReport:
    name: str
    schedule: Schedule
    expectation: float
    ratio: float
    eval_count: int
    wall_seconds: float
    e_ref: float
    convention: str = "hamiltonian"
    normalization: Optional[str] = None
    normalization_factor: float = 1.0
    level_best: list[float] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    samples: Optional[SampleSet] = None

    @property
    def p(self) -> int:
        return self.schedule.p

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "p": self.p,
            "schedule": self.schedule.to_dict(),
            "expectation": self.expectation,
            "ratio": self.ratio,
            "eval_count": self.eval_count,
            "wall_seconds": self.wall_seconds,
            "e_ref": self.e_ref,
            "convention": self.convention,
            "normalization": self.normalization,
            "normalization_factor": self.normalization_factor,
            "level_best": list(self.level_best),
            "params": self.params,
        }
        if self.samples is not None:
            out["samples"] = {
                "shots": self.samples.shots,
                "mean_energy": self.samples.mean_energy,
                "best_energy": self.samples.best_energy,
            }
        return out


def reference_energy(instance: IsingInstance, table: Optional[CostTable] = None, sa_seed: int = 0) -> float:
    """Exact ground energy when the instance fits in the simulator, else annealing."""
    if table is not None:
        return table.min
    try:
        return build_cost_table(instance).min
    except ValueError:
        return simulated_annealing(instance, seed=sa_seed).energy


def _prepare(instance, table, e_ref):
    instance = check_instance(instance)
    if table is None:
        table = build_cost_table(instance)
    if e_ref is None:
        e_ref = table.min
    return instance, table, float(e_ref)


def _objective(table, convention, to_schedule):
    def f(x):
        return expectation(evolve(table, to_schedule(x), convention), table)

    return f


def run_standard(
    instance: IsingInstance,
    p: int,
    budget: int = 1000,
    *,
    init: float = 0.1,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
    e_ref: Optional[float] = None,
    rhobeg: float = 0.1,
) -> StrategyReport:
    """Optimize all ``2p`` angles from a uniform start with COBYLA."""
    p = check_p(p)
    convention = check_convention(convention)
    if budget < 1:
        raise ValueError("budget must be positive")
    instance, table, e_ref = _prepare(instance, table, e_ref)
    t0 = time.perf_counter()
    f = _objective(table, convention, Schedule.from_vector)
    trace = local_minimize(f, np.full(2 * p, init), budget, rhobeg=rhobeg)
    schedule = Schedule.from_vector(trace.best_params)
    value = f(schedule.to_vector())
    return StrategyReport(
        "standard", schedule, value, value / e_ref, trace.eval_count,
        time.perf_counter() - t0, e_ref, convention, level_best=[trace.best_value],
    )


def run_interp(
    instance: IsingInstance,
    p: int,
    budget_per_level: int = 1000,
    *,
    init: float = 0.1,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
    e_ref: Optional[float] = None,
    rhobeg: float = 0.1,
) -> StrategyReport:
    """Layer-by-layer optimization, interpolating to the next depth each time.

    The returned schedule is the first ``p`` entries of the vector obtained by
    interpolating the depth-``p`` optimum, matching the reference pseudocode.
    """
    p = check_p(p)
    convention = check_convention(convention)
    if budget_per_level < 1:
        raise ValueError("budget_per_level must be positive")
    instance, table, e_ref = _prepare(instance, table, e_ref)
    t0 = time.perf_counter()
    f = _objective(table, convention, Schedule.from_vector)
    gammas, betas = np.array([init]), np.array([init])
    evals = 0
    level_best = []
    for depth in range(1, p + 1):
        trace = local_minimize(f, np.concatenate([gammas, betas]), budget_per_level, rhobeg=rhobeg)
        evals += trace.eval_count
        level_best.append(trace.best_value)
        best = trace.best_params
        gammas = interp_extend(best[:depth])
        betas = interp_extend(best[depth:])
    schedule = Schedule(gammas[:p], betas[:p])
    value = f(schedule.to_vector())
    return StrategyReport(
        "interp", schedule, value, value / e_ref, evals,
        time.perf_counter() - t0, e_ref, convention, level_best=level_best,
    )


def run_fourier(
    instance: IsingInstance,
    p: int,
    k: int = 2,
    budget_per_level: int = 1000,
    *,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
    e_ref: Optional[float] = None,
    rhobeg: float = 0.1,
) -> StrategyReport:
    """Optimize sine/cosine coefficients, adding one term per level up to ``k``."""
    p = check_p(p)
    k = check_p(k, "k")
    convention = check_convention(convention)
    if budget_per_level < 1:
        raise ValueError("budget_per_level must be positive")
    instance, table, e_ref = _prepare(instance, table, e_ref)
    t0 = time.perf_counter()

    def to_schedule(x):
        m = x.size // 2
        return fourier_to_schedule(FourierCoeffs(x[:m], x[m:]), p)

    f = _objective(table, convention, to_schedule)
    u, v = np.empty(0), np.empty(0)
    evals = 0
    level_best = []
    for _ in range(k):
        x0 = np.concatenate([u, [0.0], v, [0.0]])
        trace = local_minimize(f, x0, budget_per_level, rhobeg=rhobeg)
        evals += trace.eval_count
        level_best.append(trace.best_value)
        best = trace.best_params
        m = best.size // 2
        u, v = best[:m], best[m:]
    schedule = to_schedule(np.concatenate([u, v]))
    value = f(np.concatenate([u, v]))
    return StrategyReport(
        "fourier", schedule, value, value / e_ref, evals,
        time.perf_counter() - t0, e_ref, convention, level_best=level_best,
        params={"u": u.tolist(), "v": v.tolist()},
    )


def linxfer_train(
    instance: IsingInstance,
    p: int,
    trials: int = 1024,
    seed: int = 0,
    *,
    bounds=DEFAULT_BOUNDS,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
    return_trace: bool = False,
):
    """Fit the four linear-ramp parameters on a source instance by TPE search."""
    p = check_p(p)
    convention = check_convention(convention)
    instance, table, _ = _prepare(instance, table, -1.0)
    f = _objective(table, convention, lambda x: linear_schedule(LinearParams.from_array(x), p))
    trace: ObjectiveTrace = global_minimize(f, bounds, trials=trials, seed=seed)
    lp = LinearParams.from_array(trace.best_params)
    return (lp, trace) if return_trace else lp


def linxfer_apply(
    lp: LinearParams,
    instance: IsingInstance,
    p: int,
    normalize: Optional[Normalization] = None,
    *,
    e_ref: Optional[float] = None,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
    shots: int = 0,
    seed: int = 0,
) -> StrategyReport:
    """Apply pre-trained linear parameters to ``instance`` without optimization.

    With ``normalize`` set, the schedule runs on ``instance / f`` where ``f``
    comes from ``normalization_factor(instance, normalize, e_ref)``; energies
    and samples are always reported for the original couplings. ``e_ref``
    also serves as the ratio denominator (exact ground energy if omitted).
    """
    p = check_p(p)
    convention = check_convention(convention)
    instance = check_instance(instance)
    if normalize is not None and e_ref is None:
        raise ValueError("normalized transfer needs e_ref (e.g. from simulated_annealing)")
    t0 = time.perf_counter()
    if table is None:
        table = build_cost_table(instance)
    ref = table.min if e_ref is None else float(e_ref)
    factor = 1.0
    run_table = table
    if normalize is not None:
        scaled, factor = normalize_instance(instance, normalize, e_ref)
        if factor != 1.0:
            run_table = build_cost_table(scaled)
    schedule = linear_schedule(lp, p)
    state = evolve(run_table, schedule, convention)
    value = expectation(state, table)
    samples = sample(state, shots, seed, table) if shots > 0 else None
    return StrategyReport(
        "linxfer", schedule, value, value / ref, 0, time.perf_counter() - t0, ref, convention,
        normalization=None if normalize is None else str(normalize),
        normalization_factor=factor, params=lp.to_dict(), samples=samples,
    )
