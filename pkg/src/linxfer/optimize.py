"""Derivative-free minimizers with full evaluation traces.

``local_minimize`` wraps scipy's COBYLA; ``global_minimize`` runs Optuna's
TPE sampler after a scrambled-Sobol warm-up.
"""
from __future__ import annotations

import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, Union

import numpy as np

__all__ = ["ObjectiveTrace", "BudgetExhausted", "local_minimize", "global_minimize"]

logger = logging.getLogger(__name__)


class BudgetExhausted(Exception):
    pass


class _NonFinite(Exception):
    pass


@dataclass
class ObjectiveTrace:
    evaluations: list[tuple[np.ndarray, float]] = field(default_factory=list)
    aborted: bool = False

    @property
    def eval_count(self) -> int:
        return len(self.evaluations)

    @property
    def best_index(self) -> int:
        if not self.evaluations:
            raise ValueError("empty trace")
        values = [v for _, v in self.evaluations]
        finite = [k for k, v in enumerate(values) if math.isfinite(v)]
        if not finite:
            return 0
        return min(finite, key=lambda k: values[k])

    @property
    def best_params(self) -> np.ndarray:
        return self.evaluations[self.best_index][0].copy()

    @property
    def best_value(self) -> float:
        return self.evaluations[self.best_index][1]

    def to_jsonl(self, path: Union[str, Path, None] = None) -> str:
        lines = [json.dumps({"params": x.tolist(), "value": v}) for x, v in self.evaluations]
        text = "\n".join(lines) + ("\n" if lines else "")
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    @classmethod
    def read_jsonl(cls, path: Union[str, Path]) -> "ObjectiveTrace":
        trace = cls()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line.strip():
                rec = json.loads(line)
                trace.evaluations.append((np.asarray(rec["params"], dtype=float), float(rec["value"])))
        return trace


class _Recorder:
    def __init__(self, objective, budget, trace):
        self.objective = objective
        self.budget = budget
        self.trace = trace

    def __call__(self, x):
        if self.trace.eval_count >= self.budget:
            raise BudgetExhausted
        x = np.array(x, dtype=np.float64)
        value = float(self.objective(x))
        self.trace.evaluations.append((x, value))
        if not math.isfinite(value):
            raise _NonFinite
        return value


def local_minimize(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float],
    budget: int = 1000,
    rhobeg: float = 1.0,
    rhoend: float = 1e-6,
) -> ObjectiveTrace:
    """COBYLA descent from ``x0`` using at most ``budget`` evaluations.

    Stops when the trust-region radius drops below ``rhoend`` or the budget
    runs out. A non-finite objective value stops the run with
    ``trace.aborted`` set.
    """
    from scipy.optimize import minimize

    x0 = np.asarray(x0, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(x0)):
        raise ValueError("x0 must be finite")
    if budget < x0.size + 2:
        raise ValueError(f"budget must be at least dim + 2 = {x0.size + 2}, got {budget}")
    trace = ObjectiveTrace()
    rec = _Recorder(objective, budget, trace)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            minimize(rec, x0, method="COBYLA", options={"maxiter": budget, "rhobeg": rhobeg, "tol": rhoend})
    except BudgetExhausted:
        pass
    except _NonFinite:
        trace.aborted = True
        logger.warning("objective returned a non-finite value after %d evaluations", trace.eval_count)
    return trace


def global_minimize(
    objective: Callable[[np.ndarray], float],
    bounds: Sequence[tuple[float, float]],
    trials: int = 1024,
    seed: int = 0,
    n_startup: int | None = None,
) -> ObjectiveTrace:
    """Box-constrained global search with exactly ``trials`` evaluations.

    The first ``n_startup`` points (default: 10% of trials, at least 16)
    come from a scrambled Sobol sequence; the rest are proposed by TPE.
    """
    import optuna
    from scipy.stats import qmc

    bounds = np.asarray(bounds, dtype=np.float64)
    if bounds.ndim != 2 or bounds.shape[1] != 2 or not np.all(bounds[:, 0] < bounds[:, 1]):
        raise ValueError("bounds must be a sequence of (lo, hi) pairs with lo < hi")
    if trials < 1:
        raise ValueError("trials must be positive")
    dim = bounds.shape[0]
    if n_startup is None:
        n_startup = max(16, trials // 10)
    n_startup = min(n_startup, trials)
    names = [f"x{k}" for k in range(dim)]

    optuna.logging.set_verbosity(optuna.logging.WARNING)
    sampler = optuna.samplers.TPESampler(seed=seed, n_startup_trials=n_startup)
    study = optuna.create_study(direction="minimize", sampler=sampler)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        warm = qmc.Sobol(dim, scramble=True, seed=seed).random(n_startup)
    warm = qmc.scale(warm, bounds[:, 0], bounds[:, 1])
    for point in warm:
        study.enqueue_trial(dict(zip(names, map(float, point))))

    trace = ObjectiveTrace()

    def wrapped(trial):
        x = np.array([trial.suggest_float(nm, lo, hi) for nm, (lo, hi) in zip(names, bounds)])
        value = float(objective(x))
        trace.evaluations.append((x, value))
        return value if math.isfinite(value) else float("inf")

    study.optimize(wrapped, n_trials=trials)
    return trace
