"""scikit-learn style wrappers around the strategy drivers.

``fit`` takes a source instance (an :class:`IsingInstance`, its dict form or
a JSON path). ``predict`` returns the schedule to run on a target instance
and ``score`` returns the approximation ratio ``<E> / E_ref`` there.

>>> from linxfer import gen_random_ising, REFERENCE_PARAMS
>>> est = LinearTransferQAOA(p=8, params=REFERENCE_PARAMS, convention="gate")
>>> est.fit().score(gen_random_ising(10, 0.6, seed=3)) > 0.5
True
"""
from __future__ import annotations

from typing import Optional

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .problems import Normalization, normalization_factor
from .schedules import LinearParams, Schedule, linear_schedule
from .simulator import build_cost_table, qaoa_expectation
from .strategies import DEFAULT_BOUNDS, StrategyReport, linxfer_apply, linxfer_train, run_fourier, run_interp, run_standard
from .validation import check_instance, check_linear_params

__all__ = ["StandardQAOA", "InterpQAOA", "FourierQAOA", "LinearTransferQAOA"]


class _ScheduleEstimator(BaseEstimator):
    """Shared predict/score for estimators that learn one fixed schedule."""

    def _run(self, instance) -> StrategyReport:
        raise NotImplementedError

    def fit(self, X, y=None):
        self.report_ = self._run(check_instance(X))
        self.schedule_ = self.report_.schedule
        self.n_evaluations_ = self.report_.eval_count
        return self

    def predict(self, X=None) -> Schedule:
        check_is_fitted(self, "schedule_")
        return self.schedule_

    def score(self, X, y=None) -> float:
        check_is_fitted(self, "schedule_")
        instance = check_instance(X)
        table = build_cost_table(instance)
        return qaoa_expectation(table, self.schedule_, self.convention) / table.min


class StandardQAOA(_ScheduleEstimator):
    def __init__(self, p=8, budget=1000, init=0.1, rhobeg=0.1, convention="hamiltonian"):
        self.p = p
        self.budget = budget
        self.init = init
        self.rhobeg = rhobeg
        self.convention = convention

    def _run(self, instance):
        return run_standard(instance, self.p, self.budget, init=self.init, rhobeg=self.rhobeg,
                            convention=self.convention)


class InterpQAOA(_ScheduleEstimator):
    def __init__(self, p=8, budget_per_level=1000, init=0.1, rhobeg=0.1, convention="hamiltonian"):
        self.p = p
        self.budget_per_level = budget_per_level
        self.init = init
        self.rhobeg = rhobeg
        self.convention = convention

    def _run(self, instance):
        return run_interp(instance, self.p, self.budget_per_level, init=self.init, rhobeg=self.rhobeg,
                          convention=self.convention)


class FourierQAOA(_ScheduleEstimator):
    def __init__(self, p=8, k=2, budget_per_level=1000, rhobeg=0.1, convention="hamiltonian"):
        self.p = p
        self.k = k
        self.budget_per_level = budget_per_level
        self.rhobeg = rhobeg
        self.convention = convention

    def _run(self, instance):
        return run_fourier(instance, self.p, self.k, self.budget_per_level, rhobeg=self.rhobeg,
                           convention=self.convention)


class LinearTransferQAOA(BaseEstimator):
    """Train four ramp parameters on one instance, reuse them on others.

    Parameters
    ----------
    p : int
        Number of QAOA layers.
    params : LinearParams, optional
        Pre-trained parameters. When given, ``fit`` does no search.
    trials, seed, bounds
        TPE search settings used when ``params`` is None.
    normalization : Normalization or str, optional
        Energy-scale normalization applied to each target; needs ``e_ref``
        at predict/score time.
    """

    def __init__(self, p=8, params: Optional[LinearParams] = None, trials=1024, seed=0,
                 bounds=DEFAULT_BOUNDS, normalization=None, convention="hamiltonian"):
        self.p = p
        self.params = params
        self.trials = trials
        self.seed = seed
        self.bounds = bounds
        self.normalization = normalization
        self.convention = convention

    def fit(self, X=None, y=None):
        if self.params is not None:
            self.params_ = check_linear_params(self.params)
            self.n_evaluations_ = 0
            return self
        if X is None:
            raise ValueError("fit needs a source instance when params is not given")
        self.params_, self.trace_ = linxfer_train(
            check_instance(X), self.p, self.trials, self.seed, bounds=self.bounds,
            convention=self.convention, return_trace=True,
        )
        self.n_evaluations_ = self.trace_.eval_count
        return self

    def _normalization(self):
        if self.normalization is None or isinstance(self.normalization, Normalization):
            return self.normalization
        return Normalization.parse(self.normalization)

    def apply(self, X, e_ref: Optional[float] = None, shots: int = 0, seed: int = 0) -> StrategyReport:
        """Zero-optimization transfer to ``X``."""
        check_is_fitted(self, "params_")
        return linxfer_apply(self.params_, check_instance(X), self.p, self._normalization(), e_ref=e_ref,
                             convention=self.convention, shots=shots, seed=seed)

    def predict(self, X=None, e_ref: Optional[float] = None) -> Schedule:
        """Schedule to run on the original couplings of ``X``.

        Normalizing couplings by ``f`` is the same as dividing every gamma by
        ``f``, so the normalized transfer is returned in that form.
        """
        check_is_fitted(self, "params_")
        schedule = linear_schedule(self.params_, self.p)
        norm = self._normalization()
        if norm is None:
            return schedule
        if X is None or e_ref is None:
            raise ValueError("normalized predict needs the target instance and e_ref")
        f = normalization_factor(check_instance(X), norm, e_ref)
        return Schedule(schedule.gammas / f, schedule.betas)

    def score(self, X, y=None, e_ref: Optional[float] = None) -> float:
        return self.apply(X, e_ref=e_ref).ratio
