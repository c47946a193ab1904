import math

import numpy as np
import pytest

from linxfer.optimize import ObjectiveTrace, global_minimize, local_minimize


def sphere(x):
    return float(np.sum(np.asarray(x) ** 2))


class TestLocal:
    def test_sphere(self):
        trace = local_minimize(sphere, [1.0, 1.0], budget=200)
        assert trace.best_value <= 1e-4
        assert trace.eval_count <= 200

    def test_shifted_parabola(self):
        trace = local_minimize(lambda x: (x[0] - 3) ** 2, [0.0], budget=100)
        assert abs(trace.best_params[0] - 3) <= 0.01

    def test_budget_is_hard_cap(self):
        trace = local_minimize(sphere, [1.0, 1.0, 1.0], budget=10)
        assert trace.eval_count == 10
        assert trace.best_value <= sphere([1.0, 1.0, 1.0])

    def test_budget_too_small(self):
        with pytest.raises(ValueError):
            local_minimize(sphere, [1.0, 1.0], budget=3)

    def test_rejects_nonfinite_start(self):
        with pytest.raises(ValueError):
            local_minimize(sphere, [np.nan])

    def test_nonfinite_aborts(self):
        def f(x):
            return math.nan if x[0] < 0.5 else sphere(x)

        trace = local_minimize(f, [1.0], budget=50)
        assert trace.aborted
        assert math.isfinite(trace.best_value)

    def test_deterministic(self):
        a = local_minimize(sphere, [0.3, -0.7], budget=60)
        b = local_minimize(sphere, [0.3, -0.7], budget=60)
        assert [v for _, v in a.evaluations] == [v for _, v in b.evaluations]


class TestGlobal:
    bounds = [(-2.0, 2.0)] * 4

    def test_sphere_4d_beats_random_search(self):
        wins = 0
        for seed in range(10):
            trace = global_minimize(sphere, self.bounds, trials=1024, seed=seed)
            assert trace.eval_count == 1024
            assert trace.best_value <= 0.05
            rng = np.random.default_rng(1000 + seed)
            rand = min(sphere(x) for x in rng.uniform(-2, 2, (1024, 4)))
            wins += trace.best_value < rand
        assert wins >= 9

    def test_single_trial(self):
        trace = global_minimize(sphere, self.bounds, trials=1, seed=3)
        assert trace.eval_count == 1

    def test_bounds_respected(self):
        bounds = [(0.5, 1.0), (-3.0, -2.0)]
        trace = global_minimize(sphere, bounds, trials=64, seed=1)
        xs = np.array([x for x, _ in trace.evaluations])
        assert np.all(xs[:, 0] >= 0.5) and np.all(xs[:, 0] <= 1.0)
        assert np.all(xs[:, 1] >= -3.0) and np.all(xs[:, 1] <= -2.0)

    def test_deterministic(self):
        a = global_minimize(sphere, self.bounds, trials=40, seed=7)
        b = global_minimize(sphere, self.bounds, trials=40, seed=7)
        assert all(np.array_equal(x, y) for (x, _), (y, _) in zip(a.evaluations, b.evaluations))

    @pytest.mark.parametrize("bounds", [[(1.0, 1.0)], [(0.0, 1.0, 2.0)], []])
    def test_bad_bounds(self, bounds):
        with pytest.raises(ValueError):
            global_minimize(sphere, bounds, trials=4)


def test_jsonl_round_trip(tmp_path):
    trace = local_minimize(sphere, [0.1, 0.2], budget=20)
    path = tmp_path / "trace.jsonl"
    text = trace.to_jsonl(path)
    assert len(text.splitlines()) == trace.eval_count
    back = ObjectiveTrace.read_jsonl(path)
    assert back.eval_count == trace.eval_count
    for (x, v), (y, w) in zip(trace.evaluations, back.evaluations):
        np.testing.assert_array_equal(x, y)
        assert v == w


def test_empty_trace_has_no_best():
    with pytest.raises(ValueError):
        ObjectiveTrace().best_index
