import json
import math

import numpy as np
import pytest

from linxfer.landscape import LandscapeGrid, best_point, default_fixed_other, scaling_study, scan_plane
from linxfer.oracle import brute_force_min
from linxfer.problems import gen_random_ising, scale_instance
from linxfer.schedules import REFERENCE_PARAMS


@pytest.fixture(scope="module")
def inst():
    return gen_random_ising(7, 0.6, 4)


def test_single_edge_cell(edge):
    # p=1 keeps only the intercept: <C> = sin(4 beta) sin(2 gamma)
    q = math.pi / 4
    grid = scan_plane(edge, 1, "gamma_plane", (0.0, math.pi / 8), (-1, 1), (-q - 0.5, -q + 0.5), 3)
    assert grid.values.shape == (3, 3)
    np.testing.assert_allclose(grid.values[:, 1], -1.0, atol=1e-12)
    np.testing.assert_allclose(grid.values[:, 0], -math.sin(2 * (q + 0.5)), atol=1e-12)
    s, c, v = best_point(grid)
    assert (s, c) == (-1.0, pytest.approx(-q))
    assert v == pytest.approx(-1.0, abs=1e-12)


def test_resolution_one(edge):
    grid = scan_plane(edge, 2, "beta_plane", None, (0.3, 0.3), (0.1, 0.1), 1)
    assert grid.values.shape == (1, 1)
    assert len(grid.to_csv().splitlines()) == 2


def test_default_fixed_other():
    assert default_fixed_other("gamma_plane") == (REFERENCE_PARAMS.beta_slope, REFERENCE_PARAMS.beta_intcp)
    assert default_fixed_other("beta_plane") == (REFERENCE_PARAMS.gamma_slope, REFERENCE_PARAMS.gamma_intcp)


def test_bad_plane(edge):
    with pytest.raises(ValueError):
        scan_plane(edge, 1, "delta_plane")


def test_scaling_covariance_cellwise(inst):
    c = 2.0
    base = scan_plane(inst, 3, "gamma_plane", None, (-1, 1), (-1, 1), 5)
    scaled = scan_plane(scale_instance(inst, c), 3, "gamma_plane", None, (-0.5, 0.5), (-0.5, 0.5), 5)
    np.testing.assert_allclose(scaled.values, c * base.values, atol=1e-10)


def test_best_point_tie_break():
    grid = LandscapeGrid("gamma_plane", np.array([1.0, -1.0]), np.array([0.5, -0.5]),
                         np.array([[0.0, -2.0], [-2.0, -2.0]]), (0.0, 0.0), 1)
    assert best_point(grid) == (-1.0, -0.5, -2.0)


def test_relabeling_invariance(inst):
    perm = np.random.default_rng(0).permutation(inst.n_qubits)
    edges = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), J) for i, j, J in inst.edges))
    relabeled = type(inst)(inst.n_qubits, edges)
    a = scan_plane(inst, 2, "beta_plane", None, (-1, 1), (-1, 1), 4)
    b = scan_plane(relabeled, 2, "beta_plane", None, (-1, 1), (-1, 1), 4)
    np.testing.assert_allclose(a.values, b.values, atol=1e-10)


def test_csv_and_metadata(tmp_path, inst):
    grid = scan_plane(inst, 2, "gamma_plane", None, (-1, 1), (0, 1), 3)
    csv_path, meta_path = grid.write(tmp_path / "g.csv")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "slope,intcp,value"
    assert len(lines) == 10
    # row-major: slope outer, intercept inner
    assert [ln.split(",")[:2] for ln in lines[1:4]] == [["-1.0", "0.0"], ["-1.0", "0.5"], ["-1.0", "1.0"]]
    assert float(lines[5].split(",")[2]) == grid.values[1, 1]
    meta = json.loads(meta_path.read_text())
    assert meta["plane"] == "gamma_plane" and meta["resolution"] == [3, 3] and meta["p"] == 2


def test_scaling_study_halves(inst):
    e = brute_force_min(inst).energy
    rows, grids = scaling_study(inst, 2, [4, 8], e, None, (-2, 2), (-2, 2), 9, return_grids=True)
    assert [r[0] for r in rows] == [4.0, 8.0]
    assert grids[0].metadata["normalization"] == "fixed:4"
    # doubling X doubles couplings, so the X=8 grid is the X=4 landscape at half the angles
    assert grids[0].metadata["normalization_factor"] == pytest.approx(2 * grids[1].metadata["normalization_factor"])
