"""Expectation landscapes over slope/intercept planes of the linear ramp."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .problems import IsingInstance, Normalization, normalize_instance
from .schedules import REFERENCE_PARAMS, LinearParams, linear_schedule
from .simulator import CostTable, build_cost_table, evolve, expectation
from .validation import check_convention, check_instance, check_p

__all__ = ["PLANES", "LandscapeGrid", "scan_plane", "best_point", "scaling_study", "default_fixed_other"]

PLANES = ("gamma_plane", "beta_plane")
DEFAULT_RANGE = (-2.0, 2.0)


def default_fixed_other(plane: str) -> tuple[float, float]:
    """Off-plane pair held fixed by default: the reference parameters' values."""
    if plane == "gamma_plane":
        return REFERENCE_PARAMS.beta_slope, REFERENCE_PARAMS.beta_intcp
    return REFERENCE_PARAMS.gamma_slope, REFERENCE_PARAMS.gamma_intcp


def _params(plane, slope, intcp, fixed_other) -> LinearParams:
    if plane == "gamma_plane":
        return LinearParams(slope, intcp, fixed_other[0], fixed_other[1])
    return LinearParams(fixed_other[0], fixed_other[1], slope, intcp)


@dataclass
class LandscapeGrid:
    plane: str
    slope_axis: np.ndarray
    intcp_axis: np.ndarray
    values: np.ndarray
    fixed_other: tuple[float, float]
    p: int
    metadata: dict = field(default_factory=dict)

    def params_at(self, a: int, b: int) -> LinearParams:
        return _params(self.plane, float(self.slope_axis[a]), float(self.intcp_axis[b]), self.fixed_other)

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["slope", "intcp", "value"])
        for a, s in enumerate(self.slope_axis):
            for b, c in enumerate(self.intcp_axis):
                w.writerow([repr(float(s)), repr(float(c)), repr(float(self.values[a, b]))])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        return text

    def meta_dict(self) -> dict:
        return {"plane": self.plane, "fixed_other": list(self.fixed_other), "p": self.p,
                "resolution": [len(self.slope_axis), len(self.intcp_axis)], **self.metadata}

    def write(self, csv_path: Union[str, Path]) -> tuple[Path, Path]:
        csv_path = Path(csv_path)
        self.to_csv(csv_path)
        meta = csv_path.with_suffix(".json")
        meta.write_text(json.dumps(self.meta_dict(), indent=1) + "\n", encoding="utf-8")
        return csv_path, meta


def scan_plane(
    instance: IsingInstance,
    p: int,
    plane: str = "gamma_plane",
    fixed_other: Optional[Sequence[float]] = None,
    slope_range: Sequence[float] = DEFAULT_RANGE,
    intcp_range: Sequence[float] = DEFAULT_RANGE,
    resolution: int = 64,
    *,
    convention: str = "hamiltonian",
    table: Optional[CostTable] = None,
) -> LandscapeGrid:
    """Exact expectation on a ``resolution x resolution`` grid over one plane.

    The other slope/intercept pair stays at ``fixed_other`` (default: the
    reference parameters).
    """
    if plane not in PLANES:
        raise ValueError(f"plane must be one of {PLANES}, got {plane!r}")
    p = check_p(p)
    resolution = check_p(resolution, "resolution")
    convention = check_convention(convention)
    instance = check_instance(instance)
    if table is None:
        table = build_cost_table(instance)
    fixed = tuple(float(v) for v in (fixed_other if fixed_other is not None else default_fixed_other(plane)))
    slopes = np.linspace(slope_range[0], slope_range[1], resolution)
    intcps = np.linspace(intcp_range[0], intcp_range[1], resolution)
    values = np.empty((resolution, resolution))
    for a, s in enumerate(slopes):
        for b, c in enumerate(intcps):
            sched = linear_schedule(_params(plane, float(s), float(c), fixed), p)
            values[a, b] = expectation(evolve(table, sched, convention), table)
    meta = {"instance": instance.label, "convention": convention}
    return LandscapeGrid(plane, slopes, intcps, values, fixed, p, meta)


def best_point(grid: LandscapeGrid) -> tuple[float, float, float]:
    """Minimum cell; ties resolved by smallest (slope, intcp)."""
    if grid.values.size == 0:
        raise ValueError("empty grid")
    vmin = grid.values.min()
    cells = np.argwhere(grid.values == vmin)
    a, b = min(cells, key=lambda ab: (grid.slope_axis[ab[0]], grid.intcp_axis[ab[1]]))
    return float(grid.slope_axis[a]), float(grid.intcp_axis[b]), float(vmin)


def scaling_study(
    instance: IsingInstance,
    p: int,
    Xs: Sequence[float],
    e_ref: float,
    fixed_other: Optional[Sequence[float]] = None,
    slope_range: Sequence[float] = DEFAULT_RANGE,
    intcp_range: Sequence[float] = DEFAULT_RANGE,
    resolution: int = 32,
    *,
    convention: str = "hamiltonian",
    return_grids: bool = False,
):
    """Best gamma-plane point after normalizing couplings by ``|e_ref| / X`` for each X.

    Returns a list of ``(X, best_slope, best_intcp)``, plus the grids when
    ``return_grids`` is set. Grid values are in normalized energy units.
    """
    instance = check_instance(instance)
    rows, grids = [], []
    for X in Xs:
        scaled, factor = normalize_instance(instance, Normalization.fixed_x(X), e_ref)
        grid = scan_plane(scaled, p, "gamma_plane", fixed_other, slope_range, intcp_range, resolution,
                          convention=convention)
        grid.metadata.update({"normalization": f"fixed:{X:g}", "normalization_factor": factor,
                              "e_ref": e_ref, "instance": instance.label})
        slope, intcp, _ = best_point(grid)
        rows.append((float(X), slope, intcp))
        grids.append(grid)
    return (rows, grids) if return_grids else rows
