"""Angle schedules and the transforms between their parameterizations."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

__all__ = [
    "LinearParams",
    "Schedule",
    "FourierCoeffs",
    "LinearFit",
    "REFERENCE_PARAMS",
    "ROUGH_GUESS_PARAMS",
    "PRESETS",
    "linear_schedule",
    "interp_extend",
    "fourier_to_schedule",
    "fit_linear",
]


def _finite_vector(values, name) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LinearParams:
    """Slope/intercept pairs of the linear ramp ``angle_l = slope * l/p + intcp``."""

    gamma_slope: float
    gamma_intcp: float
    beta_slope: float
    beta_intcp: float

    def __post_init__(self):
        for name, v in asdict(self).items():
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")

    def to_array(self) -> np.ndarray:
        return np.array([self.gamma_slope, self.gamma_intcp, self.beta_slope, self.beta_intcp])

    @classmethod
    def from_array(cls, x) -> "LinearParams":
        a, b, c, d = (float(v) for v in x)
        return cls(a, b, c, d)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "LinearParams":
        return cls(**{k: float(data[k]) for k in ("gamma_slope", "gamma_intcp", "beta_slope", "beta_intcp")})


# Pre-trained on a 16-qubit, d=0.6 random Ising instance at p=8. Gate-angle convention.
REFERENCE_PARAMS = LinearParams(-0.376, -0.165, -0.881, 0.913)
# Untrained unit ramp used for the size-scaling transfer study. Gate-angle convention.
ROUGH_GUESS_PARAMS = LinearParams(-1.0, -1.0, -1.0, 1.0)
PRESETS = {"reference": REFERENCE_PARAMS, "rough": ROUGH_GUESS_PARAMS}


@dataclass(frozen=True, eq=False)
class Schedule:
    gammas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        g = _finite_vector(self.gammas, "gammas")
        b = _finite_vector(self.betas, "betas")
        if g.shape != b.shape:
            raise ValueError(f"gammas ({g.size}) and betas ({b.size}) differ in length")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "betas", b)

    @property
    def p(self) -> int:
        return int(self.gammas.size)

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return np.array_equal(self.gammas, other.gammas) and np.array_equal(self.betas, other.betas)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.gammas, self.betas])

    @classmethod
    def from_vector(cls, x) -> "Schedule":
        x = np.asarray(x, dtype=np.float64)
        if x.size % 2:
            raise ValueError("schedule vector must have even length")
        p = x.size // 2
        return cls(x[:p], x[p:])

    def to_dict(self) -> dict:
        return {"gammas": self.gammas.tolist(), "betas": self.betas.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        return cls(data["gammas"], data["betas"])


@dataclass(frozen=True, eq=False)
class FourierCoeffs:
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = _finite_vector(self.u, "u")
        v = _finite_vector(self.v, "v")
        if u.shape != v.shape or u.size < 1:
            raise ValueError("u and v must have the same nonzero length")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def k(self) -> int:
        return int(self.u.size)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float

    def to_dict(self) -> dict:
        return asdict(self)


def linear_schedule(lp: LinearParams, p: int) -> Schedule:
    """Angles ``slope * l/p + intcp`` for ``l = 0 .. p-1``."""
    if int(p) != p or p < 1:
        raise ValueError(f"p must be a positive integer, got {p!r}")
    frac = np.arange(p) / p
    return Schedule(lp.gamma_slope * frac + lp.gamma_intcp, lp.beta_slope * frac + lp.beta_intcp)


def interp_extend(params) -> np.ndarray:
    """Extend a depth-(p-1) angle vector to depth p by linear interpolation.

    Pads with zeros at both ends and mixes neighbours with weight
    ``r = (i-1)/p`` for ``i = 1 .. p``; the first entry is kept as is.
    """
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    if params.size < 1:
        raise ValueError("cannot interpolate an empty parameter vector")
    p = params.size + 1
    tmp = np.concatenate([[0.0], params, [0.0]])
    ret = np.empty(p)
    for i in range(1, p + 1):
        r = (i - 1) / p
        ret[i - 1] = r * tmp[i - 1] + (1 - r) * tmp[i]
    return ret


def fourier_to_schedule(fc: FourierCoeffs, p: int) -> Schedule:
    """Sine series for gammas and cosine series for betas over ``p`` layers."""
    if int(p) != p or p < 1:
        raise ValueError(f"p must be a positive integer, got {p!r}")
    i = np.arange(1, p + 1) - 0.5
    j = np.arange(1, fc.k + 1) - 0.5
    arg = np.outer(i, j) * np.pi / p
    return Schedule(np.sin(arg) @ fc.u, np.cos(arg) @ fc.v)


def fit_linear(values, p: int | None = None) -> LinearFit:
    """Least-squares line through ``values`` against abscissa ``l/p``.

    A constant input has zero residual and is reported with ``r_squared = 1``.
    """
    y = np.asarray(values, dtype=np.float64).reshape(-1)
    p = y.size if p is None else p
    if p < 2:
        raise ValueError("a linear fit needs p >= 2")
    if y.size != p:
        raise ValueError(f"expected {p} values, got {y.size}")
    x = np.arange(p) / p
    if np.all(y == y[0]):
        return LinearFit(0.0, float(y[0]), 1.0)
    xc = x - x.mean()
    yc = y - y.mean()
    slope = float(xc @ yc / (xc @ xc))
    intercept = float(y.mean() - slope * x.mean())
    ss_tot = float(yc @ yc)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    if ss_tot == 0.0:
        # spread below double resolution
        return LinearFit(slope, intercept, 1.0)
    r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return LinearFit(slope, intercept, r2)
