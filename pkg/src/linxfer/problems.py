"""Ising instances, generators and energy-scale normalization.

All three problem families share one representation: a weighted coupling
graph plus a constant offset, with energy ``offset + sum_ij J_ij s_i s_j``.
MaxCut is encoded with ``J = +1/2`` on every edge and ``offset = -|E|/2``.

Random draws use numpy's PCG64 bit generator (``numpy.random.default_rng``),
so instances are bit-reproducible across platforms for a given seed.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "IsingInstance",
    "Normalization",
    "gen_random_ising",
    "gen_maxcut",
    "gen_sk",
    "energy",
    "scale_instance",
    "normalization_factor",
    "normalize_instance",
    "edge_density",
    "load_instance",
    "save_instance",
]

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class IsingInstance:
    """Two-body Ising cost function on ``n_qubits`` spins.

    Parameters
    ----------
    n_qubits : int
        Number of spins (one qubit each).
    edges : sequence of (i, j, J)
        Couplings with ``0 <= i < j < n_qubits``. Stored as a tuple.
    offset : float
        Constant energy term.
    label : str
        Free-form provenance (model kind, seed).
    """

    n_qubits: int
    edges: tuple[Edge, ...]
    offset: float = 0.0
    label: str = ""

    def __post_init__(self):
        n = self.n_qubits
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {n!r}")
        object.__setattr__(self, "n_qubits", int(n))
        edges = tuple((int(i), int(j), float(J)) for i, j, J in self.edges)
        if not edges:
            raise ValueError("an instance needs at least one edge")
        seen = set()
        for i, j, J in edges:
            if not 0 <= i < j < n:
                raise ValueError(f"edge ({i}, {j}) violates 0 <= i < j < {n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if not math.isfinite(J) or J == 0.0:
                raise ValueError(f"coupling on ({i}, {j}) must be finite and nonzero, got {J}")
            seen.add((i, j))
        if not math.isfinite(self.offset):
            raise ValueError("offset must be finite")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(i, j, J)`` as read-only numpy arrays, in edge order."""
        i = np.array([e[0] for e in self.edges], dtype=np.int64)
        j = np.array([e[1] for e in self.edges], dtype=np.int64)
        J = np.array([e[2] for e in self.edges], dtype=np.float64)
        for a in (i, j, J):
            a.setflags(write=False)
        return i, j, J

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "edges": [[i, j, J] for i, j, J in self.edges],
            "offset": self.offset,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IsingInstance":
        return cls(
            n_qubits=data["n_qubits"],
            edges=tuple(tuple(e) for e in data["edges"]),
            offset=data.get("offset", 0.0),
            label=data.get("label", ""),
        )


def save_instance(instance: IsingInstance, path: Union[str, Path]) -> Path:
    """Write ``instance`` as JSON. Floats use Python's shortest round-trip repr."""
    path = Path(path)
    path.write_text(json.dumps(instance.to_dict(), indent=1) + "\n", encoding="utf-8")
    return path


def load_instance(path: Union[str, Path]) -> IsingInstance:
    return IsingInstance.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _check_graph_args(n_qubits, d_edges):
    if int(n_qubits) != n_qubits or n_qubits < 2:
        raise ValueError(f"n_qubits must be an integer >= 2, got {n_qubits!r}")
    if not (0.0 < d_edges <= 1.0):
        raise ValueError(f"d_edges must lie in (0, 1], got {d_edges!r}")


def _random_edge_set(n_qubits: int, d_edges: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    _check_graph_args(n_qubits, d_edges)
    pairs = [(i, j) for i in range(n_qubits) for j in range(i + 1, n_qubits)]
    # round half up
    m = int(math.floor(d_edges * len(pairs) + 0.5))
    if m == 0:
        raise ValueError(f"d_edges={d_edges} yields zero edges for n_qubits={n_qubits}")
    order = rng.permutation(len(pairs))[:m]
    return sorted(pairs[k] for k in order)


def gen_random_ising(n_qubits: int, d_edges: float, seed: int) -> IsingInstance:
    """Random-graph Ising model with couplings drawn uniformly from {+1, -1}."""
    rng = np.random.default_rng(seed)
    pairs = _random_edge_set(n_qubits, d_edges, rng)
    signs = rng.choice(np.array([1.0, -1.0]), size=len(pairs))
    edges = tuple((i, j, float(J)) for (i, j), J in zip(pairs, signs))
    return IsingInstance(n_qubits, edges, 0.0, f"random_ising(n={n_qubits}, d={d_edges}, seed={seed})")


def gen_maxcut(n_qubits: int, d_edges: float, seed: int = 0) -> IsingInstance:
    """MaxCut on a random graph as a minimization: energy equals minus the cut size."""
    rng = np.random.default_rng(seed)
    pairs = _random_edge_set(n_qubits, d_edges, rng)
    edges = tuple((i, j, 0.5) for i, j in pairs)
    return IsingInstance(
        n_qubits, edges, -0.5 * len(pairs), f"maxcut(n={n_qubits}, d={d_edges}, seed={seed})"
    )


def gen_sk(n_qubits: int, variance: float, seed: int) -> IsingInstance:
    """Sherrington-Kirkpatrick model: complete graph, ``J ~ N(0, variance)``."""
    if int(n_qubits) != n_qubits or n_qubits < 2:
        raise ValueError(f"n_qubits must be an integer >= 2, got {n_qubits!r}")
    if not (variance > 0 and math.isfinite(variance)):
        raise ValueError(f"variance must be positive, got {variance!r}")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n_qubits) for j in range(i + 1, n_qubits)]
    J = rng.normal(0.0, math.sqrt(variance), size=len(pairs))
    edges = tuple((i, j, float(c)) for (i, j), c in zip(pairs, J))
    return IsingInstance(n_qubits, edges, 0.0, f"sk(n={n_qubits}, variance={variance!r}, seed={seed})")


def energy(instance: IsingInstance, config: Sequence[int]) -> float:
    """Energy of a spin configuration (entries in {-1, +1}).

    Sums ``offset`` first and then edges in stored order; the cost table in
    :mod:`linxfer.simulator` uses the same order, so the two agree bit-for-bit.
    """
    s = np.asarray(config)
    if s.shape != (instance.n_qubits,):
        raise ValueError(f"config has shape {s.shape}, expected ({instance.n_qubits},)")
    if not np.all(np.abs(s) == 1):
        raise ValueError("spins must be -1 or +1")
    total = instance.offset
    for i, j, J in instance.edges:
        total += J * float(s[i] * s[j])
    return total


def scale_instance(instance: IsingInstance, factor: float) -> IsingInstance:
    """Multiply every coupling and the offset by ``factor``."""
    if not (math.isfinite(factor) and factor > 0):
        raise ValueError(f"scale factor must be positive and finite, got {factor!r}")
    if factor == 1.0:
        return instance
    edges = tuple((i, j, J * factor) for i, j, J in instance.edges)
    return IsingInstance(instance.n_qubits, edges, instance.offset * factor, instance.label)


def edge_density(instance: IsingInstance) -> float:
    n = instance.n_qubits
    return instance.n_edges / (n * (n - 1) / 2)


@dataclass(frozen=True)
class Normalization:
    """Energy-scale normalization mode.

    ``kind="fixed_x"`` divides couplings by ``|e_ref| / x``;
    ``kind="sqrt_edges"`` divides by ``|e_ref| / sqrt(|E|)``.
    """

    kind: str
    x: float | None = field(default=None)

    def __post_init__(self):
        if self.kind == "fixed_x":
            if self.x is None or not (math.isfinite(self.x) and self.x > 0):
                raise ValueError("fixed_x normalization needs a positive x")
        elif self.kind == "sqrt_edges":
            if self.x is not None:
                raise ValueError("sqrt_edges normalization takes no x")
        else:
            raise ValueError(f"unknown normalization kind {self.kind!r}")

    @classmethod
    def fixed_x(cls, x: float) -> "Normalization":
        return cls("fixed_x", float(x))

    @classmethod
    def sqrt_edges(cls) -> "Normalization":
        return cls("sqrt_edges")

    @classmethod
    def parse(cls, text: str) -> "Normalization":
        """Parse ``"sqrt_edges"`` or ``"fixed:X"``."""
        if text == "sqrt_edges":
            return cls.sqrt_edges()
        if text.startswith("fixed:"):
            return cls.fixed_x(float(text.split(":", 1)[1]))
        raise ValueError(f"cannot parse normalization {text!r}; use 'sqrt_edges' or 'fixed:X'")

    def __str__(self):
        return "sqrt_edges" if self.kind == "sqrt_edges" else f"fixed:{self.x:g}"


def normalization_factor(instance: IsingInstance, mode: Normalization, e_ref: float) -> float:
    """Factor ``f`` such that the normalized instance has couplings ``J / f``.

    ``e_ref`` is a (negative) ground-state energy estimate, typically from
    simulated annealing.
    """
    if not e_ref < 0:
        raise ValueError(f"e_ref must be negative, got {e_ref!r}")
    if instance.n_edges == 0:
        raise ValueError("cannot normalize an instance without edges")
    if mode.kind == "fixed_x":
        return abs(e_ref) / mode.x
    return abs(e_ref) / math.sqrt(instance.n_edges)


def normalize_instance(instance: IsingInstance, mode: Normalization, e_ref: float) -> tuple[IsingInstance, float]:
    """Return ``(instance / f, f)``."""
    f = normalization_factor(instance, mode, e_ref)
    return scale_instance(instance, 1.0 / f), f


def iter_spin_configs(n_qubits: int) -> Iterable[np.ndarray]:
    """All ``2**n`` spin vectors, basis index ``z`` ascending (bit q -> spin 1 - 2 b_q)."""
    for z in range(1 << n_qubits):
        yield 1 - 2 * ((z >> np.arange(n_qubits)) & 1)
