"""Exact state-vector QAOA for diagonal cost Hamiltonians.

Conventions
-----------
* Basis index ``z`` holds qubit ``q`` in bit ``q``; bit ``b`` maps to spin
  ``1 - 2b``. Bitstrings are written qubit 0 first.
* Each layer applies the cost phase ``exp(-i gamma_l C)`` and then the mixer
  ``exp(-i beta_l X)`` on every qubit. ``exp(-i beta X)`` is an RX gate with
  angle ``2 beta``.
* ``convention="gate"`` reads angles as rotation-gate angles instead, i.e.
  ``exp(-i gamma C / 2)`` and ``exp(-i beta X / 2)``. Published parameter
  sets produced with gate-based simulators (Qulacs, Qiskit) use this reading.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from . import _kernels
from .problems import IsingInstance
from .schedules import Schedule

__all__ = [
    "CONVENTIONS",
    "CostTable",
    "StateVector",
    "SampleSet",
    "build_cost_table",
    "evolve",
    "expectation",
    "sample",
    "qaoa_expectation",
    "bitstring",
    "MAX_QUBITS",
]

MAX_QUBITS = 24
CONVENTIONS = ("hamiltonian", "gate")


def bitstring(z: int, n_qubits: int) -> str:
    """Qubit 0 leftmost."""
    return "".join("1" if (z >> q) & 1 else "0" for q in range(n_qubits))


def _angle_scale(convention: str) -> float:
    if convention == "hamiltonian":
        return 1.0
    if convention == "gate":
        return 0.5
    raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


@dataclass(frozen=True, eq=False)
class CostTable:
    """Diagonal of the cost Hamiltonian over all basis states."""

    values: np.ndarray
    n_qubits: int
    offset: float = 0.0

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != (1 << self.n_qubits,):
            raise ValueError(f"cost table must have length 2**{self.n_qubits}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        levels, index = np.unique(values, return_inverse=True)
        object.__setattr__(self, "_levels", levels)
        object.__setattr__(self, "_level_index", index.astype(np.int64).ravel())

    @property
    def min(self) -> float:
        return float(self.values.min())


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities))

    @classmethod
    def uniform(cls, n_qubits: int) -> "StateVector":
        return cls(np.full(1 << n_qubits, 2.0 ** (-n_qubits / 2), dtype=np.complex128))

    @classmethod
    def basis(cls, z: int, n_qubits: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[z] = 1.0
        return cls(amps)


@dataclass(frozen=True)
class SampleSet:
    """Measurement outcomes; ``records`` holds ``(bitstring, count, energy)``."""

    shots: int
    records: tuple[tuple[str, int, float], ...]
    mean_energy: float
    best_energy: float

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bitstring", "count", "energy"])
        for b, c, e in self.records:
            writer.writerow([b, c, repr(float(e))])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        return text

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> "SampleSet":
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [(r["bitstring"], int(r["count"]), float(r["energy"])) for r in csv.DictReader(fh)]
        return cls._from_records(rows)

    @classmethod
    def _from_records(cls, rows) -> "SampleSet":
        shots = sum(c for _, c, _ in rows)
        mean = sum(c * e for _, c, e in rows) / shots
        return cls(shots, tuple(rows), mean, min(e for _, _, e in rows))

    def energies(self) -> np.ndarray:
        """One energy per shot (expanded multiplicities)."""
        return np.repeat([e for _, _, e in self.records], [c for _, c, _ in self.records])


def build_cost_table(instance: IsingInstance, max_qubits: int = MAX_QUBITS) -> CostTable:
    """Energies of all ``2**n`` basis states."""
    n = instance.n_qubits
    if n > max_qubits:
        raise ValueError(f"n_qubits={n} exceeds the simulator cap of {max_qubits}")
    i, j, J = instance.edge_arrays
    values = _kernels.cost_table(n, i, j, J, instance.offset)
    return CostTable(values, n, instance.offset)


def evolve(table: CostTable, schedule: Schedule, convention: str = "hamiltonian") -> StateVector:
    """Apply the QAOA layers of ``schedule`` to the uniform superposition."""
    scale = _angle_scale(convention)
    psi = StateVector.uniform(table.n_qubits).amplitudes
    for gamma, beta in zip(schedule.gammas, schedule.betas):
        _kernels.apply_phase(psi, table._levels, table._level_index, scale * float(gamma))
        _kernels.apply_mixer(psi, table.n_qubits, scale * float(beta))
    return StateVector(psi)


def expectation(state: StateVector, table: CostTable) -> float:
    if state.amplitudes.shape != table.values.shape:
        raise ValueError("state and cost table dimensions differ")
    return float(np.dot(state.probabilities, table.values))


def qaoa_expectation(table: CostTable, schedule: Schedule, convention: str = "hamiltonian") -> float:
    """Shorthand for ``expectation(evolve(table, schedule), table)``."""
    return expectation(evolve(table, schedule, convention), table)


def sample(state: StateVector, shots: int, seed: int, table: CostTable) -> SampleSet:
    """Draw ``shots`` basis states from the Born distribution of ``state``."""
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = state.probabilities
    total = probs.sum()
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"state is not normalized (norm {total:.9f})")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs / total)
    nz = np.flatnonzero(counts)
    n = table.n_qubits
    rows = [(bitstring(int(z), n), int(counts[z]), float(table.values[z])) for z in nz]
    return SampleSet._from_records(rows)
