"""Depolarizing noise, density-matrix execution and average gate fidelity.

Noise placement: after every gate application, each qubit the gate touches
goes through an independent single-qubit depolarizing channel of rate ``p``.
CCX counts as one gate touching three qubits.  Absolute fidelities depend on
this choice.

Random input states are seeded per ``(seed, n_qubits, p, state_index)``, so
every circuit of the same width sees the same inputs at a given ``p`` and
results do not depend on evaluation order.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .circuit import Circuit, apply_local, apply_to_state, _check_capacity
from .gates import PAULIS, gate_matrix
from .tensor import DimensionError, _as_matrix, density, haar_random_state, num_qubits, state_fidelity


@dataclass(frozen=True)
class NoiseModel:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"depolarizing rate must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class FidelitySample:
    circuit_label: str
    p: float
    mean_fidelity: float
    n_states: int
    seed: int


def _conjugate(t: np.ndarray, mat: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """``M rho M^dagger`` on a rank-2n density tensor."""
    t = apply_local(t, mat, list(qubits))
    return apply_local(t, mat.conj(), [q + n for q in qubits])


def _depolarize_tensor(t: np.ndarray, qubit: int, p: float, n: int) -> np.ndarray:
    if p == 0.0:
        return t
    out = (1.0 - p) * t
    for pauli in PAULIS.values():
        out = out + (p / 3.0) * _conjugate(t, pauli, [qubit], n)
    return out


def depolarize_qubit(rho, qubit: int, p: float) -> np.ndarray:
    """``(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`` on one qubit."""
    NoiseModel(p)
    rho = _as_matrix(rho, "rho")
    n = num_qubits(rho.shape[0])
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    t = rho.reshape((2,) * (2 * n))
    return _depolarize_tensor(t, qubit, p, n).reshape(rho.shape)


def run_noisy(c: Circuit, rho0, m: NoiseModel) -> np.ndarray:
    _check_capacity(c)
    rho0 = _as_matrix(rho0, "rho0")
    n = c.n_qubits
    if rho0.shape[0] != 2**n:
        raise DimensionError(f"rho of shape {rho0.shape} for {n}-qubit circuit")
    t = rho0.reshape((2,) * (2 * n))
    for op in c.ops:
        t = _conjugate(t, gate_matrix(op.kind), op.qubits, n)
        for q in op.qubits:
            t = _depolarize_tensor(t, q, m.p, n)
    return t.reshape(rho0.shape)


def state_rng(seed: int, n_qubits: int, p: float, index: int) -> np.random.Generator:
    """Independent generator for one sampled input state."""
    (p_bits,) = struct.unpack("<Q", struct.pack("<d", float(p)))
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(n_qubits), p_bits, int(index)))
    return np.random.default_rng(ss)


def avg_gate_fidelity(
    c: Circuit, m: NoiseModel, n_states: int, seed: int, label: str = ""
) -> FidelitySample:
    if n_states < 1:
        raise ValueError("n_states must be at least 1")
    total = 0.0
    for i in range(n_states):
        psi = haar_random_state(c.n_qubits, state_rng(seed, c.n_qubits, m.p, i))
        ideal = apply_to_state(c, psi)
        total += state_fidelity(ideal, run_noisy(c, density(psi), m))
    return FidelitySample(label, float(m.p), total / n_states, n_states, int(seed))


def default_p_grid() -> list[float]:
    return [float(p) for p in np.logspace(-4, -1, 10)]


def sweep(
    circuits: Iterable[tuple[str, Circuit]],
    p_grid: Sequence[float] | None = None,
    n_states: int = 20,
    seed: int = 42,
) -> list[FidelitySample]:
    grid = default_p_grid() if p_grid is None else list(p_grid)
    if not grid:
        raise ValueError("p_grid is empty")
    return [
        avg_gate_fidelity(c, NoiseModel(p), n_states, seed, label)
        for label, c in circuits
        for p in grid
    ]


def find_sample(samples: Iterable[FidelitySample], label: str, p: float) -> FidelitySample:
    for s in samples:
        if s.circuit_label == label and np.isclose(s.p, p, rtol=1e-9, atol=0):
            return s
    raise KeyError(f"no sample for {label!r} at p={p}")


CSV_HEADER = "circuit,p,mean_fidelity,n_states,seed"


def samples_to_csv(samples: Sequence[FidelitySample], seed: int) -> str:
    lines = [f"# seed={seed}", CSV_HEADER]
    for s in samples:
        lines.append(f"{s.circuit_label},{s.p:.10g},{s.mean_fidelity:.10g},{s.n_states},{s.seed}")
    return "\n".join(lines) + "\n"
