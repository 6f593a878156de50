"""Gate set and embedding of k-qubit gates into n-qubit registers.

Register convention: basis index ``b = sum_i q_i * 2**(n - 1 - i)``, so ``q0``
is the most significant bit and the three-qubit label ``|q0 q1 q2>`` maps to
index ``4*q0 + 2*q1 + q2``.  Qiskit orders the other way round; nothing here
uses the Qiskit ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_ARITY = {
    "H": 1, "X": 1, "Y": 1, "Z": 1, "S": 1, "T": 1, "P": 1,
    "CNOT": 2, "CP": 2,
    "CCX": 3,
}
_PARAMETRIC = {"P", "CP"}

_S2 = 1 / math.sqrt(2)
I2 = np.eye(2, dtype=np.complex128)
H_MAT = np.array([[_S2, _S2], [_S2, -_S2]], dtype=np.complex128)
X_MAT = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y_MAT = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = {"X": X_MAT, "Y": Y_MAT, "Z": Z_MAT}


@dataclass(frozen=True)
class GateKind:
    """A gate from the fixed set; ``phi`` is set only for ``P`` and ``CP``."""

    name: str
    phi: float | None = None

    def __post_init__(self):
        if self.name not in _ARITY:
            raise ValueError(f"unknown gate {self.name!r}")
        if self.name in _PARAMETRIC:
            if self.phi is None or not math.isfinite(self.phi):
                raise ValueError(f"{self.name} needs a finite phi, got {self.phi!r}")
        elif self.phi is not None:
            raise ValueError(f"{self.name} takes no parameter")

    @property
    def arity(self) -> int:
        return _ARITY[self.name]

    def __str__(self) -> str:
        return self.name if self.phi is None else f"{self.name}({self.phi:.17g})"


H = GateKind("H")
X = GateKind("X")
Y = GateKind("Y")
Z = GateKind("Z")
S = GateKind("S")
T = GateKind("T")
CNOT = GateKind("CNOT")
CCX = GateKind("CCX")


def P(phi: float) -> GateKind:
    return GateKind("P", float(phi))


def CP(phi: float) -> GateKind:
    return GateKind("CP", float(phi))


def gate_matrix(kind: GateKind) -> np.ndarray:
    """Textbook matrix of ``kind`` in its own big-endian wire order."""
    name = kind.name
    if name == "H":
        return H_MAT.copy()
    if name in PAULIS:
        return PAULIS[name].copy()
    if name == "S":
        return np.diag([1, 1j]).astype(np.complex128)
    if name == "T":
        return np.diag([1, np.exp(1j * math.pi / 4)])
    if name == "P":
        return np.diag([1, np.exp(1j * kind.phi)])
    if name == "CP":
        return np.diag([1, 1, 1, np.exp(1j * kind.phi)])
    if name == "CNOT":
        m = np.eye(4, dtype=np.complex128)
        return m[[0, 1, 3, 2]]
    if name == "CCX":
        m = np.eye(8, dtype=np.complex128)
        return m[[0, 1, 2, 3, 4, 5, 7, 6]]
    raise AssertionError(name)


def check_wires(qubits: Sequence[int], n: int, arity: int | None = None) -> tuple[int, ...]:
    qubits = tuple(int(q) for q in qubits)
    if arity is not None and len(qubits) != arity:
        raise ValueError(f"expected {arity} wires, got {len(qubits)}")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated wire in {qubits}")
    if any(q < 0 or q >= n for q in qubits):
        raise ValueError(f"wire out of range in {qubits} for {n} qubits")
    return qubits


def embed_matrix(mat: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Lift a ``2**k`` square matrix on ``qubits`` to the full register.

    The first listed qubit is the most significant wire of ``mat``.  Each
    global basis index is split into its local index on ``qubits`` and the
    bits of the untouched qubits; entries couple only equal untouched bits.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    k = mat.shape[0].bit_length() - 1
    qubits = check_wires(qubits, n, k)
    idx = np.arange(2**n)
    local = np.zeros_like(idx)
    for pos, q in enumerate(qubits):
        local |= ((idx >> (n - 1 - q)) & 1) << (k - 1 - pos)
    mask = 0
    for q in qubits:
        mask |= 1 << (n - 1 - q)
    rest = idx & ~mask
    same_rest = rest[:, None] == rest[None, :]
    return np.where(same_rest, mat[local[:, None], local[None, :]], 0)


def embed(kind: GateKind, qubits: Sequence[int], n: int) -> np.ndarray:
    """``2**n`` unitary applying ``kind`` to ``qubits`` and identity elsewhere."""
    check_wires(qubits, n, kind.arity)
    return embed_matrix(gate_matrix(kind), qubits, n)
