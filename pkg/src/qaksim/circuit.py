"""Circuit IR, exact unitary synthesis, statevector execution, resource counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gates import GateKind, check_wires, embed, gate_matrix
from .tensor import DimensionError, check_statevector

MAX_QUBITS = 6


class CapacityError(ValueError):
    """Raised for registers wider than ``MAX_QUBITS``."""


@dataclass(frozen=True)
class GateApplication:
    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != self.kind.arity:
            raise ValueError(f"{self.kind} takes {self.kind.arity} wires, got {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated wire in {qubits}")
        object.__setattr__(self, "qubits", qubits)


@dataclass(frozen=True)
class Circuit:
    """Gates in time order; ``ops[0]`` acts first."""

    n_qubits: int
    ops: tuple[GateApplication, ...] = field(default=())

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        ops = tuple(self.ops)
        for op in ops:
            check_wires(op.qubits, self.n_qubits)
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Iterable[tuple[GateKind, Sequence[int]]]) -> "Circuit":
        return cls(n_qubits, tuple(GateApplication(k, tuple(q)) for k, q in ops))

    def add(self, kind: GateKind, *qubits: int) -> "Circuit":
        return Circuit(self.n_qubits, self.ops + (GateApplication(kind, qubits),))

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise DimensionError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.ops + other.ops)

    def __len__(self) -> int:
        return len(self.ops)


def _check_capacity(c: Circuit):
    if c.n_qubits > MAX_QUBITS:
        raise CapacityError(f"{c.n_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")


def unitary_of(c: Circuit) -> np.ndarray:
    _check_capacity(c)
    u = np.eye(2**c.n_qubits, dtype=np.complex128)
    for op in c.ops:
        u = embed(op.kind, op.qubits, c.n_qubits) @ u
    return u


def apply_local(tensor: np.ndarray, mat: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Contract a ``2**k`` matrix into the given axes of a rank-m qubit tensor."""
    k = len(axes)
    g = mat.reshape((2,) * (2 * k))
    out = np.tensordot(g, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def apply_to_state(c: Circuit, psi) -> np.ndarray:
    _check_capacity(c)
    psi = check_statevector(psi)
    if psi.size != 2**c.n_qubits:
        raise DimensionError(f"state of size {psi.size} for {c.n_qubits}-qubit circuit")
    t = psi.reshape((2,) * c.n_qubits)
    for op in c.ops:
        t = apply_local(t, gate_matrix(op.kind), op.qubits)
    return t.reshape(-1)


# -- resources --------------------------------------------------------------

# Fixed-angle phase gates that need no explicit table entry.
_KNOWN_ANGLES = {
    "CP": {0.0: 0, math.pi / 2: 1, math.pi: 0},
    "P": {0.0: 0, math.pi / 2: 0, math.pi: 0},
}
DEFAULT_T_COST: dict = {"CCX": 7, "T": 1, "H": 0, "X": 0, "Y": 0, "Z": 0, "S": 0, "CNOT": 0}
# Textbook Toffoli network: 6 CNOT + 7 T/T-dagger + 2 H.
DEFAULT_PRIMITIVE_SIZE: dict = {"CCX": 15}


@dataclass(frozen=True)
class ResourceReport:
    t_count: int
    macro_layers: int
    primitive_gate_count: int
    qubit_count: int


def t_cost(kind: GateKind, accounting: Mapping | None = None) -> int:
    """T-cost of one gate.

    ``accounting`` may key on the gate name or on ``(name, phi)``; explicit
    entries override the defaults.
    """
    table = dict(DEFAULT_T_COST)
    if accounting:
        table.update(accounting)
    if kind.phi is not None:
        for key, cost in table.items():
            if isinstance(key, tuple) and key[0] == kind.name and math.isclose(key[1], kind.phi, abs_tol=1e-12):
                return int(cost)
        for angle, cost in _KNOWN_ANGLES[kind.name].items():
            if math.isclose(angle, kind.phi, abs_tol=1e-12):
                return cost
        raise KeyError(f"no T-cost for {kind}; pass an explicit accounting entry ({kind.name!r}, phi)")
    if kind.name not in table:
        raise KeyError(f"no T-cost for {kind}")
    return int(table[kind.name])


def resource_count(c: Circuit, accounting: Mapping | None = None) -> ResourceReport:
    t = sum(t_cost(op.kind, accounting) for op in c.ops)
    prim = sum(DEFAULT_PRIMITIVE_SIZE.get(op.kind.name, 1) for op in c.ops)
    return ResourceReport(t_count=t, macro_layers=len(c.ops), primitive_gate_count=prim, qubit_count=c.n_qubits)


# -- text format ------------------------------------------------------------


def format_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits}"]
    for op in c.ops:
        parts = [op.kind.name, *map(str, op.qubits)]
        if op.kind.phi is not None:
            parts.append(f"phi={op.kind.phi:.17g}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("qubits "):
        raise ValueError("circuit text must start with 'qubits N'")
    n = int(lines[0].split()[1])
    ops = []
    for lineno, line in enumerate(lines[1:], start=2):
        name, *rest = line.split()
        phi = None
        wires = []
        for tok in rest:
            if tok.startswith("phi="):
                phi = float(tok[4:])
            else:
                wires.append(int(tok))
        try:
            ops.append(GateApplication(GateKind(name, phi), tuple(wires)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return Circuit(n, tuple(ops))
