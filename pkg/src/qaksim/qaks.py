"""The QA-KS(phi) three-qubit gate family.

The gate is the four-layer circuit

    H(q0) ; CCX(q0, q1 -> q2) ; CP(phi)(q2 -> q0) ; H(q0)

in time order.  Everything else here (truth table, kickback weight,
subspace classification) is computed from that circuit and nothing else.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .circuit import Circuit, unitary_of
from .gates import CCX, CP, H
from .tensor import basis_label, max_abs_deviation_from_identity

AMP_EPS = 1e-10
PHASE_EPS = 1e-9


def qaks_circuit(phi: float, wires: Sequence[int] = (0, 1, 2), n_qubits: int = 3) -> Circuit:
    """QA-KS(phi) on ``wires = (first control, second control, target)``."""
    c0, c1, t = wires
    return (
        Circuit(n_qubits)
        .add(H, c0)
        .add(CCX, c0, c1, t)
        .add(CP(phi), t, c0)
        .add(H, c0)
    )


def ccx_circuit(wires: Sequence[int] = (0, 1, 2), n_qubits: int = 3) -> Circuit:
    return Circuit(n_qubits).add(CCX, *wires)


@dataclass(frozen=True)
class QaksGate:
    phi: float
    circuit: Circuit
    unitary: np.ndarray = field(repr=False)


def build_qaks(phi: float) -> QaksGate:
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phi must be finite, got {phi}")
    circ = qaks_circuit(phi)
    u = unitary_of(circ)
    u.setflags(write=False)
    return QaksGate(phi, circ, u)


def kickback_amplitude(phi: float) -> float:
    return math.sin(phi / 2)


def dynamic_kickback(phi: float) -> float:
    """Magnitude of the q0-flipped component of ``U(phi)|001>``.

    On the q1=0 subspace the only other reachable output is ``|101>``.
    """
    u = build_qaks(phi).unitary
    return float(abs(u[0b101, 0b001]))


class OutputKind(str, Enum):
    DETERMINISTIC = "Deterministic"
    DETERMINISTIC_UP_TO_PHASE = "DeterministicUpToPhase"
    ENTANGLED = "Entangled"


@dataclass(frozen=True)
class InputClassification:
    basis_input: str
    kind: OutputKind
    component_count: int
    output: tuple[complex, ...] = field(repr=False)

    def components(self) -> dict[str, complex]:
        n = len(self.basis_input)
        return {basis_label(i, n): a for i, a in enumerate(self.output) if abs(a) > AMP_EPS}

    def describe(self) -> str:
        terms = []
        for label, a in self.components().items():
            terms.append(f"({_fmt_amp(a)})|{label}>")
        return " + ".join(terms)


def _fmt_amp(a: complex) -> str:
    re = 0.0 if abs(a.real) < AMP_EPS else a.real
    im = 0.0 if abs(a.imag) < AMP_EPS else a.imag
    if im == 0.0:
        return f"{re:.6g}"
    return f"{re:.6g}{im:+.6g}j"


def classify_output(basis_input: str, output) -> InputClassification:
    """Count computational-basis components; a single one is deterministic.

    The phase test is on the surviving amplitude itself, so a bit-flipped
    output with amplitude +1 still counts as plain ``Deterministic``.
    """
    out = tuple(complex(a) for a in np.asarray(output))
    mags = [abs(a) for a in out]
    count = sum(m > AMP_EPS for m in mags)
    if count == 1:
        a = out[int(np.argmax(mags))]
        kind = (
            OutputKind.DETERMINISTIC
            if abs(cmath.phase(a)) <= PHASE_EPS
            else OutputKind.DETERMINISTIC_UP_TO_PHASE
        )
    else:
        kind = OutputKind.ENTANGLED
    return InputClassification(basis_input, kind, count, out)


def classify_input(phi: float, basis_input: str) -> InputClassification:
    u = build_qaks(phi).unitary
    return classify_output(basis_input, u[:, int(basis_input, 2)])


def truth_table(phi: float) -> list[InputClassification]:
    u = build_qaks(phi).unitary
    return [classify_output(basis_label(i, 3), u[:, i]) for i in range(8)]


def is_self_inverse(u: np.ndarray, tol: float = 1e-12) -> bool:
    return max_abs_deviation_from_identity(u @ u) < tol
