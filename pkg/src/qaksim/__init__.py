"""Simulator and cross-check harness for the QA-KS(phi) three-qubit gate family."""

from .circuit import Circuit, GateApplication, apply_to_state, resource_count, unitary_of
from .gates import GateKind, embed, gate_matrix
from .qaks import build_qaks, kickback_amplitude, truth_table

__all__ = [
    "Circuit",
    "GateApplication",
    "GateKind",
    "apply_to_state",
    "build_qaks",
    "embed",
    "gate_matrix",
    "kickback_amplitude",
    "resource_count",
    "truth_table",
    "unitary_of",
]
