"""Reproducible experiments: fidelity sweep, kickback chain, Pauli propagation, adder."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, format_circuit, unitary_of
from .gates import CNOT, PAULIS, embed_matrix
from .noise import FidelitySample, default_p_grid, find_sample, sweep
from .qaks import ccx_circuit, qaks_circuit
from .tensor import basis_label, basis_state, density, frobenius_norm, partial_trace, trace_distance

# variant label -> phi (None means plain CCX)
VARIANTS: dict[str, float | None] = {
    "ccx": None,
    "qaks_pi2": math.pi / 2,
    "qaks_pi": math.pi,
}


def toffoli_site(variant: str, wires: Sequence[int], n_qubits: int) -> Circuit:
    """CCX or a QA-KS gate on ``wires = (control, control, target)``."""
    phi = VARIANTS[variant]
    if phi is None:
        return ccx_circuit(wires, n_qubits)
    return qaks_circuit(phi, wires, n_qubits)


def single_gate_circuits() -> list[tuple[str, Circuit]]:
    return [(v, toffoli_site(v, (0, 1, 2), 3)) for v in VARIANTS]


# -- fidelity sweep ----------------------------------------------------------


def fidelity_sweep_experiment(
    n_states: int = 20, seed: int = 42, p_grid: Sequence[float] | None = None
) -> list[FidelitySample]:
    return sweep(single_gate_circuits(), p_grid, n_states, seed)


# -- coherent kickback chain ---------------------------------------------------

CHAIN_WIRES = ((0, 1, 2), (0, 3, 4))
HIGHLIGHT_INPUTS = ("00000", "00001", "10000", "10001")


def chain_circuit(variant: str) -> Circuit:
    g1, g2 = CHAIN_WIRES
    return toffoli_site(variant, g1, 5) + toffoli_site(variant, g2, 5)


@dataclass
class ChainReport:
    phi: float
    max_abs_diff: float
    frobenius_diff: float
    per_input_fidelity: dict[str, float]
    noisy_chain_fidelities: list[FidelitySample] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["highlight_inputs"] = {k: self.per_input_fidelity[k] for k in HIGHLIGHT_INPUTS}
        return d


def chain_experiment(
    phi: float = math.pi,
    noise_grid: Sequence[float] | None = None,
    n_states: int = 20,
    seed: int = 42,
) -> ChainReport:
    g1, g2 = CHAIN_WIRES
    qaks = qaks_circuit(phi, g1, 5) + qaks_circuit(phi, g2, 5)
    ccx = chain_circuit("ccx")
    u_q = unitary_of(qaks)
    u_c = unitary_of(ccx)
    diff = u_c - u_q
    per_input = {}
    for i in range(32):
        overlap = np.vdot(u_c[:, i], u_q[:, i])
        per_input[basis_label(i, 5)] = float(abs(overlap) ** 2)
    grid = default_p_grid() if noise_grid is None else list(noise_grid)
    noisy = sweep([("chain_ccx", ccx), ("chain_qaks", qaks)], grid, n_states, seed)
    return ChainReport(
        phi=float(phi),
        max_abs_diff=float(np.max(np.abs(diff))),
        frobenius_diff=frobenius_norm(diff),
        per_input_fidelity=per_input,
        noisy_chain_fidelities=noisy,
    )


# -- Pauli error propagation ---------------------------------------------------

Q1_ZERO_INPUTS = ("000", "001", "100", "101")


@dataclass(frozen=True)
class PropagationRow:
    gate_label: str
    input_label: str
    pauli: str
    weight_q0: float
    weight_q1: float


@dataclass
class PropagationReport:
    rows: list[PropagationRow]

    def to_json(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows]}

    def select(self, gate_label=None, pauli=None, input_label=None) -> list[PropagationRow]:
        return [
            r
            for r in self.rows
            if (gate_label is None or r.gate_label == gate_label)
            and (pauli is None or r.pauli == pauli)
            and (input_label is None or r.input_label == input_label)
        ]


def error_propagation(variants: Sequence[str] = tuple(VARIANTS)) -> PropagationReport:
    """Inject X/Y/Z on the target before the gate and compare control marginals."""
    rows = []
    for v in variants:
        u = unitary_of(toffoli_site(v, (0, 1, 2), 3))
        for label in Q1_ZERO_INPUTS:
            b = basis_state(label)
            clean = density(u @ b)
            for name, pauli in PAULIS.items():
                err = density(u @ embed_matrix(pauli, [2], 3) @ b)
                w0 = trace_distance(partial_trace(clean, [0]), partial_trace(err, [0]))
                w1 = trace_distance(partial_trace(clean, [1]), partial_trace(err, [1]))
                rows.append(PropagationRow(v, label, name, w0, w1))
    return PropagationReport(rows)


# -- ripple-carry adder ---------------------------------------------------------

# register: a0, b0, a1, b1, c0, c1
ADDER_WIRES = {"a0": 0, "b0": 1, "a1": 2, "b1": 3, "c0": 4, "c1": 5}
ADDER_CARRY_SITES = ((0, 1, 4), (2, 3, 5))


def adder_circuit(variant: str = "ccx") -> Circuit:
    """Two carry sites plus three CNOTs; each carry site is CCX or QA-KS."""
    s0, s1 = ADDER_CARRY_SITES
    return (
        toffoli_site(variant, s0, 6).add(CNOT, 0, 1)
        + toffoli_site(variant, s1, 6).add(CNOT, 2, 3).add(CNOT, 4, 3)
    )


@dataclass
class AdderReport:
    curves: dict[str, list[FidelitySample]]
    gap_at_1e_2: dict[str, float]
    pi2_vs_pi_max_diff: float
    netlist: dict[str, str]

    def to_json(self) -> dict:
        return {
            "curves": {k: [asdict(s) for s in v] for k, v in self.curves.items()},
            "gap_at_1e-2": self.gap_at_1e_2,
            "pi2_vs_pi_max_diff": self.pi2_vs_pi_max_diff,
            "netlist": self.netlist,
        }


def adder_benchmark(
    noise_grid: Sequence[float] | None = None, n_states: int = 20, seed: int = 42
) -> AdderReport:
    grid = default_p_grid() if noise_grid is None else list(noise_grid)
    circuits = {v: adder_circuit(v) for v in VARIANTS}
    curves = {v: sweep([(f"adder_{v}", c)], grid, n_states, seed) for v, c in circuits.items()}
    gaps = {}
    if any(np.isclose(p, 1e-2, rtol=1e-9) for p in grid):
        base = find_sample(curves["ccx"], "adder_ccx", 1e-2).mean_fidelity
        for v in ("qaks_pi2", "qaks_pi"):
            gaps[v] = base - find_sample(curves[v], f"adder_{v}", 1e-2).mean_fidelity
    pi2 = [s.mean_fidelity for s in curves["qaks_pi2"]]
    pi = [s.mean_fidelity for s in curves["qaks_pi"]]
    return AdderReport(
        curves=curves,
        gap_at_1e_2=gaps,
        pi2_vs_pi_max_diff=float(np.max(np.abs(np.subtract(pi2, pi)))),
        netlist={v: format_circuit(c) for v, c in circuits.items()},
    )
