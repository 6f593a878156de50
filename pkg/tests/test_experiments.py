import json
import math

import numpy as np
import pytest

from qaksim.circuit import Circuit, apply_to_state, format_circuit, parse_circuit, unitary_of
from qaksim.experiments import (
    HIGHLIGHT_INPUTS,
    VARIANTS,
    adder_benchmark,
    adder_circuit,
    chain_circuit,
    chain_experiment,
    error_propagation,
    fidelity_sweep_experiment,
)
from qaksim.gates import CCX, CNOT
from qaksim.noise import find_sample
from qaksim.tensor import basis_state, unitarity_deviation

SHORT_GRID = [1e-4, 1e-2, 1e-1]


@pytest.fixture(scope="module")
def chain():
    return chain_experiment(math.pi, SHORT_GRID, 10, 42)


@pytest.fixture(scope="module")
def propagation():
    return error_propagation()


class TestChain:
    def test_unitaries(self):
        for v in ("ccx", "qaks_pi"):
            u = unitary_of(chain_circuit(v))
            assert u.shape == (32, 32)
            assert unitarity_deviation(u) < 1e-12

    def test_ccx_chain_is_permutation(self):
        u = unitary_of(chain_circuit("ccx"))
        for i in range(32):
            col = np.abs(u[:, i])
            assert np.count_nonzero(col > 1e-12) == 1

    def test_formula_values(self, chain):
        # dense product of the two four-layer gates
        assert chain.max_abs_diff == pytest.approx(1.5, abs=1e-9)
        assert chain.frobenius_diff == pytest.approx(math.sqrt(44), abs=1e-9)

    def test_hand_chased_input(self, chain):
        # |10001>: G1 leaves q0 = 1 (q2 = 0), G2 flips q0 via the q4 kickback -> |00001>
        out = apply_to_state(chain_circuit("qaks_pi"), basis_state("10001"))
        np.testing.assert_allclose(np.abs(out), basis_state("00001"), atol=1e-12)
        assert chain.per_input_fidelity["10001"] < 1e-12

    def test_subspace_divergence(self, chain):
        f = chain.per_input_fidelity
        assert len(f) == 32
        assert min(f.values()) < 1e-12 and max(f.values()) > 1 - 1e-12
        assert f["00000"] == pytest.approx(1, abs=1e-12)
        assert f["00001"] < 1e-12

    def test_little_endian_labels_match_published_pattern(self, chain):
        # published labels read as q4..q0 strings
        f = chain.per_input_fidelity
        for label, claim in (("10000", 0.0), ("10001", 0.0), ("00000", 1.0), ("00001", 1.0)):
            assert f[label[::-1]] == pytest.approx(claim, abs=1e-12)

    def test_noisy_curves(self, chain):
        assert len(chain.noisy_chain_fidelities) == 2 * len(SHORT_GRID)
        for s in chain.noisy_chain_fidelities:
            assert 0 <= s.mean_fidelity <= 1 + 1e-9

    def test_json(self, chain):
        d = chain.to_json()
        assert set(d["highlight_inputs"]) == set(HIGHLIGHT_INPUTS)
        json.dumps(d)


class TestPropagation:
    def test_row_count(self, propagation):
        assert len(propagation.rows) == 3 * 4 * 3

    def test_z_invisible(self, propagation):
        for r in propagation.select(pauli="Z"):
            assert r.weight_q0 < 1e-12 and r.weight_q1 < 1e-12

    def test_bit_errors_never_reach_q1(self, propagation):
        for pauli in ("X", "Y"):
            for r in propagation.select(pauli=pauli):
                assert r.weight_q1 < 1e-12

    def test_q0_indicator(self, propagation):
        (row,) = propagation.select("qaks_pi", "X", "000")
        assert row.weight_q0 == pytest.approx(1.0, abs=1e-12)
        for r in propagation.select("qaks_pi2", "X"):
            assert r.weight_q0 == pytest.approx(math.sin(math.pi / 4), abs=1e-12)
        for r in propagation.select("ccx"):
            assert r.weight_q0 < 1e-12

    def test_weights_bounded(self, propagation):
        for r in propagation.rows:
            assert 0 <= r.weight_q0 <= 1 + 1e-12 and 0 <= r.weight_q1 <= 1 + 1e-12


class TestAdder:
    def test_netlist(self):
        c = adder_circuit("ccx")
        expected = (
            Circuit(6).add(CCX, 0, 1, 4).add(CNOT, 0, 1).add(CCX, 2, 3, 5).add(CNOT, 2, 3).add(CNOT, 4, 3)
        )
        assert c == expected
        assert parse_circuit(format_circuit(c)) == c

    def test_variant_width(self):
        for v in VARIANTS:
            c = adder_circuit(v)
            assert c.n_qubits == 6
            assert unitarity_deviation(unitary_of(c)) < 1e-12
        assert len(adder_circuit("qaks_pi")) == 11

    def test_ccx_adder_classical(self):
        u = unitary_of(adder_circuit("ccx"))
        for i in range(64):
            a0, b0, a1, b1, c0, c1 = (int(x) for x in format(i, "06b"))
            c0 ^= a0 & b0
            b0 ^= a0
            c1 ^= a1 & b1
            b1 ^= a1
            b1 ^= c0
            j = int(f"{a0}{b0}{a1}{b1}{c0}{c1}", 2)
            assert abs(u[j, i]) == pytest.approx(1)

    def test_benchmark(self):
        rep = adder_benchmark(SHORT_GRID, 10, 42)
        assert set(rep.curves) == set(VARIANTS)
        for v, curve in rep.curves.items():
            assert find_sample(curve, f"adder_{v}", 1e-4).mean_fidelity >= 0.99
        for gap in rep.gap_at_1e_2.values():
            assert 0.0 <= gap <= 0.1
        assert rep.pi2_vs_pi_max_diff >= 0
        json.dumps(rep.to_json())


def test_fidelity_sweep_rows():
    assert len(fidelity_sweep_experiment(2, 1)) == 30
