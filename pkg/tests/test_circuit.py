import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qaksim.circuit import (
    CapacityError,
    Circuit,
    GateApplication,
    apply_to_state,
    format_circuit,
    parse_circuit,
    resource_count,
    t_cost,
    unitary_of,
)
from qaksim.gates import CNOT, CP, H, P, T, X
from qaksim.qaks import ccx_circuit, qaks_circuit
from qaksim.tensor import basis_state, haar_random_state, max_abs_deviation_from_identity, unitarity_deviation

from conftest import circuits


class TestConstruction:
    def test_arity_checked(self):
        with pytest.raises(ValueError):
            GateApplication(CNOT, (0,))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Circuit(2).add(H, 2)

    def test_immutable_add(self):
        c = Circuit(1)
        c2 = c.add(H, 0)
        assert len(c) == 0 and len(c2) == 1


class TestUnitary:
    def test_empty(self):
        np.testing.assert_array_equal(unitary_of(Circuit(2)), np.eye(4))

    def test_palindrome(self):
        assert max_abs_deviation_from_identity(unitary_of(Circuit(1).add(H, 0).add(H, 0))) < 1e-15

    def test_qaks_fixes_000_and_100(self):
        u = unitary_of(qaks_circuit(math.pi))
        np.testing.assert_allclose(u[:, 0], basis_state("000"), atol=1e-15)
        np.testing.assert_allclose(u[:, 4], basis_state("100"), atol=1e-15)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            unitary_of(Circuit(7))

    @given(circuits())
    @settings(max_examples=50, deadline=None)
    def test_unitary(self, c):
        assert unitarity_deviation(unitary_of(c)) < 1e-12

    @given(circuits(max_qubits=4, max_gates=6), st.data())
    @settings(max_examples=30, deadline=None)
    def test_composition(self, c1, data):
        c2 = data.draw(circuits(max_qubits=c1.n_qubits, min_qubits=c1.n_qubits, max_gates=6))
        np.testing.assert_allclose(unitary_of(c1 + c2), unitary_of(c2) @ unitary_of(c1), atol=1e-12)


class TestApplyToState:
    def test_empty(self, rng):
        psi = haar_random_state(3, rng)
        np.testing.assert_array_equal(apply_to_state(Circuit(3), psi), psi)

    def test_x(self):
        np.testing.assert_array_equal(apply_to_state(Circuit(1).add(X, 0), basis_state("0")), basis_state("1"))

    def test_qaks_on_010(self):
        out = apply_to_state(qaks_circuit(math.pi), basis_state("010"))
        expected = (basis_state("010") - basis_state("011") + basis_state("110") + basis_state("111")) / 2
        np.testing.assert_allclose(out, expected, atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_to_state(Circuit(2), basis_state("0"))

    @given(circuits(), st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_matches_unitary(self, c, seed):
        psi = haar_random_state(c.n_qubits, np.random.default_rng(seed))
        np.testing.assert_allclose(apply_to_state(c, psi), unitary_of(c) @ psi, atol=1e-10)


class TestResources:
    def test_ccx(self):
        r = resource_count(ccx_circuit())
        assert (r.t_count, r.macro_layers, r.qubit_count) == (7, 1, 3)

    def test_qaks_pi(self):
        r = resource_count(qaks_circuit(math.pi))
        assert (r.t_count, r.macro_layers) == (7, 4)

    def test_qaks_pi2(self):
        assert resource_count(qaks_circuit(math.pi / 2)).t_count == 8

    def test_t_gate(self):
        assert t_cost(T) == 1

    def test_unknown_angle_needs_entry(self):
        with pytest.raises(KeyError):
            t_cost(CP(0.3))
        assert t_cost(CP(0.3), {("CP", 0.3): 5}) == 5

    def test_override(self):
        assert resource_count(ccx_circuit(), {"CCX": 4}).t_count == 4

    def test_primitive_count(self):
        assert resource_count(ccx_circuit()).primitive_gate_count == 15
        assert resource_count(qaks_circuit(math.pi)).primitive_gate_count == 18


class TestTextFormat:
    def test_example_line(self):
        text = format_circuit(Circuit(3).add(CP(math.pi), 2, 0))
        assert text == "qubits 3\nCP 2 0 phi=3.1415926535897931\n"

    @given(circuits())
    @settings(max_examples=50)
    def test_round_trip(self, c):
        text = format_circuit(c)
        back = parse_circuit(text)
        assert back == c
        assert format_circuit(back) == text

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse_circuit("H 0\n")
        with pytest.raises(ValueError):
            parse_circuit("qubits 2\nCNOT 0\n")

    def test_comments_ignored(self):
        c = parse_circuit("# adder\nqubits 1\n\nP 0 phi=0.5\n")
        assert c == Circuit(1).add(P(0.5), 0)
