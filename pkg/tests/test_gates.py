import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qaksim.gates import (
    CCX, CNOT, CP, H, H_MAT, I2, P, X, X_MAT, Z_MAT, GateKind, embed, gate_matrix,
)
from qaksim.tensor import basis_state, kron, unitarity_deviation

ALL_KINDS = [H, X, GateKind("Y"), GateKind("Z"), GateKind("S"), GateKind("T"), P(0.3), CNOT, CP(1.1), CCX]


def bits(i, n):
    return [int(c) for c in format(i, f"0{n}b")]


def from_bits(b):
    return int("".join(map(str, b)), 2)


class TestGateMatrix:
    def test_cz(self):
        np.testing.assert_allclose(gate_matrix(CP(math.pi)), np.diag([1, 1, 1, -1]), atol=1e-15)

    def test_controlled_s(self):
        np.testing.assert_allclose(gate_matrix(CP(math.pi / 2)), np.diag([1, 1, 1, 1j]), atol=1e-15)

    def test_ccx_self_inverse(self):
        m = gate_matrix(CCX)
        np.testing.assert_array_equal(m @ m, np.eye(8))

    def test_phase_stored_exactly(self):
        assert CP(0.1234).phi == 0.1234

    def test_bad_kinds(self):
        with pytest.raises(ValueError):
            GateKind("CP")
        with pytest.raises(ValueError):
            GateKind("H", 1.0)
        with pytest.raises(ValueError):
            GateKind("SWAP")
        with pytest.raises(ValueError):
            CP(float("nan"))

    @pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
    def test_unitary(self, kind):
        assert unitarity_deviation(gate_matrix(kind)) < 1e-13

    def test_ccx_classical(self):
        m = gate_matrix(CCX)
        for i in range(8):
            c0, c1, t = bits(i, 3)
            np.testing.assert_array_equal(m @ basis_state(i, 3), basis_state(from_bits([c0, c1, t ^ (c0 & c1)]), 3))


class TestEmbed:
    def test_single_qubit_trivial(self):
        np.testing.assert_array_equal(embed(H, [0], 1), H_MAT)

    def test_big_endian(self):
        np.testing.assert_array_equal(embed(X, [1], 2), kron(I2, X_MAT))
        np.testing.assert_array_equal(embed(X, [0], 2), kron(X_MAT, I2))

    def test_reversed_cnot_permutation(self):
        u = embed(CNOT, [2, 0], 3)
        np.testing.assert_array_equal(u @ basis_state("001"), basis_state("101"))
        for i in range(8):
            q = bits(i, 3)
            q[0] ^= q[2]
            np.testing.assert_array_equal(u @ basis_state(i, 3), basis_state(from_bits(q), 3))

    def test_errors(self):
        with pytest.raises(ValueError):
            embed(CNOT, [1, 1], 3)
        with pytest.raises(ValueError):
            embed(H, [3], 3)
        with pytest.raises(ValueError):
            embed(CCX, [0, 1], 3)

    @pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
    def test_every_embedding_unitary(self, kind):
        for wires in itertools.permutations(range(4), kind.arity):
            assert unitarity_deviation(embed(kind, wires, 4)) < 1e-13

    @given(st.floats(-10, 10), st.permutations(range(4)))
    @settings(max_examples=40)
    def test_controlled_phase_symmetric(self, phi, perm):
        a, b = perm[:2]
        np.testing.assert_allclose(embed(CP(phi), [a, b], 4), embed(CP(phi), [b, a], 4), atol=1e-15)

    def test_ccx_classical_in_register(self):
        u = embed(CCX, [3, 0, 2], 4)
        for i in range(16):
            q = bits(i, 4)
            q[2] ^= q[3] & q[0]
            np.testing.assert_array_equal(u @ basis_state(i, 4), basis_state(from_bits(q), 4))


class TestConjugation:
    def test_hzh_is_x(self):
        h = embed(H, [0], 1)
        np.testing.assert_allclose(h @ Z_MAT @ h, X_MAT, atol=1e-15)

    def test_hxh_is_z(self):
        np.testing.assert_allclose(H_MAT @ X_MAT @ H_MAT, Z_MAT, atol=1e-15)
