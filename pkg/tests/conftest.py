import math

import numpy as np
import pytest
from hypothesis import strategies as st

from qaksim.circuit import Circuit
from qaksim.gates import CCX, CNOT, CP, H, P, S, T, X, Y, Z

ONE_QUBIT = [H, X, Y, Z, S, T]


@st.composite
def circuits(draw, max_qubits=5, max_gates=10, min_qubits=1):
    n = draw(st.integers(min_qubits, max_qubits))
    c = Circuit(n)
    for _ in range(draw(st.integers(0, max_gates))):
        arity = draw(st.sampled_from([a for a in (1, 2, 3) if a <= n]))
        wires = draw(st.permutations(range(n)))[:arity]
        if arity == 1:
            kind = draw(st.sampled_from(ONE_QUBIT + ["P"]))
            if kind == "P":
                kind = P(draw(st.floats(-2 * math.pi, 2 * math.pi)))
        elif arity == 2:
            kind = draw(st.sampled_from([CNOT, "CP"]))
            if kind == "CP":
                kind = CP(draw(st.floats(-2 * math.pi, 2 * math.pi)))
        else:
            kind = CCX
        c = c.add(kind, *wires)
    return c


def random_matrix(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_density(rng, n_qubits, rank=None):
    d = 2**n_qubits
    rank = rank or d
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# -- acceptance summary ---------------------------------------------------------

_criteria: dict[str, list[str]] = {}
_labels: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag, title): acceptance criterion this test checks")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    tag, title = mark.args
    _labels[tag] = title
    _criteria.setdefault(tag, []).append("PASS" if call.excinfo is None else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def order(tag):
        return int(tag.removeprefix("AC"))

    for tag in sorted(_criteria, key=order):
        verdict = "PASS" if all(v == "PASS" for v in _criteria[tag]) else "FAIL"
        terminalreporter.write_line(f"{tag:<5} {verdict}  {_labels[tag]}")
