"""Dense complex linear algebra for registers of up to six qubits.

Matrices, statevectors and density matrices are plain ``numpy`` arrays of
dtype ``complex128``.  Register ordering is big-endian throughout: qubit 0 is
the most significant bit of a basis index.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

ATOL_NORM = 1e-10


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    return a


def _as_vector(v, name: str = "state") -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise DimensionError(f"{name} must be a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains NaN or Inf")
    return v


def num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 0 or 1 << n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def matmul(a, b) -> np.ndarray:
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``."""
    return np.kron(_as_matrix(a, "a"), _as_matrix(b, "b"))


def dagger(a) -> np.ndarray:
    return _as_matrix(a).conj().T


def max_abs_deviation_from_identity(a) -> float:
    """Largest entry of ``|a - I|``.

    This is the max-entry norm, not the induced operator norm.
    """
    a = _as_matrix(a)
    return float(np.max(np.abs(a - np.eye(a.shape[0]))))


def unitarity_deviation(u) -> float:
    """``max_abs_deviation_from_identity(U^dagger U)``."""
    u = _as_matrix(u, "unitary")
    return max_abs_deviation_from_identity(u.conj().T @ u)


def frobenius_norm(a) -> float:
    a = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf")
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


# -- states -----------------------------------------------------------------


def basis_state(index: int | str, n_qubits: int | None = None) -> np.ndarray:
    """Computational basis vector.

    ``index`` is either an integer or a bit string such as ``"010"`` read as
    ``|q0 q1 q2>``.
    """
    if isinstance(index, str):
        if n_qubits is None:
            n_qubits = len(index)
        if len(index) != n_qubits or set(index) - {"0", "1"}:
            raise ValueError(f"bad basis label {index!r} for {n_qubits} qubits")
        index = int(index, 2)
    if n_qubits is None or n_qubits < 1:
        raise ValueError("n_qubits must be given and positive")
    if not 0 <= index < 2**n_qubits:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    v = np.zeros(2**n_qubits, dtype=np.complex128)
    v[index] = 1.0
    return v


def basis_label(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def density(psi) -> np.ndarray:
    """Projector ``|psi><psi|``."""
    psi = _as_vector(psi)
    return np.outer(psi, psi.conj())


def check_statevector(psi, atol: float = ATOL_NORM) -> np.ndarray:
    psi = _as_vector(psi)
    num_qubits(psi.size)
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > atol:
        raise ValueError(f"statevector norm^2 is {norm}, expected 1")
    return psi


def check_density_matrix(rho, atol: float = ATOL_NORM, eig_floor: float = -1e-9) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the array."""
    rho = _as_matrix(rho, "rho")
    num_qubits(rho.shape[0])
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > atol:
        raise ValueError(f"rho is not Hermitian (deviation {herm:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > atol:
        raise ValueError(f"rho has trace {tr}, expected 1")
    lo = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if lo < eig_floor:
        raise ValueError(f"rho has negative eigenvalue {lo:.3g}")
    return rho


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the ``keep`` qubits, in ascending qubit order."""
    rho = _as_matrix(rho, "rho")
    n = num_qubits(rho.shape[0])
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep {keep} out of range for {n} qubits")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # trace the highest-numbered qubit first so remaining axis labels stay valid
    for removed, q in enumerate(sorted(traced, reverse=True)):
        width = n - removed
        t = np.trace(t, axis1=q, axis2=q + width)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def trace_distance(a, b) -> float:
    """Half the sum of absolute eigenvalues of ``a - b``."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    diff = a - b
    diff = 0.5 * (diff + diff.conj().T)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def state_fidelity(psi, rho) -> float:
    """``<psi|rho|psi>`` for a pure reference state and a mixed state."""
    psi = _as_vector(psi, "psi")
    rho = _as_matrix(rho, "rho")
    if rho.shape[0] != psi.size:
        raise DimensionError(f"state of size {psi.size} vs rho {rho.shape}")
    return float(np.vdot(psi, rho @ psi).real)


def haar_random_state(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed pure state from normalized complex Gaussians."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be positive")
    d = 2**n_qubits
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)
