from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from qotp.exceptions import DimensionMismatchError, ProbabilitySumError, QuantumStateError
from qotp.quantum.statevector import (
    TOLERANCE,
    RegisterLayout,
    RegisterNames,
    StateVector,
    _as_names,
    _check_layout,
)


@dataclass(frozen=True)
class DensityMatrix:
    """
    A mixed state: Hermitian, unit trace, positive semidefinite.

    :ivar matrix: The ``dim x dim`` complex matrix (read-only).
    :vartype matrix: numpy.ndarray
    """

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise QuantumStateError(f"Density matrix must be square, got shape {mat.shape}")
        if not np.allclose(mat, mat.conj().T, atol=TOLERANCE, rtol=0.0):
            raise QuantumStateError("Density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TOLERANCE:
            raise QuantumStateError(f"Density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(mat).min())
        if smallest < -TOLERANCE:
            raise QuantumStateError(f"Density matrix has negative eigenvalue {smallest!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, state: StateVector) -> "DensityMatrix":
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def density_from_ensemble(branches: Sequence[Tuple[float, StateVector]]) -> DensityMatrix:
    """``rho = sum_i p_i |psi_i><psi_i|``."""
    if not branches:
        raise ProbabilitySumError(0.0)
    probs = np.array([p for p, _ in branches], dtype=np.float64)
    if (probs < -TOLERANCE).any() or abs(probs.sum() - 1.0) > TOLERANCE:
        raise ProbabilitySumError(float(probs.sum()))
    dim = branches[0][1].dim
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for p, psi in branches:
        if psi.dim != dim:
            raise DimensionMismatchError("ensemble state dimension", dim, psi.dim)
        rho += p * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(rho)


def trace_distance(rho0: DensityMatrix, rho1: DensityMatrix) -> float:
    """``0.5 * ||rho0 - rho1||_1``, from the eigenvalues of the Hermitian difference."""
    if rho0.dim != rho1.dim:
        raise DimensionMismatchError("trace distance", rho0.dim, rho1.dim)
    eigs = np.linalg.eigvalsh(rho0.matrix - rho1.matrix)
    return float(min(1.0, 0.5 * np.abs(eigs).sum()))


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Standard-basis measurement without recording the outcome: keep the diagonal."""
    return DensityMatrix(np.diag(np.real(np.diag(rho.matrix))).astype(np.complex128))


def reduced_density_matrix(state: StateVector, layout: RegisterLayout, keep: RegisterNames) -> DensityMatrix:
    """Trace out every register not named in ``keep``."""
    _check_layout(state, layout)
    keep_names = _as_names(keep)
    rest = [name for name in layout.names() if name not in keep_names]
    indices = np.arange(state.dim, dtype=np.int64)
    kept = layout.values(indices, keep_names)
    dim_keep = 1 << layout.width(keep_names)
    if not rest:
        amps = np.zeros(dim_keep, dtype=np.complex128)
        amps[kept] = state.amplitudes
        return DensityMatrix(np.outer(amps, amps.conj()))
    traced = layout.values(indices, rest)
    dim_rest = 1 << layout.width(rest)
    # psi[k, e] with k the kept value and e the environment value
    psi = np.zeros((dim_keep, dim_rest), dtype=np.complex128)
    psi[kept, traced] = state.amplitudes
    return DensityMatrix(psi @ psi.conj().T)
