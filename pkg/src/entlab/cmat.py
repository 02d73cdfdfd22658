"""Dense 4x4 complex linear algebra for two-qubit state calculations.

All operations accept a single (4, 4) matrix; where noted they also accept a
stack of shape (..., 4, 4) and operate on every matrix in the stack.  The
basis ordering is fixed throughout: |00>, |01>, |10>, |11>, with the first
qubit labelled A and the second B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadIndices, NonHermitianInput, NotPositiveSemidefinite


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the library and its test suites."""

    hermiticity: float = 1e-10
    psd_clamp: float = 1e-10
    reconstruction: float = 1e-9


TOL = Tolerances()


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest absolute entry of m - m^dagger (max over a stack)."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.abs(m - np.conj(np.swapaxes(m, -1, -2))).max())


def _require_hermitian(m: np.ndarray, tol: float = TOL.hermiticity) -> None:
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NonHermitianInput(
            f"matrix deviates from Hermiticity by {defect:.3e} (tolerance {tol:.1e})",
            deviation=defect,
        )


def eigvalsh_desc(m: np.ndarray) -> np.ndarray:
    """Descending real eigenvalues of a Hermitian matrix or (..., 4, 4) stack."""
    m = np.asarray(m)
    _require_hermitian(m)
    return np.linalg.eigvalsh(m)[..., ::-1]


def hermitian_eig(m: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a single Hermitian matrix, eigenvalues descending.

    The returned eigenvector matrix U is unitary with U diag(w) U^dagger
    reconstructing the input; both hold to Tolerances.reconstruction.
    """
    m = np.asarray(m)
    _require_hermitian(m)
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(eigenvalues=w[::-1].copy(), eigenvectors=v[:, ::-1].copy())


def psd_sqrt(m: np.ndarray, clamp: float = TOL.psd_clamp) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix or (..., 4, 4) stack.

    Eigenvalues in [-clamp, 0) are treated as rounding noise and clamped to
    zero before the square root; anything below -clamp raises
    NotPositiveSemidefinite.
    """
    m = np.asarray(m)
    _require_hermitian(m)
    w, v = np.linalg.eigh(m)
    wmin = float(w.min())
    if wmin < -clamp:
        raise NotPositiveSemidefinite(
            f"matrix has eigenvalue {wmin:.3e} below -{clamp:.1e}",
            deviation=-wmin,
        )
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))
    return 0.5 * (s + np.conj(np.swapaxes(s, -1, -2)))


def partial_transpose_b(m: np.ndarray) -> np.ndarray:
    """Transpose the second-qubit indices of a (..., 4, 4) matrix.

    This is a pure entry permutation: it preserves the trace exactly, is an
    exact involution, and maps Hermitian matrices to Hermitian matrices.
    """
    m = np.asarray(m)
    lead = m.shape[:-2]
    blocks = m.reshape(lead + (2, 2, 2, 2))
    return blocks.swapaxes(-3, -1).reshape(lead + (4, 4))


def kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices in the fixed |q_A q_B> ordering."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise BadIndices(f"kron2 expects two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)
