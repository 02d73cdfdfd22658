"""Entanglement measures for two-qubit states.

Scalar functions take a validated DensityMatrix; the ``*_batch`` variants
take a raw (..., 4, 4) stack and are what the Monte Carlo harness uses.
Both go through the same numerical core, so a scalar call equals the
corresponding batch entry exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cmat
from .errors import DomainError
from .qstate import DensityMatrix

# PT eigenvalues above -EPS_SEP count as separable; the Monte Carlo harness
# discards such states rather than treating rounding noise as entanglement.
EPS_SEP = 1e-10
_DOMAIN_SLACK = 1e-12

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
# sigma_y (x) sigma_y is exactly real: the anti-diagonal (-1, 1, 1, -1).
_FLIP = cmat.kron2(SIGMA_Y, SIGMA_Y).real


@dataclass(frozen=True)
class MeasureReport:
    """All measure values for one state."""

    concurrence: float
    e_formation: float
    e_negative: float
    e_sum: float
    linear_entropy: float
    separable: bool


REPORT_CSV_HEADER = "concurrence,e_formation,e_negative,e_sum,linear_entropy,separable"


def report_csv_row(report: MeasureReport) -> str:
    """One CSV row per MeasureReport, 17 significant digits."""
    values = (
        report.concurrence,
        report.e_formation,
        report.e_negative,
        report.e_sum,
        report.linear_entropy,
    )
    tail = "true" if report.separable else "false"
    return ",".join(f"{v:.17g}" for v in values) + "," + tail


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y), conjugation in the computational basis."""
    return spin_flip_batch(rho.matrix)


def spin_flip_batch(ms: np.ndarray) -> np.ndarray:
    ms = np.asarray(ms)
    return _FLIP @ np.conj(ms) @ _FLIP


def pt_eigenvalues(ms: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of the partial transpose, for a (..., 4, 4) stack."""
    return cmat.eigvalsh_desc(cmat.partial_transpose_b(np.asarray(ms)))


def r_spectrum_batch(ms: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)).

    Evaluated as the singular values of B = sqrt(rho) (sy x sy) sqrt(rho)^T,
    which equals the R spectrum exactly (R^2 = B B^dagger) but keeps full
    absolute accuracy for near-zero eigenvalues; squaring-then-rooting loses
    half the digits there, which rank-deficient (pure) states cannot afford.
    """
    ms = np.asarray(ms)
    root = cmat.psd_sqrt(ms)
    b = root @ _FLIP @ np.swapaxes(root, -1, -2)
    return np.linalg.svd(b, compute_uv=False)


def concurrence_batch(ms: np.ndarray) -> np.ndarray:
    """max{0, l1 - l2 - l3 - l4} over the descending R spectrum."""
    lam = r_spectrum_batch(ms)
    return np.maximum(0.0, lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3])


def concurrence(rho: DensityMatrix) -> float:
    return float(concurrence_batch(rho.matrix[None])[0])


def _clamped_unit(x: float, what: str) -> float:
    if not -_DOMAIN_SLACK <= x <= 1.0 + _DOMAIN_SLACK:
        raise DomainError(f"{what} must lie in [0, 1], got {x!r}")
    return min(max(x, 0.0), 1.0)


def binary_entropy(x: float) -> float:
    """-x log2 x - (1 - x) log2(1 - x), with the 0 log 0 = 0 convention.

    Arguments within 1e-12 of the interval are clamped; anything further
    out raises DomainError.
    """
    x = _clamped_unit(float(x), "binary_entropy argument")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def _binary_entropy_arr(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    out = np.zeros_like(x)
    inner = (x > 0.0) & (x < 1.0)
    xi = x[inner]
    out[inner] = -(xi * np.log2(xi) + (1.0 - xi) * np.log2(1.0 - xi))
    return out


def ef_from_concurrence(c: float) -> float:
    """Formation measure as a strictly increasing function of the concurrence."""
    c = _clamped_unit(float(c), "concurrence")
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def ef_from_concurrence_batch(c: np.ndarray) -> np.ndarray:
    c = np.clip(np.asarray(c), 0.0, 1.0)
    return _binary_entropy_arr((1.0 + np.sqrt(1.0 - c * c)) / 2.0)


def e_formation(rho: DensityMatrix) -> float:
    return ef_from_concurrence(concurrence(rho))


def e_negative(rho: DensityMatrix) -> float:
    """Modulus of the most negative partial-transpose eigenvalue (0 if none)."""
    return float(e_negative_batch(rho.matrix[None])[0])


def e_negative_batch(ms: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, -pt_eigenvalues(ms)[..., -1])


def e_sum(rho: DensityMatrix) -> float:
    """Sum of absolute partial-transpose eigenvalues minus one (0 iff PPT)."""
    return float(e_sum_batch(rho.matrix[None])[0])


def e_sum_batch(ms: np.ndarray) -> np.ndarray:
    return np.maximum(0.0, np.abs(pt_eigenvalues(ms)).sum(axis=-1) - 1.0)


def linear_entropy(rho: DensityMatrix) -> float:
    """1 - tr(rho^2); zero for pure states, 3/4 for the maximally mixed state."""
    return float(linear_entropy_batch(rho.matrix[None])[0])


def linear_entropy_batch(ms: np.ndarray) -> np.ndarray:
    ms = np.asarray(ms)
    return np.maximum(0.0, 1.0 - np.einsum("...ij,...ji->...", ms, ms).real)


def is_separable(rho: DensityMatrix) -> bool:
    """Positive-partial-transpose test, exact for two qubits."""
    return bool(pt_eigenvalues(rho.matrix)[-1] >= -EPS_SEP)


def measure_table(ms: np.ndarray) -> dict[str, np.ndarray]:
    """All measures for a (n, 4, 4) stack, sharing the eigendecompositions."""
    ms = np.asarray(ms)
    pt_w = pt_eigenvalues(ms)
    c = concurrence_batch(ms)
    return {
        "concurrence": c,
        "e_formation": ef_from_concurrence_batch(c),
        "e_negative": np.maximum(0.0, -pt_w[..., -1]),
        "e_sum": np.maximum(0.0, np.abs(pt_w).sum(axis=-1) - 1.0),
        "linear_entropy": linear_entropy_batch(ms),
        "separable": pt_w[..., -1] >= -EPS_SEP,
    }


def measure_report(rho: DensityMatrix) -> MeasureReport:
    """Evaluate every measure once for a single state."""
    t = measure_table(rho.matrix[None])
    return MeasureReport(
        concurrence=float(t["concurrence"][0]),
        e_formation=float(t["e_formation"][0]),
        e_negative=float(t["e_negative"][0]),
        e_sum=float(t["e_sum"][0]),
        linear_entropy=float(t["linear_entropy"][0]),
        separable=bool(t["separable"][0]),
    )
