"""Dense complex linear algebra kernel shared by every operator module.

All matrices are numpy ``complex128`` arrays.  Equality is always tested
through an explicit elementwise tolerance (``residual_norm`` /
``matrices_close``), never with exact float comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "EigenDecomposition",
    "adjoint",
    "hermitian_eig",
    "kron",
    "mat_mul",
    "matrices_close",
    "residual_norm",
]

# Max-abs bound for accepting input as Hermitian, and for the
# orthonormality / reconstruction residuals of a returned decomposition.
HERMITICITY_TOL = 1e-10
DECOMPOSITION_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Eigensolver failed or produced a decomposition outside its bounds."""


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    """Matrix product, rejecting mismatched inner dimensions."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return _as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product; the left factor indexes the blocks."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def residual_norm(a, b) -> float:
    """Max-abs elementwise difference of two same-shape matrices."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def matrices_close(a, b, tol: float = 1e-12) -> bool:
    return residual_norm(a, b) <= tol


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(h) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix.

    Eigenvalues come back ascending; column ``j`` of ``eigenvectors`` belongs
    to ``eigenvalues[j]``.  For degenerate clusters the individual columns are
    basis-dependent, so downstream comparisons must use subspace projectors.

    Raises
    ------
    ValueError
        Non-square input, or input not Hermitian within 1e-10 max-abs.
    ConvergenceError
        Backend failure, or residuals ``V†V - I`` / ``HV - VΛ`` above 1e-10.
    """
    h = _as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if residual_norm(h, h.conj().T) >= HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10 max-abs")
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as err:  # pragma: no cover - backend failure
        raise ConvergenceError(f"eigensolver did not converge: {err}") from err
    ortho = residual_norm(eigenvectors.conj().T @ eigenvectors, np.eye(h.shape[0]))
    recon = residual_norm(h @ eigenvectors, eigenvectors * eigenvalues)
    if ortho >= DECOMPOSITION_TOL or recon >= DECOMPOSITION_TOL:  # pragma: no cover
        raise ConvergenceError(
            f"decomposition residuals too large: ortho={ortho:.3e} recon={recon:.3e}"
        )
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)
