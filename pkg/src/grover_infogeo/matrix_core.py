"""Dense Hermitian linear algebra used by the density-operator formulas.

Matrices are plain ``numpy`` arrays. The ``as_*`` helpers validate an input
once and return a read-only complex copy; downstream code trusts that copy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_FLOOR = -1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition ``M = U diag(eigenvalues) U^dagger``.

    Attributes:
        eigenvalues: real eigenvalues in ascending order.
        eigenvectors: unitary matrix whose columns are the eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def as_hermitian(M, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate ``M`` as a square Hermitian matrix and return a frozen copy.

    The tolerance is absolute for entries of order one and scales with the
    largest entry magnitude otherwise.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DomainError(f"expected a non-empty square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M))))
    err = float(np.max(np.abs(M - M.conj().T)))
    if err > atol * scale:
        raise DomainError(f"matrix is not Hermitian: max |M - M^dagger| = {err:.3e}")
    return _frozen(M)


def as_density(rho) -> np.ndarray:
    """Validate a density operator: Hermitian, unit trace, PSD up to 1e-12."""
    rho = as_hermitian(rho)
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_ATOL:
        raise DomainError(f"density operator must have unit trace, got {tr.real:.15g}")
    lam_min = float(np.linalg.eigvalsh(rho)[0])
    if lam_min < PSD_FLOOR:
        raise DomainError(f"density operator has negative eigenvalue {lam_min:.3e}")
    return rho


def as_tangent(D) -> np.ndarray:
    """Validate a tangent direction: Hermitian and traceless."""
    D = as_hermitian(D)
    tr = np.trace(D)
    if abs(tr) > TRACE_ATOL * max(1.0, float(np.max(np.abs(D)))):
        raise DomainError(f"tangent direction must be traceless, got trace {tr:.3e}")
    return D


def eigendecompose(M) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix with ascending eigenvalues."""
    M = as_hermitian(M)
    lam, U = np.linalg.eigh(M)
    return Spectrum(eigenvalues=lam, eigenvectors=U)


def matrix_sqrt_psd(M) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-1e-12, 0)`` are clipped to zero. Positive eigenvalues
    at round-off level (below ``64 * eps * max(1, lambda_max)``) are also set
    to zero, so that a numerically rank-deficient input keeps its rank in the
    root; otherwise a ``1e-17`` eigenvalue would contribute ``3e-9`` noise.

    Raises:
        DomainError: if an eigenvalue is below ``-1e-12``.
    """
    spectrum = eigendecompose(M)
    lam = spectrum.eigenvalues
    if lam[0] < PSD_FLOOR:
        raise DomainError(f"matrix is not positive semidefinite: eigenvalue {lam[0]:.3e}")
    cutoff = 64 * np.finfo(float).eps * max(1.0, float(lam[-1]))
    root = np.where(lam > cutoff, np.sqrt(np.clip(lam, 0.0, None)), 0.0)
    U = spectrum.eigenvectors
    S = (U * root) @ U.conj().T
    return 0.5 * (S + S.conj().T)


def commutator(A, B) -> np.ndarray:
    """Return ``AB - BA``."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.ndim != 2:
        raise DomainError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A @ B - B @ A


def unitary_from_generator(T, theta: float) -> np.ndarray:
    """``exp(-i theta T)`` for Hermitian ``T``, via its spectrum."""
    spectrum = eigendecompose(T)
    U = spectrum.eigenvectors
    return (U * np.exp(-1j * theta * spectrum.eigenvalues)) @ U.conj().T


PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
