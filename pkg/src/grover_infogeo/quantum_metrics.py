"""Wigner-Yanase and Fubini-Study geometry of density operators and pure states.

Mixed-state quantities (``wy_inner_product``, ``skew_information``,
``quantum_fisher_wy``) work on matrices. Pure-state quantities work on a
:class:`PureStateFamily`, i.e. amplitudes ``sqrt(p_k(theta)) exp(i phi_k(theta))``
in a fixed orthonormal basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exceptions import DomainError
from .matrix_core import (
    as_density,
    as_hermitian,
    as_tangent,
    commutator,
    eigendecompose,
    matrix_sqrt_psd,
    unitary_from_generator,
)

VectorFn = Callable[[float], np.ndarray]

# eigenvalue floor for the strictly positive manifold
POSITIVE_FLOOR = 1e-10
FD_STEP = 1e-6


def _central(f: VectorFn, theta: float, h: float) -> np.ndarray:
    return (np.asarray(f(theta + h), dtype=float) - np.asarray(f(theta - h), dtype=float)) / (2 * h)


@dataclass(frozen=True)
class PureStateFamily:
    """One-parameter family of normalized pure states in modulus/phase form.

    ``p`` and ``phi`` map ``theta`` to length-``N`` arrays. Missing
    derivatives are replaced by central differences with step ``step``.
    A missing ``phi`` means all phases vanish.
    """

    p: VectorFn
    phi: Optional[VectorFn] = None
    p_dot: Optional[VectorFn] = None
    phi_dot: Optional[VectorFn] = None
    domain: tuple[float, float] = (-np.inf, np.inf)
    step: float = FD_STEP

    def _check(self, theta: float) -> None:
        lo, hi = self.domain
        if not lo < theta < hi:
            raise DomainError(f"theta={theta!r} outside family domain ({lo}, {hi})")

    def probabilities(self, theta: float) -> np.ndarray:
        self._check(theta)
        return np.asarray(self.p(theta), dtype=float)

    def velocities(self, theta: float) -> np.ndarray:
        self._check(theta)
        if self.p_dot is not None:
            return np.asarray(self.p_dot(theta), dtype=float)
        return _central(self.p, theta, self.step)

    def phases(self, theta: float) -> np.ndarray:
        if self.phi is None:
            return np.zeros_like(self.probabilities(theta))
        self._check(theta)
        return np.asarray(self.phi(theta), dtype=float)

    def phase_velocities(self, theta: float) -> np.ndarray:
        if self.phi is None:
            return np.zeros_like(self.probabilities(theta))
        self._check(theta)
        if self.phi_dot is not None:
            return np.asarray(self.phi_dot(theta), dtype=float)
        return _central(self.phi, theta, self.step)

    def amplitudes(self, theta: float) -> np.ndarray:
        p = np.clip(self.probabilities(theta), 0.0, None)
        return np.sqrt(p) * np.exp(1j * self.phases(theta))

    def amplitude_derivative(self, theta: float) -> np.ndarray:
        """``d psi / d theta``; requires every ``p_k(theta) > 0``."""
        p = _positive_probabilities(self, theta)
        sq = np.sqrt(p)
        dpsi = self.velocities(theta) / (2 * sq) + 1j * sq * self.phase_velocities(theta)
        return dpsi * np.exp(1j * self.phases(theta))


def _positive_probabilities(family: PureStateFamily, theta: float) -> np.ndarray:
    p = family.probabilities(theta)
    if np.any(p <= 0):
        k = int(np.argmin(p))
        raise DomainError(
            f"p_{k}({theta:g}) = {p[k]:.3e}: chart is singular on the simplex boundary"
        )
    return p


@dataclass(frozen=True)
class DensityFamily:
    """One-parameter family ``theta -> rho_theta`` of density operators."""

    rho: Callable[[float], np.ndarray]
    domain: tuple[float, float] = (-np.inf, np.inf)

    def __call__(self, theta: float) -> np.ndarray:
        lo, hi = self.domain
        if not lo <= theta <= hi:
            raise DomainError(f"theta={theta!r} outside family domain [{lo}, {hi}]")
        return as_density(self.rho(theta))

    @classmethod
    def from_pure_states(cls, family: PureStateFamily) -> "DensityFamily":
        def rho(theta):
            psi = family.amplitudes(theta)
            return np.outer(psi, psi.conj())

        return cls(rho=rho, domain=family.domain)

    @classmethod
    def unitary_orbit(cls, rho, T) -> "DensityFamily":
        """``rho_theta = exp(-i theta T) rho exp(i theta T)``."""
        rho = as_density(rho)
        T = as_hermitian(T)

        def rho_theta(theta):
            U = unitary_from_generator(T, theta)
            return U @ rho @ U.conj().T

        return cls(rho=rho_theta)


def cm_function_wy(x: float, y: float) -> float:
    """Chentsov-Morozova kernel of the Wigner-Yanase metric, ``4/(sqrt x + sqrt y)^2``."""
    if x <= 0 or y <= 0:
        raise DomainError(f"c_WY requires positive arguments, got ({x}, {y})")
    return 4.0 / (np.sqrt(x) + np.sqrt(y)) ** 2


def wy_inner_product(rho, D1, D2) -> float:
    """Wigner-Yanase metric ``<D1, D2>_rho`` on the strictly positive manifold.

    Evaluated in the eigenbasis of ``rho``:
    ``sum_jk conj(D1_jk) c_WY(l_j, l_k) D2_jk``.

    Raises:
        DomainError: if ``rho`` has an eigenvalue ``<= 1e-10``. Pure states
            are handled by :func:`wy_line_element`.
    """
    rho = as_density(rho)
    D1 = as_tangent(D1)
    D2 = as_tangent(D2)
    if D1.shape != rho.shape or D2.shape != rho.shape:
        raise DomainError("dimension mismatch between rho and tangent directions")
    spectrum = eigendecompose(rho)
    lam = spectrum.eigenvalues
    if lam[0] <= POSITIVE_FLOOR:
        raise DomainError(
            f"rho is not strictly positive (min eigenvalue {lam[0]:.3e}); "
            "use the pure-state line element instead"
        )
    U = spectrum.eigenvectors
    A = U.conj().T @ D1 @ U
    B = U.conj().T @ D2 @ U
    s = np.sqrt(lam)
    kernel = 4.0 / (s[:, None] + s[None, :]) ** 2
    return float(np.real(np.sum(A.conj() * kernel * B)))


def skew_information(rho, D) -> float:
    """Wigner-Yanase skew information ``-1/2 Tr([sqrt(rho), D]^2)``."""
    rho = as_density(rho)
    D = as_hermitian(D)
    if D.shape != rho.shape:
        raise DomainError(f"dimension mismatch: rho {rho.shape}, D {D.shape}")
    C = commutator(matrix_sqrt_psd(rho), D)
    return float(-0.5 * np.real(np.trace(C @ C)))


def quantum_fisher_wy(family: DensityFamily, theta: float, h: float = 1e-5,
                      richardson: bool = False) -> float:
    """Wigner-Yanase quantum Fisher information ``4 Tr[(d sqrt(rho)/d theta)^2]``.

    The derivative of ``sqrt(rho_theta)`` is a central difference of
    :func:`matrix_sqrt_psd`; ``richardson=True`` combines steps ``h`` and
    ``h/2`` for a fourth-order estimate.
    """
    if h <= 0:
        raise DomainError("step h must be positive")
    lo, hi = family.domain
    if not (lo <= theta - h and theta + h <= hi):
        raise DomainError(f"theta +/- h = {theta}+/-{h} leaves domain [{lo}, {hi}]")

    def dsqrt(step):
        return (matrix_sqrt_psd(family(theta + step)) - matrix_sqrt_psd(family(theta - step))) / (2 * step)

    G = dsqrt(h)
    if richardson:
        G = (4 * dsqrt(h / 2) - G) / 3
    return float(4 * np.real(np.trace(G @ G)))


def fisher_term(family: PureStateFamily, theta: float) -> float:
    """Classical Fisher information ``sum_k pdot_k^2 / p_k`` of the moduli."""
    p = _positive_probabilities(family, theta)
    pd = family.velocities(theta)
    return float(np.sum(pd * pd / p))


def fubini_study_speed(family: PureStateFamily, theta: float) -> float:
    """Fubini-Study metric ``g(theta)`` from the amplitude vector.

    ``g = Re<dpsi|dpsi> + <dpsi|psi>^2``; the antisymmetric imaginary part of
    ``<dpsi|dpsi>`` drops out for a single parameter.
    """
    psi = family.amplitudes(theta)
    dpsi = family.amplitude_derivative(theta)
    gamma = np.vdot(dpsi, dpsi).real
    berry = np.vdot(dpsi, psi)
    return float(max(gamma + (berry * berry).real, 0.0))


def wy_line_element(family: PureStateFamily, theta: float) -> float:
    """Pure-state Wigner-Yanase line element ``ds^2 / d theta^2``.

    ``sum pdot^2/p + 4 [sum p phidot^2 - (sum p phidot)^2]``.
    """
    p = _positive_probabilities(family, theta)
    pd = family.velocities(theta)
    w = family.phase_velocities(theta)
    mean_w = np.dot(p, w)
    phase_var = np.dot(p, w * w) - mean_w * mean_w
    return float(np.sum(pd * pd / p) + 4.0 * max(phase_var, 0.0))


def overlap_line_element(family: PureStateFamily, theta: float, h: float = 1e-4) -> float:
    """Finite-difference estimate ``4 (1 - |<psi(theta)|psi(theta+h)>|^2) / h^2``."""
    a = family.amplitudes(theta)
    b = family.amplitudes(theta + h)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(4.0 * (1.0 - abs(np.vdot(a, b)) ** 2) / h**2)
