"""Symmetric probability paths and their variational diagnostics.

Every model here puts probability ``p0(theta)`` on the target and spreads the
rest evenly, ``p_bar = (1 - p0)/(N - 1)``, over the other ``N - 1`` states. A
path therefore stores one scalar function plus ``N``, which keeps ``N`` up to
``2**60`` cheap.

In square-root coordinates ``q_k = sqrt(p_k)`` the length functional of the
Fisher metric has the Euler-Lagrange equation

    q'' - (L'/L) q' + (lambda/2) L q = 0,   L = sqrt(F),

which :func:`el_residual` evaluates component by component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import DomainError
from .quantum_metrics import PureStateFamily, _positive_probabilities, fisher_term

ScalarFn = Callable[[float], float]

FD_STEP = 1e-6
FD_STEP_SECOND = 1e-4
EDGE_MARGIN = 0.05


@dataclass(frozen=True)
class SymmetricProbabilityPath:
    """Probability path ``(p0, p_bar, ..., p_bar)`` on an open ``theta`` interval.

    ``p0_dot`` and ``p0_ddot`` are optional; without them central differences
    are used (step ``1e-6`` for the first derivative, ``1e-4`` for the second).
    """

    N: int
    p0: ScalarFn
    p0_dot: Optional[ScalarFn] = None
    p0_ddot: Optional[ScalarFn] = None
    domain: tuple[float, float] = (-math.inf, math.inf)
    label: str = "custom"

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"N must be >= 2, got {self.N}")

    def value(self, theta: float) -> float:
        return float(self.p0(theta))

    def velocity(self, theta: float) -> float:
        if self.p0_dot is not None:
            return float(self.p0_dot(theta))
        h = FD_STEP
        return (self.p0(theta + h) - self.p0(theta - h)) / (2 * h)

    def acceleration(self, theta: float) -> float:
        if self.p0_ddot is not None:
            return float(self.p0_ddot(theta))
        h = FD_STEP_SECOND
        return (self.p0(theta + h) - 2 * self.p0(theta) + self.p0(theta - h)) / h**2

    def p_bar(self, theta: float) -> float:
        return (1.0 - self.value(theta)) / (self.N - 1)

    def probabilities(self, theta: float) -> np.ndarray:
        """Explicit length-``N`` probability vector."""
        p = np.full(self.N, self.p_bar(theta))
        p[0] = self.value(theta)
        return p

    def probability_velocities(self, theta: float) -> np.ndarray:
        v = self.velocity(theta)
        out = np.full(self.N, -v / (self.N - 1))
        out[0] = v
        return out

    def grid(self, points: int = 101, margin: float = EDGE_MARGIN) -> np.ndarray:
        """Uniform grid on the domain trimmed by ``margin`` at both ends."""
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"path '{self.label}' has an unbounded domain; pass a grid")
        return np.linspace(lo + margin, hi - margin, points)

    def to_pure_state_family(self, phi=None, phi_dot=None) -> PureStateFamily:
        """Amplitudes ``sqrt(p_k) exp(i phi_k)``; zero phases by default."""
        return PureStateFamily(
            p=self.probabilities,
            p_dot=self.probability_velocities,
            phi=phi,
            phi_dot=phi_dot,
            domain=self.domain,
        )


@dataclass(frozen=True)
class ActualityReport:
    """Euler-Lagrange residuals of a path on a grid for one multiplier value."""

    theta_grid: np.ndarray
    residual_q0: np.ndarray
    residual_qbar: np.ndarray
    lam: float
    sup_norm: float = field(init=False)

    def __post_init__(self):
        sup = max(float(np.max(np.abs(self.residual_q0))), float(np.max(np.abs(self.residual_qbar))))
        object.__setattr__(self, "sup_norm", sup)


def grover_path(N: int) -> SymmetricProbabilityPath:
    """``p0 = sin^2(theta)`` on ``(0, pi/2)``."""
    return SymmetricProbabilityPath(
        N=N,
        p0=lambda t: math.sin(t) ** 2,
        p0_dot=lambda t: math.sin(2 * t),
        p0_ddot=lambda t: 2 * math.cos(2 * t),
        domain=(0.0, math.pi / 2),
        label="grover",
    )


def model_ii_path(N: int) -> SymmetricProbabilityPath:
    """``p0 = theta^2`` on ``(0, 1)``; agrees with Grover to ``O(theta^4)``."""
    return SymmetricProbabilityPath(
        N=N,
        p0=lambda t: t * t,
        p0_dot=lambda t: 2 * t,
        p0_ddot=lambda t: 2.0,
        domain=(0.0, 1.0),
        label="model2",
    )


def model_iii_path(N: int) -> SymmetricProbabilityPath:
    """``p0 = (1 + sin 2 theta)/2`` on ``(-pi/4, pi/4)``.

    Solves ``p0'^2 = 4 p0 (1 - p0)`` with ``p0(0) = 1/2``.
    """
    return SymmetricProbabilityPath(
        N=N,
        p0=lambda t: 0.5 * (1 + math.sin(2 * t)),
        p0_dot=lambda t: math.cos(2 * t),
        p0_ddot=lambda t: -2 * math.sin(2 * t),
        domain=(-math.pi / 4, math.pi / 4),
        label="model3",
    )


def _interior(path: SymmetricProbabilityPath, theta: float) -> float:
    p0 = path.value(theta)
    if not 0.0 < p0 < 1.0:
        raise DomainError(
            f"p0({theta:g}) = {p0:.6g} is on the simplex boundary; F is undefined there"
        )
    return p0


def fisher_info_function(path: SymmetricProbabilityPath, theta: float) -> float:
    """``F = p0'^2/p0 + p0'^2/(1 - p0)``; the ``N - 1`` factors cancel."""
    p0 = _interior(path, theta)
    v = path.velocity(theta)
    return v * v / p0 + v * v / (1.0 - p0)


def fisher_derivative(path: SymmetricProbabilityPath, theta: float) -> float:
    """``dF/dtheta`` from the first two derivatives of ``p0``."""
    p0 = _interior(path, theta)
    v = path.velocity(theta)
    a = path.acceleration(theta)
    u = p0 * (1.0 - p0)
    du = v * (1.0 - 2.0 * p0)
    return 2 * v * a / u - v * v * du / (u * u)


def _sqrt_coordinate(p: float, v: float, a: float) -> tuple[float, float, float]:
    q = math.sqrt(p)
    return q, v / (2 * q), a / (2 * q) - v * v / (4 * q**3)


def q_coordinates(path: SymmetricProbabilityPath, theta: float):
    """``(q, q', q'')`` for the target and for one non-target component."""
    p0 = _interior(path, theta)
    v = path.velocity(theta)
    a = path.acceleration(theta)
    m = path.N - 1
    return _sqrt_coordinate(p0, v, a), _sqrt_coordinate((1 - p0) / m, -v / m, -a / m)


def el_residual(path: SymmetricProbabilityPath, lam: float = 1.0, grid=None) -> ActualityReport:
    """Euler-Lagrange residuals of ``path`` for multiplier ``lam``.

    Raises:
        DomainError: when ``L = sqrt(F)`` vanishes on the grid (a stationary
            path has no arc-length parametrization) or the grid leaves the
            open simplex.
    """
    theta = path.grid() if grid is None else np.asarray(grid, dtype=float)
    r0 = np.empty_like(theta)
    rb = np.empty_like(theta)
    for i, t in enumerate(theta):
        F = fisher_info_function(path, t)
        if F <= 1e-14:
            raise DomainError(f"Lagrangian vanishes at theta={t:g}: path is stationary")
        L = math.sqrt(F)
        ratio = fisher_derivative(path, t) / (2 * F)  # L'/L
        (q0, dq0, ddq0), (qb, dqb, ddqb) = q_coordinates(path, t)
        r0[i] = ddq0 - ratio * dq0 + 0.5 * lam * L * q0
        rb[i] = ddqb - ratio * dqb + 0.5 * lam * L * qb
    return ActualityReport(theta_grid=theta, residual_q0=r0, residual_qbar=rb, lam=float(lam))


def kinetic_energy(family: PureStateFamily, theta: float) -> float:
    """``K = <psi'|psi'>`` summed over basis components."""
    dpsi = family.amplitude_derivative(theta)
    return float(np.vdot(dpsi, dpsi).real)


def kinetic_decomposition(family: PureStateFamily, theta: float) -> tuple[float, float]:
    """Split ``K`` into the Fisher part ``F/4`` and the current part ``sum p phi'^2``."""
    p = _positive_probabilities(family, theta)
    w = family.phase_velocities(theta)
    return 0.25 * fisher_term(family, theta), float(np.dot(p, w * w))


def current_density(family: PureStateFamily, theta: float, k: int) -> float:
    """Normalized current ``Im(psi_k' conj(psi_k)) / |psi_k|^2``; equals ``phi_k'``."""
    p = family.probabilities(theta)
    if p[k] <= 0:
        raise DomainError(f"current undefined where p_{k}({theta:g}) = 0")
    psi = family.amplitudes(theta)[k]
    dpsi = family.amplitude_derivative(theta)[k]
    return float((dpsi * np.conj(psi)).imag / p[k])


def model_iv_el_system(N: int, q0: float, q0_dot: float, q0_ddot: float, theta: float = 0.0,
                       exact_lagrangian: bool = False) -> tuple[float, float]:
    """Residuals of the two coupled Euler-Lagrange equations for ``(q0, q_bar)``.

    ``q_bar = sqrt((1 - q0^2)/(N - 1))`` is eliminated through normalization.
    By default ``L`` and ``L'`` follow the closed forms written in terms of
    ``q0`` alone,
    ``L = 2 q0' sqrt(((N-1)(1-q0^2) + q0^2) / ((N-1)(1-q0^2)))``.
    Differentiating the normalization directly instead gives
    ``L = 2 q0' / sqrt(1 - q0^2)`` for every ``N``; ``exact_lagrangian=True``
    selects that form. The two agree only at ``N = 2``. ``theta`` is accepted
    for interface symmetry; the system is autonomous.
    """
    if int(N) != N or N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not 0.0 < q0 < 1.0:
        raise DomainError(f"q0 = {q0} must lie in (0, 1)")
    m = N - 1
    w = 1.0 if exact_lagrangian else float(m)
    c = 1.0 - q0 * q0
    R = (w * c + q0 * q0) / (w * c)
    L = 2 * q0_dot * math.sqrt(R)
    if abs(L) < 1e-14:
        raise DomainError("Lagrangian vanishes: q0 is stationary")
    dL = 2 * q0_ddot * math.sqrt(R) + 2 * q0 * q0_dot**2 / (w * c * c) / math.sqrt(R)
    ratio = dL / L

    qb = math.sqrt(c / m)
    dqb = -q0 * q0_dot / (m * qb)
    ddqb = (-(q0_dot**2 + q0 * q0_ddot) / m - dqb * dqb) / qb

    r0 = q0_ddot - ratio * q0_dot + 0.5 * L * q0
    rb = ddqb - ratio * dqb + 0.5 * L * qb
    return r0, rb
