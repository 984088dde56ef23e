"""Grover search in the two-dimensional rotation picture.

``rotation_step`` is the closed-form rotation by ``alpha`` in the plane of the
target ``|a>`` and the uniform superposition ``|r>`` of the other states.
``statevector_oracle`` runs the actual iteration on a full statevector and is
kept only to verify the rotation formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .quantum_metrics import PureStateFamily

MAX_QUBITS = 12


def _check_size(N: int) -> int:
    if int(N) != N or N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    return int(N)


@dataclass(frozen=True)
class GroverInstance:
    """Database of size ``N`` with one marked item."""

    N: int
    target_index: int = 0

    def __post_init__(self):
        _check_size(self.N)
        if not 0 <= self.target_index < self.N:
            raise DomainError(f"target_index {self.target_index} outside [0, {self.N})")

    @property
    def alpha(self) -> float:
        return grover_angle(self.N)


@dataclass(frozen=True)
class RotationState:
    """State after ``m`` iterations: ``amp_rest |r> + amp_target |a>``."""

    m: int
    amp_target: float
    amp_rest: float

    @property
    def success_probability(self) -> float:
        return self.amp_target**2


def grover_angle(N: int) -> float:
    """Rotation angle ``alpha = 2 arcsin(1/sqrt(N))``."""
    N = _check_size(N)
    return 2.0 * math.asin(1.0 / math.sqrt(N))


def rotation_step(instance: GroverInstance | int, m: int) -> RotationState:
    if isinstance(instance, GroverInstance):
        N = instance.N
    else:
        N = _check_size(instance)
    if m < 0:
        raise DomainError(f"step count must be nonnegative, got {m}")
    angle = (m + 0.5) * grover_angle(N)
    return RotationState(m=int(m), amp_target=math.sin(angle), amp_rest=math.cos(angle))


def success_probability(N: int, m: int) -> float:
    return rotation_step(N, m).success_probability


def optimal_steps(N: int) -> int:
    """Iteration count with the largest success probability.

    Starts from ``(m + 1/2) alpha = pi/2`` rounded half-up and probes the two
    neighbours; ties keep the rounded value.
    """
    N = _check_size(N)
    m0 = math.floor(math.pi / (2 * grover_angle(N)))  # round(pi/(2 alpha) - 1/2), half up
    best, best_p = m0, success_probability(N, m0)
    for m in (m0 - 1, m0 + 1):
        if m >= 0:
            p = success_probability(N, m)
            if p > best_p + 1e-15:
                best, best_p = m, p
    return best


def continuous_state(N: int, theta: float) -> np.ndarray:
    """Amplitudes of the continuous Grover state: ``sin(theta)`` on ``|0>``,
    ``cos(theta)/sqrt(N-1)`` elsewhere."""
    N = _check_size(N)
    psi = np.full(N, math.cos(theta) / math.sqrt(N - 1))
    psi[0] = math.sin(theta)
    return psi


def grover_family(N: int) -> PureStateFamily:
    """Continuous Grover path as a zero-phase pure-state family on ``(0, pi/2)``."""
    N = _check_size(N)

    def p(theta):
        out = np.full(N, math.cos(theta) ** 2 / (N - 1))
        out[0] = math.sin(theta) ** 2
        return out

    def p_dot(theta):
        s2 = math.sin(2 * theta)
        out = np.full(N, -s2 / (N - 1))
        out[0] = s2
        return out

    return PureStateFamily(p=p, p_dot=p_dot, domain=(0.0, math.pi / 2))


def statevector_oracle(n_qubits: int, target: int, m: int) -> float:
    """Probability of measuring ``target`` after ``m`` Grover iterations.

    Each iteration flips the sign of the target amplitude and then applies the
    diffusion ``2|s><s| - I`` to the full statevector.
    """
    if int(n_qubits) != n_qubits or not 1 <= n_qubits <= MAX_QUBITS:
        raise DomainError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    N = 2**n_qubits
    if not 0 <= target < N:
        raise DomainError(f"target {target} outside [0, {N})")
    if m < 0:
        raise DomainError(f"step count must be nonnegative, got {m}")
    psi = np.full(N, 1.0 / math.sqrt(N))
    for _ in range(m):
        psi[target] = -psi[target]
        psi = 2.0 * psi.mean() - psi
    return float(psi[target] ** 2)
