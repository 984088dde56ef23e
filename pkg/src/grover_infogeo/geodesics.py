"""Geodesics of one-parameter metrics ``g(theta) = F(theta)``.

The geodesic equation ``theta'' + F'/(2F) theta'^2 = 0`` has the first
integral ``sqrt(F) theta' = const``. :func:`solve_geodesic` uses it: the
unit-speed arc length ``s(theta)`` is a quadrature of ``sqrt(F)`` and is
inverted by bracketed root finding. A fixed-step RK4 shooting solve of the
second-order equation is run alongside as an independent check.

The second half of the module covers actual paths without constant Fisher
information: the integral ``I_N(q0)`` and the implicit equation
``I_N(q0) = theta/sqrt(N-1) + C_N``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .exceptions import ConvergenceError, DomainError
from .paths import SymmetricProbabilityPath, model_iv_el_system

ScalarFn = Callable[[float], float]

QUAD_TOL = 1e-10
CROSSCHECK_TOL = 1e-6
SPEED_TOL = 1e-6
Q0_MAX = 1.0 - 1e-9


def _quad(f: ScalarFn, a: float, b: float, tol: float = QUAD_TOL) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=1e-13, limit=200)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"quadrature on [{a:g}, {b:g}] did not converge: {exc}") from exc
    if not math.isfinite(val):
        raise DomainError(f"integral on [{a:g}, {b:g}] is not finite")
    return val, err


# Closed-form metrics F and F' of the three explicit models.
def grover_metric(theta: float) -> float:
    return 4.0


def grover_metric_prime(theta: float) -> float:
    return 0.0


def model_ii_metric(theta: float) -> float:
    return 4.0 / (1.0 - theta * theta)


def model_ii_metric_prime(theta: float) -> float:
    return 8.0 * theta / (1.0 - theta * theta) ** 2


@dataclass(frozen=True)
class GeodesicSolution:
    """Sampled geodesic ``theta(tau)`` between two boundary values.

    ``length`` is the metric length of the curve and ``duration`` the time a
    unit-speed traversal takes; they coincide for a geodesic. ``speed_defect``
    is the largest deviation of ``sqrt(F) |d theta/ds|`` from 1 over interior
    samples of the unit-speed parametrization, and ``crosscheck_delta`` the
    sup-norm gap between the quadrature and RK4 routes (``nan`` if skipped).
    """

    theta_i: float
    theta_f: float
    tau_i: float
    tau_f: float
    tau: np.ndarray
    theta: np.ndarray
    length: float
    duration: float
    method: str
    speed_defect: float = math.nan
    crosscheck_delta: float = math.nan
    error_estimate: float = 0.0

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.tau.tolist(), self.theta.tolist()))


def _check_metric(F: ScalarFn, theta_i: float, theta_f: float, points: int = 257) -> None:
    for t in np.linspace(theta_i, theta_f, points):
        try:
            val = F(float(t))
        except (ZeroDivisionError, ValueError) as exc:
            raise DomainError(f"metric undefined at theta={t:.6g}: {exc}") from exc
        if not math.isfinite(val) or val <= 0:
            raise DomainError(f"metric F({t:.6g}) = {val!r} is not finite and positive")


def geodesic_length(F: ScalarFn, theta_i: float, theta_f: float) -> float:
    """Length ``int sqrt(F) d theta`` of the coordinate interval."""
    return _length(F, theta_i, theta_f)[0]


def _length(F: ScalarFn, theta_i: float, theta_f: float) -> tuple[float, float]:
    if theta_f < theta_i:
        raise DomainError(f"need theta_i <= theta_f, got ({theta_i}, {theta_f})")
    if theta_f == theta_i:
        return 0.0, 0.0
    _check_metric(F, theta_i, theta_f)
    return _quad(lambda t: math.sqrt(F(t)), theta_i, theta_f)


def _rk4_endpoint(F, F_prime, theta0, v0, tau_i, tau_f, steps, sample_every):
    h = (tau_f - tau_i) / steps

    def rhs(th, v):
        return v, -F_prime(th) / (2.0 * F(th)) * v * v

    th, v = theta0, v0
    out = [th]
    for n in range(1, steps + 1):
        k1 = rhs(th, v)
        k2 = rhs(th + 0.5 * h * k1[0], v + 0.5 * h * k1[1])
        k3 = rhs(th + 0.5 * h * k2[0], v + 0.5 * h * k2[1])
        k4 = rhs(th + h * k3[0], v + h * k3[1])
        th += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        v += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        if not math.isfinite(th):
            raise ConvergenceError("RK4 trajectory left the metric domain")
        if n % sample_every == 0:
            out.append(th)
    return np.array(out), v


def shoot_geodesic(F: ScalarFn, F_prime: ScalarFn, theta_i: float, theta_f: float,
                   tau_i: float, tau_f: float, samples: int = 101,
                   steps_per_sample: int = 20, max_iter: int = 50):
    """Fixed-step RK4 shooting on the initial velocity.

    Starts from the chord slope and runs secant updates until the endpoint
    hits ``theta_f`` to ``1e-13``. Returns ``(theta_samples, v0)``.
    """
    steps = (samples - 1) * steps_per_sample

    def miss(v0):
        try:
            traj, _ = _rk4_endpoint(F, F_prime, theta_i, v0, tau_i, tau_f, steps, steps_per_sample)
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise ConvergenceError(f"RK4 shot with v0={v0:g} failed: {exc}") from exc
        return traj[-1] - theta_f, traj

    v_a = (theta_f - theta_i) / (tau_f - tau_i)
    v_b = 0.9 * v_a
    g_a, traj = miss(v_a)
    g_b, _ = miss(v_b)
    for _ in range(max_iter):
        if abs(g_a) < 1e-13:
            return traj, v_a
        if g_a == g_b:
            break
        v_a, v_b, g_b = v_a - g_a * (v_a - v_b) / (g_a - g_b), v_a, g_a
        g_a, traj = miss(v_a)
    if abs(g_a) < 1e-11:
        return traj, v_a
    raise ConvergenceError(f"shooting did not converge: endpoint miss {g_a:.3e}")


def solve_geodesic(F: ScalarFn, F_prime: ScalarFn, theta_i: float, theta_f: float,
                   tau_i: float = 0.0, tau_f: float | None = None, samples: int = 101,
                   method: str = "quadrature", cross_check: bool = True) -> GeodesicSolution:
    """Geodesic with ``theta(tau_i) = theta_i`` and ``theta(tau_f) = theta_f``.

    ``tau_f`` defaults to ``tau_i + length`` (unit speed). Otherwise the
    unit-speed solution is rescaled affinely onto ``[tau_i, tau_f]``.

    Raises:
        DomainError: on ``theta_i >= theta_f``, ``tau_f <= tau_i`` or a metric
            that is not finite and positive on the interval.
        ConvergenceError: if the quadrature and RK4 routes differ by more than
            ``1e-6`` or the unit-speed check fails.
    """
    if not theta_i < theta_f:
        raise DomainError(f"need theta_i < theta_f, got ({theta_i}, {theta_f})")
    if method not in ("quadrature", "rk4"):
        raise ValueError(f"unknown method {method!r}")
    length, err = _length(F, theta_i, theta_f)
    if tau_f is None:
        tau_f = tau_i + length
    if not tau_f > tau_i:
        raise DomainError(f"need tau_i < tau_f, got ({tau_i}, {tau_f})")
    tau = np.linspace(tau_i, tau_f, samples)

    def integrand(t):
        return math.sqrt(F(t))

    theta_q = np.empty(samples)
    theta_q[0] = theta_i
    arc = 0.0
    prev = theta_i
    for j in range(1, samples - 1):
        target = length * (tau[j] - tau_i) / (tau_f - tau_i)
        base = arc
        t_j = optimize.brentq(lambda t: base + _quad(integrand, prev, t)[0] - target,
                              prev, theta_f, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        arc = base + _quad(integrand, prev, t_j)[0]
        theta_q[j] = prev = t_j
    theta_q[-1] = theta_f
    duration = arc + _quad(integrand, prev, theta_f)[0]

    speed_defect = _unit_speed_defect(F, theta_i, theta_f, theta_q[1:-1])
    if speed_defect > SPEED_TOL:
        raise ConvergenceError(f"unit-speed check failed: defect {speed_defect:.3e}")

    theta_rk, delta = None, math.nan
    if method == "rk4" or cross_check:
        theta_rk, v0 = shoot_geodesic(F, F_prime, theta_i, theta_f, tau_i, tau_f, samples)
        delta = float(np.max(np.abs(theta_rk - theta_q)))
        if delta > CROSSCHECK_TOL:
            raise ConvergenceError(f"quadrature and RK4 geodesics differ by {delta:.3e}")

    if method == "rk4":
        # the conserved speed sqrt(F) theta' times the tau span is the unit-speed duration
        duration = math.sqrt(F(theta_i)) * v0 * (tau_f - tau_i)
        theta_out = theta_rk
    else:
        theta_out = theta_q
    return GeodesicSolution(
        theta_i=theta_i, theta_f=theta_f, tau_i=tau_i, tau_f=tau_f, tau=tau,
        theta=theta_out, length=length, duration=duration, method=method,
        speed_defect=speed_defect, crosscheck_delta=delta, error_estimate=err,
    )


def _unit_speed_defect(F: ScalarFn, theta_i: float, theta_f: float, interior: np.ndarray) -> float:
    """Check ``sqrt(F) d theta/ds = 1`` by differencing the inverted arc length."""
    if interior.size == 0:
        return 0.0

    def integrand(x):
        return math.sqrt(F(x))

    def step_off(t, ds):
        # theta at signed arc distance ds from t
        guess = ds / integrand(t)
        lo, hi = sorted((t, t + 2 * guess))
        return optimize.brentq(lambda x: math.copysign(_quad(integrand, *sorted((t, x)))[0], x - t) - ds,
                               lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    ds = 1e-4 * (theta_f - theta_i)
    defect = 0.0
    for t in interior:
        dtheta = (step_off(t, ds) - step_off(t, -ds)) / (2 * ds)
        defect = max(defect, abs(integrand(t) * dtheta - 1.0))
    return defect


def _closed_form(theta_fn, theta_i, theta_f, tau_i, tau_f, samples, length):
    tau = np.linspace(tau_i, tau_f, samples)
    return GeodesicSolution(
        theta_i=theta_i, theta_f=theta_f, tau_i=tau_i, tau_f=tau_f, tau=tau,
        theta=theta_fn(tau), length=length, duration=length, method="closed-form",
    )


def grover_geodesic(theta_i: float, theta_f: float, tau_i: float = 0.0,
                    tau_f: float | None = None, samples: int = 101) -> GeodesicSolution:
    """Straight line ``theta(tau)`` for the constant metric ``F = 4``."""
    length = 2.0 * (theta_f - theta_i)
    tau_f = tau_i + length if tau_f is None else tau_f
    span = tau_f - tau_i
    return _closed_form(
        lambda tau: (theta_i * tau_f - theta_f * tau_i) / span + (theta_f - theta_i) / span * tau,
        theta_i, theta_f, tau_i, tau_f, samples, length,
    )


def model_ii_geodesic(theta_i: float, theta_f: float, tau_i: float = 0.0,
                      tau_f: float | None = None, samples: int = 101) -> GeodesicSolution:
    """``theta(tau) = sin(C0 (tau + C1))`` for ``F = 4/(1 - theta^2)``."""
    a_i, a_f = math.asin(theta_i), math.asin(theta_f)
    length = 2.0 * (a_f - a_i)
    tau_f = tau_i + length if tau_f is None else tau_f
    c0 = (a_f - a_i) / (tau_f - tau_i)
    c1 = (tau_f * a_i - tau_i * a_f) / (a_f - a_i)
    return _closed_form(lambda tau: np.sin(c0 * (c1 + tau)),
                        theta_i, theta_f, tau_i, tau_f, samples, length)


def duration_gap(epsilon: float) -> float:
    """Extra unit-speed duration of Model II over Grover on ``[0, epsilon]``.

    Integrates ``sqrt(F_II) - sqrt(F_G)`` directly so that the two nearly
    equal lengths never get subtracted. Approximately ``epsilon^3 / 3``.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    return _quad(lambda t: math.sqrt(model_ii_metric(t)) - 2.0, 0.0, epsilon)[0]


# --- actual paths without constant Fisher information --------------------------

@dataclass(frozen=True)
class EllipticResult:
    q0: float
    N: int
    value: float
    quadrature_error_estimate: float


def _elliptic_weight(u: float, N: int) -> float:
    c = math.cos(u)
    return ((N - 1) * c * c + (1 - c * c)) ** -1.5


def elliptic_I_N(q0: float, N: int, tol: float = QUAD_TOL) -> EllipticResult:
    """``I_N(q0) = int_0^q0 dq / [sqrt(1-q^2) ((N-1)(1-q^2) + q^2)^(3/2)]``.

    Evaluated after ``q = sin(u)``, which removes the endpoint singularity:
    ``I_N(q0) = int_0^asin(q0) du / ((N-1) cos^2 u + sin^2 u)^(3/2)``.
    """
    if int(N) != N or N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not 0.0 <= q0 < 1.0:
        raise DomainError(f"q0 must lie in [0, 1), got {q0}")
    if q0 == 0.0:
        return EllipticResult(q0=0.0, N=int(N), value=0.0, quadrature_error_estimate=0.0)
    val, err = _quad(lambda u: _elliptic_weight(u, N), 0.0, math.asin(q0), tol)
    return EllipticResult(q0=float(q0), N=int(N), value=val, quadrature_error_estimate=err)


def elliptic_integrand(q: float, N: int) -> float:
    return 1.0 / (math.sqrt(1 - q * q) * ((N - 1) * (1 - q * q) + q * q) ** 1.5)


def incomplete_elliptic_e(phi: float, m: float) -> float:
    """``E(phi | m) = int_0^phi sqrt(1 - m sin^2 t) dt``."""
    return _quad(lambda t: math.sqrt(1.0 - m * math.sin(t) ** 2), 0.0, phi)[0]


def elliptic_I_N_closed_form(q0: float, N: int) -> float:
    """Closed form of ``I_N`` in terms of ``E(asin q0 | (N-2)/(N-1))``.

    Kept as a cross-check of :func:`elliptic_I_N`, never as the reference.
    """
    q2 = q0 * q0
    a = N * (1 - q2) + 2 * q2 - 1
    e = incomplete_elliptic_e(math.asin(q0), (N - 2) / (N - 1))
    return math.sqrt(a) / (N - 1) * (
        (N - 2) * q0 * math.sqrt(1 - q2) / (N * (q2 - 1) - 2 * q2 + 1)
        + e / math.sqrt(a / (N - 1))
    )


def model_iv_velocity(q0: float, N: int) -> tuple[float, float]:
    """``q0'`` and ``q0''`` along a solution of ``I_N(q0) = theta/sqrt(N-1) + C``."""
    m = N - 1
    s = math.sqrt(1 - q0 * q0)
    w = m - (N - 2) * q0 * q0
    f = s * w**1.5 / math.sqrt(m)
    df = (-q0 / s * w**1.5 + s * 1.5 * math.sqrt(w) * (-2 * (N - 2) * q0)) / math.sqrt(m)
    return f, df * f


@dataclass(frozen=True)
class ModelIVSolution:
    """Samples of ``q0(theta)`` solving ``I_N(q0) = theta/sqrt(N-1) + C_N``.

    ``residual`` is ``I_N(q0) - rhs`` per point. ``el_residual_q0`` and
    ``el_residual_qbar`` evaluate :func:`~grover_infogeo.paths.model_iv_el_system`
    along the solution; the non-target residual is where the implicit
    solution can fail the coupled system for ``N > 2``.
    """

    N: int
    C_N: float
    theta: np.ndarray
    q0: np.ndarray
    residual: np.ndarray
    el_residual_q0: np.ndarray
    el_residual_qbar: np.ndarray


def elliptic_range(N: int) -> float:
    """Largest attainable value ``I_N(1 - 1e-9)``."""
    return elliptic_I_N(Q0_MAX, N).value


def _invert_elliptic(rhs: float, N: int, upper: float, theta: float) -> float:
    if rhs == 0.0:
        return 0.0
    if not 0.0 < rhs <= upper:
        raise DomainError(
            f"theta={theta:g}: right-hand side {rhs:.6g} outside the range [0, {upper:.6g}] of I_{N}"
        )
    try:
        return optimize.brentq(lambda q: elliptic_I_N(q, N).value - rhs, 0.0, Q0_MAX,
                               xtol=1e-13, rtol=4 * np.finfo(float).eps)
    except ValueError as exc:
        raise ConvergenceError(f"root finding for q0 failed at theta={theta:g}: {exc}") from exc


def solve_model_iv(N: int, C_N: float, theta_grid) -> ModelIVSolution:
    """Solve ``I_N(q0) = theta/sqrt(N-1) + C_N`` pointwise on ``theta_grid``.

    ``I_N`` is strictly increasing, so each point is a bracketed root find on
    ``q0 in [0, 1 - 1e-9]``.

    Raises:
        DomainError: if a right-hand side falls outside the range of ``I_N``.
    """
    if int(N) != N or N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    theta = np.atleast_1d(np.asarray(theta_grid, dtype=float))
    upper = elliptic_range(N)
    q0 = np.empty_like(theta)
    res = np.empty_like(theta)
    r0 = np.full_like(theta, np.nan)
    rb = np.full_like(theta, np.nan)
    for i, t in enumerate(theta):
        rhs = t / math.sqrt(N - 1) + C_N
        q = _invert_elliptic(rhs, N, upper, t)
        q0[i] = q
        res[i] = elliptic_I_N(q, N).value - rhs
        if 0.0 < q < 1.0:
            dq, ddq = model_iv_velocity(q, N)
            r0[i], rb[i] = model_iv_el_system(N, q, dq, ddq, t)
    return ModelIVSolution(N=int(N), C_N=float(C_N), theta=theta, q0=q0, residual=res,
                           el_residual_q0=r0, el_residual_qbar=rb)


def model_iv_path(N: int, C_N: float = 0.0) -> SymmetricProbabilityPath:
    """Symmetric path with ``p0 = q0^2`` from :func:`solve_model_iv`.

    Derivatives come from the first-order equation ``q0' = f(q0)`` that the
    implicit relation encodes.
    """
    upper = elliptic_range(N)
    scale = math.sqrt(N - 1)
    domain = (-C_N * scale, (upper - C_N) * scale)

    def q(theta):
        return _invert_elliptic(theta / scale + C_N, N, upper, theta)

    def p0(theta):
        return q(theta) ** 2

    def p0_dot(theta):
        qq = q(theta)
        return 2 * qq * model_iv_velocity(qq, N)[0]

    def p0_ddot(theta):
        qq = q(theta)
        dq, ddq = model_iv_velocity(qq, N)
        return 2 * dq * dq + 2 * qq * ddq

    return SymmetricProbabilityPath(N=N, p0=p0, p0_dot=p0_dot, p0_ddot=p0_ddot,
                                    domain=domain, label="model4")
