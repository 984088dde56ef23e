import math

import numpy as np
import pytest

from grover_infogeo import (
    DomainError,
    PureStateFamily,
    SymmetricProbabilityPath,
    current_density,
    el_residual,
    fisher_info_function,
    grover_path,
    kinetic_energy,
    model_ii_path,
    model_iii_path,
    model_iv_el_system,
    model_iv_path,
)
from grover_infogeo.paths import fisher_derivative, kinetic_decomposition, q_coordinates
from grover_infogeo.quantum_metrics import fisher_term

from helpers import random_family


def test_grover_fisher_is_four():
    path = grover_path(16)
    F = [fisher_info_function(path, t) for t in path.grid()]
    assert max(abs(f - 4.0) for f in F) < 1e-12


def test_grover_fisher_finite_difference():
    path = SymmetricProbabilityPath(N=16, p0=lambda t: math.sin(t) ** 2, domain=(0, math.pi / 2))
    F = [fisher_info_function(path, t) for t in path.grid()]
    assert max(abs(f - 4.0) for f in F) < 1e-5


def test_grover_q_coordinates():
    (q0, dq0, ddq0), (qb, dqb, ddqb) = q_coordinates(grover_path(5), 0.7)
    assert (q0, dq0, ddq0) == pytest.approx((math.sin(0.7), math.cos(0.7), -math.sin(0.7)), abs=1e-14)
    s = 0.5  # 1/sqrt(N-1)
    assert (qb, dqb, ddqb) == pytest.approx((s * math.cos(0.7), -s * math.sin(0.7), -s * math.cos(0.7)), abs=1e-14)


@pytest.mark.parametrize("theta", [0.1, 0.3, 0.5, 0.9])
def test_model_ii_fisher(theta):
    path = model_ii_path(8)
    assert fisher_info_function(path, theta) == pytest.approx(4 / (1 - theta**2), rel=1e-13)
    assert fisher_derivative(path, theta) == pytest.approx(8 * theta / (1 - theta**2) ** 2, rel=1e-12)


def test_model_ii_fisher_example():
    assert fisher_info_function(model_ii_path(4), 0.5) == pytest.approx(16 / 3, rel=1e-14)


def test_model_iii_system():
    path = model_iii_path(10)
    assert path.value(0.0) == pytest.approx(0.5, abs=1e-16)
    assert fisher_info_function(path, 0.3) == pytest.approx(4.0, abs=1e-12)
    for t in path.grid():
        p0, v = path.value(t), path.velocity(t)
        assert abs(v * v - 4 * p0 * (1 - p0)) < 1e-10
        assert path.probabilities(t).sum() == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("N", [2, 4, 64, 1024])
@pytest.mark.parametrize("make", [grover_path, model_ii_path, model_iii_path])
def test_collapsed_fisher_matches_explicit_sum(N, make):
    path = make(N)
    family = path.to_pure_state_family()
    for t in path.grid(points=7):
        assert fisher_info_function(path, t) == pytest.approx(fisher_term(family, t), abs=1e-10)


def test_boundary_rejected():
    with pytest.raises(DomainError, match="simplex boundary"):
        fisher_info_function(model_ii_path(4), 0.0)
    with pytest.raises(DomainError):
        SymmetricProbabilityPath(N=1, p0=lambda t: t)


def test_grover_is_actual():
    report = el_residual(grover_path(32), lam=1.0)
    assert report.sup_norm < 1e-9
    assert len(report.theta_grid) == 101


@pytest.mark.parametrize("N", [2, 4, 1024])
def test_model_ii_residual_oracle(N):
    report = el_residual(model_ii_path(N), 1.0, [0.5])
    # derived oracle for the target component: theta (1/sqrt(1-theta^2) - 1/(1-theta^2))
    oracle = 0.5 * (1 / math.sqrt(0.75) - 1 / 0.75)
    assert report.residual_q0[0] == pytest.approx(oracle, rel=1e-10)
    assert abs(report.residual_q0[0]) == pytest.approx(0.0893, rel=0.02)


def test_model_ii_not_actual_for_any_multiplier():
    path = model_ii_path(4)
    for lam in np.linspace(0.5, 2.0, 16):
        assert el_residual(path, lam).sup_norm > 0.05


def test_model_iii_residual_is_computed():
    # p0 = cos^2(theta - pi/4), so the path is a shifted Grover path and the
    # computed residual vanishes
    assert el_residual(model_iii_path(6), 1.0).sup_norm < 1e-9


def test_stationary_path_rejected():
    path = SymmetricProbabilityPath(N=3, p0=lambda t: 0.4, p0_dot=lambda t: 0.0,
                                    p0_ddot=lambda t: 0.0, domain=(0, 1))
    with pytest.raises(DomainError, match="stationary"):
        el_residual(path, 1.0)


def test_parametric_independence_classification():
    def constant(path):
        F = [fisher_info_function(path, t) for t in path.grid()]
        return max(F) - min(F) < 1e-9

    assert constant(grover_path(8))
    assert constant(model_iii_path(8))
    assert not constant(model_ii_path(8))


def test_grover_kinetic_energy():
    family = grover_path(50).to_pure_state_family()
    for t in (0.2, 0.8, 1.3):
        assert kinetic_energy(family, t) == pytest.approx(1.0, abs=1e-12)


def _two_level_phase_family():
    return PureStateFamily(
        p=lambda t: np.array([math.cos(t) ** 2, math.sin(t) ** 2]),
        p_dot=lambda t: np.array([-math.sin(2 * t), math.sin(2 * t)]),
        phi=lambda t: np.array([0.0, t]),
        phi_dot=lambda t: np.array([0.0, 1.0]),
        domain=(0, math.pi / 2),
    )


def test_kinetic_energy_with_phase():
    family = _two_level_phase_family()
    assert kinetic_energy(family, math.pi / 4) == pytest.approx(1.5, abs=1e-14)
    assert kinetic_decomposition(family, math.pi / 4) == pytest.approx((1.0, 0.5), abs=1e-14)


def test_kinetic_decomposition_random(rng):
    for _ in range(20):
        family = random_family(rng, int(rng.integers(2, 12)))
        t = rng.uniform(-2, 2)
        a, b = kinetic_decomposition(family, t)
        assert kinetic_energy(family, t) == pytest.approx(a + b, abs=1e-10)


def test_current_density_is_phase_velocity(rng):
    family = _two_level_phase_family()
    assert current_density(family, 0.4, 1) == pytest.approx(1.0, abs=1e-14)
    assert current_density(family, 0.4, 0) == pytest.approx(0.0, abs=1e-14)
    fam = random_family(rng, 5)
    w = fam.phase_velocities(0.3)
    for k in range(5):
        assert current_density(fam, 0.3, k) == pytest.approx(w[k], abs=1e-12)


def test_current_density_undefined_at_zero():
    with pytest.raises(DomainError):
        current_density(PureStateFamily(p=lambda t: np.array([1.0, 0.0])), 0.1, 1)


@pytest.mark.parametrize("c", [0.0, 0.3])
def test_model_iv_system_two_states(c):
    for t in (0.2, 0.5, 0.9):
        q, dq, ddq = math.sin(t + c), math.cos(t + c), -math.sin(t + c)
        r0, rb = model_iv_el_system(2, q, dq, ddq, t)
        assert abs(r0) < 1e-9 and abs(rb) < 1e-9


def test_model_iv_system_detects_non_solution():
    r0, rb = model_iv_el_system(2, 0.5, 1.0, 0.0)
    assert abs(r0) > 1e-3


def test_model_iv_system_exact_lagrangian_large_N():
    for t in (0.2, 0.6, 1.0):
        q, dq, ddq = math.sin(t), math.cos(t), -math.sin(t)
        r0, rb = model_iv_el_system(64, q, dq, ddq, t, exact_lagrangian=True)
        assert abs(r0) < 1e-9 and abs(rb) < 1e-9


def test_model_iv_system_default_lagrangian_fails_second_equation():
    from grover_infogeo.geodesics import model_iv_velocity, solve_model_iv

    sol = solve_model_iv(5, 0.0, [0.3, 0.8])
    assert np.all(np.abs(sol.el_residual_q0) < 1e-8)
    assert np.all(np.abs(sol.el_residual_qbar) > 1e-3)
    q = sol.q0[0]
    dq, ddq = model_iv_velocity(q, 5)
    assert model_iv_el_system(5, q, dq, ddq)[1] == sol.el_residual_qbar[0]


def test_model_iv_path_two_states_is_grover_like():
    path = model_iv_path(2)
    for t in (0.2, 0.7, 1.2):
        assert path.value(t) == pytest.approx(math.sin(t) ** 2, abs=1e-10)
        assert fisher_info_function(path, t) == pytest.approx(4.0, abs=1e-8)


def test_model_iv_path_not_parametric_independent():
    path = model_iv_path(5)
    lo, hi = path.domain
    F = [fisher_info_function(path, t) for t in np.linspace(lo + 0.1, hi - 0.1, 9)]
    assert max(F) - min(F) > 0.1
