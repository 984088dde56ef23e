import math

import numpy as np
import pytest

from grover_infogeo import (
    DomainError,
    GroverInstance,
    continuous_state,
    grover_angle,
    optimal_steps,
    rotation_step,
    statevector_oracle,
)
from grover_infogeo.grover import success_probability


@pytest.mark.parametrize("N, expected", [(4, math.pi / 3), (2, math.pi / 2)])
def test_grover_angle_exact(N, expected):
    assert grover_angle(N) == pytest.approx(expected, rel=1e-15)


def test_grover_angle_large_N():
    N = 10**6
    assert grover_angle(N) == pytest.approx(2 / math.sqrt(N), rel=1e-6)


@pytest.mark.parametrize("N", [1, 0, -3, 2.5])
def test_grover_angle_rejects_small(N):
    with pytest.raises(DomainError, match="N must be"):
        grover_angle(N)


def test_instance_invariants():
    inst = GroverInstance(N=64, target_index=17)
    assert math.sin(inst.alpha / 2) == pytest.approx(1 / 8, abs=1e-12)
    with pytest.raises(DomainError):
        GroverInstance(N=4, target_index=4)


@pytest.mark.parametrize("N", [2, 3, 17, 1024])
def test_zero_steps_is_uniform(N):
    assert rotation_step(N, 0).success_probability == pytest.approx(1 / N, rel=1e-12)


def test_rotation_examples():
    s = rotation_step(GroverInstance(4), 1)
    assert s.success_probability == pytest.approx(1.0, abs=1e-12)
    assert rotation_step(1024, 25).success_probability >= 0.999
    for m in range(10):
        r = rotation_step(37, m)
        assert r.amp_target**2 + r.amp_rest**2 == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        rotation_step(4, -1)


@pytest.mark.parametrize("N, expected", [(4, 1), (2, 1)])
def test_optimal_steps_small(N, expected):
    assert optimal_steps(N) == expected


def test_optimal_steps_large():
    N = 2**20
    assert abs(optimal_steps(N) - math.pi * math.sqrt(N) / 4) <= 1


@pytest.mark.parametrize("N", [2, 3, 4, 5, 7, 10, 64, 100, 1000, 4096, 99991])
def test_optimal_steps_is_local_max_and_close_to_one(N):
    m = optimal_steps(N)
    p = success_probability(N, m)
    for k in (m - 1, m + 1):
        if k >= 0:
            assert p >= success_probability(N, k)
    if N >= 4:
        assert p >= 1 - grover_angle(N) ** 2 / 4


def test_continuous_state_examples():
    psi = continuous_state(7, 0.0)
    np.testing.assert_allclose(psi**2, [0] + [1 / 6] * 6, atol=1e-16)
    psi = continuous_state(7, math.pi / 2)
    np.testing.assert_allclose(psi**2, [1] + [0] * 6, atol=1e-30)
    psi = continuous_state(5, math.pi / 4)
    np.testing.assert_allclose(psi**2, [0.5, 0.125, 0.125, 0.125, 0.125], rtol=1e-14)


@pytest.mark.parametrize("N", [2, 4, 11, 256])
def test_discrete_matches_continuous(N):
    alpha = grover_angle(N)
    for m in range(5):
        r = rotation_step(N, m)
        psi = continuous_state(N, (m + 0.5) * alpha)
        assert psi[0] == r.amp_target
        assert psi[1] == r.amp_rest / math.sqrt(N - 1)


def test_statevector_examples():
    for n in (1, 3, 5):
        assert statevector_oracle(n, 0, 0) == pytest.approx(1 / 2**n, rel=1e-14)
    assert statevector_oracle(2, 3, 1) == pytest.approx(1.0, abs=1e-14)
    m = optimal_steps(64)
    assert m == 6
    assert abs(statevector_oracle(6, 17, m) - success_probability(64, m)) < 1e-10


@pytest.mark.parametrize("args", [(0, 0, 1), (13, 0, 1), (3, 8, 1), (3, 0, -1)])
def test_statevector_rejects(args):
    with pytest.raises(DomainError):
        statevector_oracle(*args)


def test_statevector_four_dim_by_hand():
    # explicit 4-dim iteration: oracle flips target, diffusion reflects about the mean
    psi = np.full(4, 0.5)
    psi[3] *= -1
    psi = 2 * psi.mean() - psi
    np.testing.assert_allclose(psi, [0, 0, 0, 1], atol=1e-15)
