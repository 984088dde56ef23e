"""Random test objects shared by the suites."""

import numpy as np

from grover_infogeo import PureStateFamily


def random_family(rng, N, amp=0.8, freq=1.5, phase_amp=1.0, with_phases=True):
    """Smooth softmax-moduli family with sinusoidal plus linear phases.

    Derivatives are analytic.
    """
    a = rng.uniform(-amp, amp, N)
    b = rng.uniform(0.3, freq, N)
    c = rng.uniform(0, 2 * np.pi, N)
    d = rng.uniform(-phase_amp, phase_amp, N)
    e = rng.uniform(0.3, freq, N)
    g = rng.uniform(-1, 1, N)

    def p(t):
        s = a * np.sin(b * t + c)
        w = np.exp(s - s.max())
        return w / w.sum()

    def p_dot(t):
        pp = p(t)
        ds = a * b * np.cos(b * t + c)
        return pp * (ds - pp @ ds)

    if not with_phases:
        return PureStateFamily(p=p, p_dot=p_dot)
    return PureStateFamily(
        p=p,
        p_dot=p_dot,
        phi=lambda t: d * np.sin(e * t) + g * t,
        phi_dot=lambda t: d * e * np.cos(e * t) + g,
    )


def random_density(rng, n, floor=1e-3):
    """Full-rank density matrix mixed with the identity so eigenvalues >= floor/n."""
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    W = G @ G.conj().T
    W /= np.trace(W).real
    rho = (1 - floor) * W + floor * np.eye(n) / n
    return 0.5 * (rho + rho.conj().T)


def random_hermitian(rng, n, traceless=False):
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    H = 0.5 * (G + G.conj().T)
    if traceless:
        H -= np.trace(H) / n * np.eye(n)
    return H


def random_unitary(rng, n):
    Q, R = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))
