"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np

from qmaxent import (
    DensityOperator,
    HermitianOperator,
    make_density,
    make_hermitian,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def rand_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> HermitianOperator:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return make_hermitian(scale * (g + g.conj().T) / 2.0)


def rand_hermitian_radius(rng: np.random.Generator, dim: int, radius: float) -> HermitianOperator:
    """Random Hermitian operator rescaled to an exact spectral radius."""
    h = rand_hermitian(rng, dim)
    w = np.linalg.eigvalsh(h.entries)
    return make_hermitian(h.entries * (radius / np.abs(w).max()))


def rand_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases.conj()


def rand_density(
    rng: np.random.Generator, dim: int, min_eig: float = 0.0
) -> DensityOperator:
    """Random density operator; ``min_eig`` bounds the spectrum away from 0."""
    p = rng.random(dim)
    p /= p.sum()
    p = (1.0 - dim * min_eig) * p + min_eig
    u = rand_unitary(rng, dim)
    return make_density((u * p) @ u.conj().T)


def rand_spectrum_hermitian(
    rng: np.random.Generator, dim: int, low: float, high: float
) -> HermitianOperator:
    """Random Hermitian operator with eigenvalues uniform in [low, high]."""
    w = rng.uniform(low, high, size=dim)
    u = rand_unitary(rng, dim)
    return make_hermitian((u * w) @ u.conj().T)


def bloch_state(r) -> DensityOperator:
    r = np.asarray(r, dtype=float)
    return make_density(
        (np.eye(2) + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z) / 2.0
    )


def zero_pairing_tangent(
    rng: np.random.Generator, dim: int, centered: np.ndarray
) -> HermitianOperator:
    """Random unit-norm traceless Hermitian t with tr(centered t) = 0."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    t0 = (g + g.conj().T) / 2.0
    gram = np.array(
        [
            [float(dim), np.trace(centered).real],
            [np.trace(centered).real, np.trace(centered @ centered).real],
        ]
    )
    rhs = np.array([np.trace(t0).real, np.trace(centered @ t0).real])
    c = np.linalg.solve(gram, rhs)
    t = t0 - c[0] * np.eye(dim) - c[1] * centered
    return make_hermitian(t / np.linalg.norm(t, "fro"))


def bloch_feasible_max_entropy(observables, targets, n_points: int = 10**6):
    """Brute-force entropy maximization over qubit states meeting the constraints.

    Every qubit observable is c 1 + a . sigma, so each constraint is affine
    in the Bloch vector: the feasible set is an affine slice of the unit
    ball.  The slice is parametrized exactly and covered with ~n_points
    grid points (so every grid point satisfies the constraints to float
    precision), and the binary entropy of (1 +/- |r|)/2 is maximized by
    enumeration.  Returns (max entropy, argmax Bloch vector); (-inf, None)
    if the slice misses the ball.  Shares nothing with the multiplier
    solver.
    """
    rows, rhs = [], []
    for obs, target in zip(observables, targets):
        e = obs.entries
        c = np.trace(e).real / 2.0
        a = (
            np.array(
                [
                    np.trace(e @ SIGMA_X).real,
                    np.trace(e @ SIGMA_Y).real,
                    np.trace(e @ SIGMA_Z).real,
                ]
            )
            / 2.0
        )
        rows.append(a)
        rhs.append(target - c)
    rows = np.array(rows).reshape(len(rows), 3)
    rhs = np.array(rhs)
    r0, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    if np.abs(rows @ r0 - rhs).max() > 1e-9:
        return -np.inf, None
    _, s, vt = np.linalg.svd(rows)
    null = vt[int(np.sum(s > 1e-12)):].T
    k = null.shape[1]
    base = float(r0 @ r0)
    if base > 1.0 + 1e-12:
        return -np.inf, None
    room = max(1.0 - base, 0.0)

    def entropy_of_norm2(norm2):
        r = np.sqrt(np.clip(norm2, 0.0, 1.0))
        p = np.clip((1.0 + r) / 2.0, 1e-300, 1.0)
        q = np.clip((1.0 - r) / 2.0, 1e-300, 1.0)
        return -(p * np.log(p) + q * np.log(q))

    if k == 0:
        return float(entropy_of_norm2(base)), r0
    if k == 1:
        u = np.linspace(-np.sqrt(room), np.sqrt(room), n_points)
        values = entropy_of_norm2(base + u**2)
        i = int(np.argmax(values))
        return float(values[i]), r0 + null[:, 0] * u[i]
    side = int(np.sqrt(n_points))
    u = np.linspace(-np.sqrt(room), np.sqrt(room), side)
    uu, vv = np.meshgrid(u, u)
    norm2 = base + uu**2 + vv**2
    values = np.where(norm2 <= 1.0, entropy_of_norm2(norm2), -np.inf)
    i = np.unravel_index(int(np.argmax(values)), values.shape)
    return float(values[i]), r0 + null[:, 0] * uu[i] + null[:, 1] * vv[i]
