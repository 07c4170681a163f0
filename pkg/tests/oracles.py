"""Independent oracles used to freeze expected values.

Everything here recomputes quantities through a different route than the
library (closed forms, eigendecompositions, binary matrix powering) so the
tests stay meaningful.
"""

import numpy as np


def two_state_stationary(p: float, q: float) -> np.ndarray:
    """Closed form (q, p) / (p + q) for [[1-p, p], [q, 1-q]]."""
    return np.array([q / (p + q), p / (p + q)])


def two_state_worst_gap(p: float, q: float, T: int) -> float:
    """Worst Dirac-start TV gap after T steps, max(pi) * |1 - p - q|^T."""
    lam = abs(1.0 - p - q)
    return float(two_state_stationary(p, q).max() * lam**T)


def two_state_tmix(p: float, q: float, eps: float, cap: int = 10_000) -> int:
    for T in range(1, cap + 1):
        if two_state_worst_gap(p, q, T) <= eps:
            return T
    raise AssertionError("closed-form mixing time exceeded the cap")


def stationary_eig(P: np.ndarray) -> np.ndarray:
    """Left eigenvector of eigenvalue 1, via a full eigendecomposition."""
    vals, vecs = np.linalg.eig(P.T)
    idx = int(np.argmin(np.abs(vals - 1.0)))
    pi = np.real(vecs[:, idx])
    pi = np.abs(pi)
    return pi / pi.sum()


def tv(a: np.ndarray, b: np.ndarray) -> float:
    return float(0.5 * np.abs(np.asarray(a) - np.asarray(b)).sum())


def brute_mixing_time(P: np.ndarray, eps: float, cap: int = 10_000) -> int:
    """Mixing time via binary matrix powering, independent of the scan."""
    pi = stationary_eig(P)
    for T in range(1, cap + 1):
        M = np.linalg.matrix_power(P, T)
        if 0.5 * np.abs(M - pi).sum(axis=1).max() <= eps:
            return T
    raise AssertionError("brute-force mixing time exceeded the cap")


def corridor_oracle(P0: np.ndarray, P1: np.ndarray, T: int):
    """Recompute the corridor with eigen-based stationary solves."""
    mu = stationary_eig(P0)
    mus, targets, gaps = [], [], []
    for k in range(1, T + 1):
        t = k / T
        Pt = (1.0 - t) * P0 + t * P1
        mu = mu @ Pt
        target = stationary_eig(Pt)
        mus.append(mu.copy())
        targets.append(target)
        gaps.append(tv(mu, target))
    return np.array(mus), np.array(targets), np.array(gaps)


def adiabatic_distance_oracle(P0: np.ndarray, P1: np.ndarray, T: int) -> float:
    M = P0.copy()
    for k in range(1, T + 1):
        t = k / T
        M = M @ ((1.0 - t) * P0 + t * P1)
    pi1 = stationary_eig(P1)
    return float(0.5 * np.abs(M - pi1).sum(axis=1).max())
