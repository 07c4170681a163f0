"""Validated stochastic matrices, distributions, and their basic operations.

Conventions used throughout the package:

* matrices are row stochastic and act on row vectors from the right,
  so one step of the chain is ``nu @ P``;
* a chain pair ``(P0, P1)`` defines the interpolated family
  ``P_t = (1 - t) P0 + t P1`` for ``t`` in ``[0, 1]``;
* total variation distance is half the l1 distance.

All types are immutable after construction and all operations are pure,
so everything here is safe to call concurrently.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeEntryError,
    NoConvergenceError,
    NotErgodicError,
    NotSquareError,
    OutOfRangeError,
    RowSumError,
)

ROW_SUM_TOLERANCE = 1e-9
DISTRIBUTION_TOLERANCE = 1e-12
STATIONARY_RESIDUAL_TOL = 1e-12

# Renormalization fixpoint: sums within a few ulp of 1.0 are left untouched,
# which makes validation idempotent (bitwise round trips) even for the rare
# rows where IEEE summation cannot land on 1.0 exactly.
_SUM_FIXPOINT_TOL = 1e-15


def _exact_simplex(vec):
    """Rescale a nonnegative vector in place so it sums to 1.0.

    After the division, rounding can leave the sum an ulp or two away from
    1; the drift is folded into the largest entry, which reaches a bit-exact
    sum in almost all cases and always lands within ``_SUM_FIXPOINT_TOL``.
    """
    s = vec.sum()
    if s <= 0.0:
        raise ValueError("cannot normalize a vector with nonpositive sum")
    if abs(s - 1.0) <= _SUM_FIXPOINT_TOL:
        return vec
    vec /= s
    # after the division the sum is within ~(n+1) ulp of 1; each compensation
    # step lands within ~2 ulp, i.e. inside the fixpoint ball
    for _ in range(8):
        drift = 1.0 - vec.sum()
        if drift == 0.0:
            break
        vec[int(np.argmax(vec))] += drift
    return vec


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """A validated row-stochastic n x n matrix (one-step kernel of a chain).

    Every entry lies in [0, 1] and every row sums to 1.0 (bit-exact in almost
    all cases, always within a couple of ulp; rows are renormalized on
    ingestion). Construct via :func:`validate_stochastic`.
    """

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] < 2:
            raise NotSquareError(f"expected a square matrix with n >= 2, got shape {e.shape}")
        if np.any(e < 0.0):
            raise NegativeEntryError("entries must be nonnegative")
        sums = e.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOLERANCE):
            bad = int(np.argmax(np.abs(sums - 1.0)))
            raise RowSumError(f"row {bad} sums to {sums[bad]!r}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability vector on n states."""

    mass: np.ndarray

    def __post_init__(self):
        m = np.array(self.mass, dtype=float)
        if m.ndim != 1 or m.shape[0] < 1:
            raise DimensionMismatchError(f"expected a 1-d vector, got shape {m.shape}")
        if np.any(m < 0.0):
            raise NegativeEntryError("mass must be nonnegative")
        s = m.sum()
        if abs(s - 1.0) > DISTRIBUTION_TOLERANCE:
            raise RowSumError(f"mass sums to {s!r}, not 1")
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    @property
    def n(self) -> int:
        return self.mass.shape[0]


@dataclass(frozen=True)
class StructureReport:
    """Connectivity summary of a kernel's transition graph.

    ``period`` is defined only for irreducible chains and is None otherwise;
    ``aperiodic`` is equivalent to ``period == 1``.
    """

    irreducible: bool
    period: int | None
    aperiodic: bool


@dataclass(frozen=True, eq=False)
class ChainPair:
    """A validated (P0, P1) pair defining an interpolated evolution.

    Both kernels must be irreducible and aperiodic and have the same
    dimension. For t in (0, 1) the interpolants inherit ergodicity: their
    edge set contains the union of the endpoint edge sets.
    """

    p0: StochasticMatrix
    p1: StochasticMatrix

    def __post_init__(self):
        if self.p0.n != self.p1.n:
            raise DimensionMismatchError(
                f"P0 has {self.p0.n} states but P1 has {self.p1.n}"
            )
        for label, kernel in (("P0", self.p0), ("P1", self.p1)):
            rep = structure(kernel)
            if not (rep.irreducible and rep.aperiodic):
                raise NotErgodicError(f"{label} is not irreducible and aperiodic: {rep}")

    @property
    def n(self) -> int:
        return self.p0.n

    @cached_property
    def pi0(self) -> Distribution:
        return stationary(self.p0)

    @cached_property
    def pi1(self) -> Distribution:
        return stationary(self.p1)


def validate_stochastic(raw, tolerance: float = ROW_SUM_TOLERANCE) -> StochasticMatrix:
    """Validate a raw square matrix and renormalize rows to exact sum 1.

    Entries in [-tolerance, 0) are clamped to 0. Raises
    :class:`NotSquareError`, :class:`NegativeEntryError` or
    :class:`RowSumError` when the input is not within tolerance of a
    row-stochastic matrix.
    """
    arr = np.array(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 2:
        raise NotSquareError(f"expected a square matrix with n >= 2, got shape {arr.shape}")
    if np.any(arr < -tolerance):
        i, j = np.unravel_index(int(np.argmin(arr)), arr.shape)
        raise NegativeEntryError(f"entry ({i}, {j}) = {arr[i, j]!r} is below -{tolerance!r}")
    sums = arr.sum(axis=1)
    off = np.abs(sums - 1.0)
    if np.any(off > tolerance):
        bad = int(np.argmax(off))
        raise RowSumError(f"row {bad} sums to {sums[bad]!r}, outside tolerance {tolerance!r}")
    fixed = np.clip(arr, 0.0, None)
    for i in range(fixed.shape[0]):
        _exact_simplex(fixed[i])
    return StochasticMatrix(fixed)


def validate_distribution(raw, tolerance: float = DISTRIBUTION_TOLERANCE) -> Distribution:
    """Validate a raw probability vector, renormalizing to exact sum 1."""
    vec = np.array(raw, dtype=float)
    if vec.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-d vector, got shape {vec.shape}")
    if np.any(vec < -tolerance):
        raise NegativeEntryError("vector has an entry below the tolerance")
    if abs(vec.sum() - 1.0) > tolerance:
        raise RowSumError(f"vector sums to {vec.sum()!r}, outside tolerance {tolerance!r}")
    _exact_simplex(np.clip(vec, 0.0, None, out=vec))
    return Distribution(vec)


def _bfs_levels(adj: np.ndarray, start: int) -> np.ndarray:
    """Breadth-first levels from ``start``; unreachable states get -1."""
    n = adj.shape[0]
    level = np.full(n, -1, dtype=int)
    level[start] = 0
    frontier = np.zeros(n, dtype=bool)
    frontier[start] = True
    depth = 0
    while frontier.any():
        depth += 1
        nxt = adj[frontier].any(axis=0) & (level < 0)
        level[nxt] = depth
        frontier = nxt
    return level


def structure(P: StochasticMatrix) -> StructureReport:
    """Irreducibility and period of the directed graph on edges P(i,j) > 0.

    The period is the gcd over all edges (u, v) of level(u) + 1 - level(v),
    where levels come from a breadth-first search rooted at state 0; this
    equals the usual gcd of cycle lengths for strongly connected graphs.
    """
    adj = P.entries > 0.0
    fwd = _bfs_levels(adj, 0)
    if np.any(fwd < 0):
        return StructureReport(False, None, False)
    back = _bfs_levels(adj.T, 0)
    if np.any(back < 0):
        return StructureReport(False, None, False)
    g = 0
    us, vs = np.nonzero(adj)
    for u, v in zip(us.tolist(), vs.tolist()):
        g = gcd(g, fwd[u] + 1 - fwd[v])
    period = int(g)
    return StructureReport(True, period, period == 1)


def interpolate(pair: ChainPair, t: float) -> StochasticMatrix:
    """The convex combination (1 - t) P0 + t P1, revalidated."""
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeError(f"t = {t!r} is outside [0, 1]")
    raw = (1.0 - t) * pair.p0.entries + t * pair.p1.entries
    return validate_stochastic(raw)


def _stationary_direct(P: np.ndarray):
    """Solve (I - P^T) pi = 0 with the last equation replaced by sum(pi) = 1.

    The discarded equation is redundant: columns of I - P^T sum to zero.
    Returns None when the solve fails or produces a clearly invalid vector.
    """
    n = P.shape[0]
    A = np.eye(n) - P.T
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(pi)) or np.any(pi < -1e-12):
        return None
    return _exact_simplex(np.clip(pi, 0.0, None))


def _stationary_power(P: np.ndarray, tol: float = 1e-14, cap: int = 10**6) -> np.ndarray:
    """Power iteration fallback; raises NoConvergenceError at the cap."""
    n = P.shape[0]
    mu = np.full(n, 1.0 / n)
    for _ in range(cap):
        nxt = mu @ P
        nxt /= nxt.sum()
        if np.abs(nxt - mu).sum() <= tol:
            return _exact_simplex(nxt)
        mu = nxt
    raise NoConvergenceError(f"power iteration did not reach tol {tol!r} in {cap} steps")


def stationary(
    P: StochasticMatrix,
    residual_tol: float = STATIONARY_RESIDUAL_TOL,
    power_cap: int = 10**6,
) -> Distribution:
    """Stationary distribution of an ergodic kernel.

    Uses a direct dense solve of (I - P^T) augmented with the normalization
    constraint and falls back to power iteration when the solve is
    ill-conditioned. The result satisfies ``l1(pi P - pi) <= residual_tol``.
    """
    rep = structure(P)
    if not (rep.irreducible and rep.aperiodic):
        raise NotErgodicError(f"kernel is not ergodic: {rep}")
    pi = _stationary_direct(P.entries)
    if pi is None or np.abs(pi @ P.entries - pi).sum() > residual_tol:
        pi = _stationary_power(P.entries, tol=min(residual_tol, 1e-14), cap=power_cap)
    return Distribution(pi)


def _tv(a: np.ndarray, b: np.ndarray) -> float:
    return float(0.5 * np.abs(a - b).sum())


def tv_distance(a: Distribution, b: Distribution) -> float:
    """Total variation distance, half the l1 distance; a value in [0, 1]."""
    if a.n != b.n:
        raise DimensionMismatchError(f"dimensions differ: {a.n} vs {b.n}")
    return _tv(a.mass, b.mass)


def evolve(nu: Distribution, P: StochasticMatrix) -> Distribution:
    """One step of the chain: the distribution ``nu P``."""
    if nu.n != P.n:
        raise DimensionMismatchError(f"dimensions differ: {nu.n} vs {P.n}")
    return Distribution(nu.mass @ P.entries)
