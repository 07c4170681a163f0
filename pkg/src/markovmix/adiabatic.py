"""Adiabatic and stable adiabatic times for the interpolated evolution.

Two schedules appear here. The adiabatic distance at horizon T applies the
T + 1 kernels P_0, P_{1/T}, ..., P_1 to an arbitrary start and measures the
worst total variation gap to the final stationary distribution. The
corridor instead starts at the initial stationary distribution, applies
P_{1/T}, ..., P_{k/T}, and tracks the gap to the instantaneous stationary
distribution at every step k; the stable adiabatic time is the first T
whose corridor stays strictly inside the eps tube.

The two schedules deliberately differ in their first factor (P_0 appears
only in the adiabatic distance); the asymmetry is part of the definitions
and is not harmonized here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .chains import ChainPair, Distribution, _stationary_power
from .errors import (
    CapExceededError,
    ChainError,
    HorizonCapError,
    NonPositiveEpsError,
    OutOfRangeError,
)
from .mixing import PASS_SLACK, SupMixingResult, mixing_time, sup_mixing_time

BOUND_SLACK = 1e-10
DEFAULT_STABLE_CAP = 10_000
DEFAULT_CORRIDOR_CAP = 10**5
DEFAULT_HORIZON_CAP = 10**5


def ceil_int(x: float, rel: float = 1e-12) -> int:
    """Ceiling that snaps to the nearest integer within relative rounding noise.

    Formulas like 2 m^2 / eps are integer-valued for many inputs but land a
    few ulp away in floats; a raw ceil would overshoot by one.
    """
    r = round(x)
    if abs(x - r) <= rel * max(1.0, abs(x)):
        return int(r)
    return int(math.ceil(x))


def _interp_raw(pair: ChainPair, t: float) -> np.ndarray:
    # inputs are validated, so the combination is row stochastic
    return (1.0 - t) * pair.p0.entries + t * pair.p1.entries


def _interp_stack(pair: ChainPair, ts: np.ndarray) -> np.ndarray:
    t = ts[:, None, None]
    return (1.0 - t) * pair.p0.entries + t * pair.p1.entries


def _stationary_stack(Ps: np.ndarray, residual_tol: float = 1e-12) -> np.ndarray:
    """Stationary distributions of a (T, n, n) stack of ergodic kernels.

    Batched dense solves with a per-row residual check; rows whose residual
    or sign pattern is off fall back to power iteration individually.
    """
    T, n, _ = Ps.shape
    A = -np.transpose(Ps, (0, 2, 1)).copy()
    idx = np.arange(n)
    A[:, idx, idx] += 1.0
    A[:, -1, :] = 1.0
    b = np.zeros((T, n))
    b[:, -1] = 1.0
    try:
        pis = np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        pis = np.full((T, n), np.nan)
    residual = np.abs(np.einsum("ti,tij->tj", pis, Ps) - pis).sum(axis=1)
    bad = (
        ~np.isfinite(pis).all(axis=1)
        | (pis < -1e-12).any(axis=1)
        | (residual > residual_tol)
    )
    for i in np.flatnonzero(bad):
        pis[i] = _stationary_power(Ps[i])
    np.clip(pis, 0.0, None, out=pis)
    pis /= pis.sum(axis=1, keepdims=True)
    return pis


@dataclass(frozen=True, eq=False)
class Corridor:
    """Trajectory of mu_k = pi_0 P_{1/T} ... P_{k/T} against its targets.

    Row k - 1 of ``mus`` holds mu_k, row k - 1 of ``targets`` holds the
    stationary distribution of P_{k/T}, and ``gaps[k - 1]`` their total
    variation distance. Arrays are used instead of per-step objects so that
    horizons in the millions stay cheap; :meth:`step` gives the typed view.
    """

    T: int
    mus: np.ndarray
    targets: np.ndarray
    gaps: np.ndarray

    def __post_init__(self):
        for name in ("mus", "targets", "gaps"):
            getattr(self, name).setflags(write=False)

    def step(self, k: int) -> tuple[Distribution, Distribution, float]:
        """The (mu_k, target, gap) triple for 1 <= k <= T."""
        if not 1 <= k <= self.T:
            raise OutOfRangeError(f"k = {k} is outside 1..{self.T}")
        return (
            Distribution(self.mus[k - 1]),
            Distribution(self.targets[k - 1]),
            float(self.gaps[k - 1]),
        )

    def iter_steps(self):
        """Yield (k, mu_k, target, gap) lazily for k = 1..T."""
        for k in range(1, self.T + 1):
            yield (k, *self.step(k))

    @property
    def max_gap(self) -> float:
        return float(self.gaps.max())

    @property
    def worst(self) -> tuple[int, float]:
        """(k, gap) at the largest gap, smallest such k first."""
        k = int(np.argmax(self.gaps))
        return k + 1, float(self.gaps[k])


def corridor(pair: ChainPair, T: int, stationary_cache: dict | None = None) -> Corridor:
    """Compute the full corridor at horizon T.

    O(T) matrix-vector products plus T stationary solves (batched). When a
    ``stationary_cache`` dict is supplied, targets are reused across calls
    keyed by the exact interpolation parameter k / T; a scan over many T
    revisits the same fractions.
    """
    if T < 1:
        raise OutOfRangeError(f"T must be >= 1, got {T}")
    n = pair.n
    ts = np.arange(1, T + 1) / T
    Ps = _interp_stack(pair, ts)

    if stationary_cache is None:
        targets = _stationary_stack(Ps)
    else:
        fractions = ts.tolist()
        targets = np.empty((T, n))
        missing = []
        for i, t in enumerate(fractions):
            hit = stationary_cache.get(t)
            if hit is None:
                missing.append(i)
            else:
                targets[i] = hit
        if missing:
            fresh = _stationary_stack(Ps[missing])
            for j, i in enumerate(missing):
                targets[i] = fresh[j]
                stationary_cache[fractions[i]] = fresh[j]

    mu = np.array(pair.pi0.mass)
    mus = np.empty((T, n))
    for k in range(T):
        mu = mu @ Ps[k]
        s = mu.sum()
        if s != 1.0:
            mu /= s
        mus[k] = mu
    gaps = 0.5 * np.abs(mus - targets).sum(axis=1)
    return Corridor(T=T, mus=mus, targets=targets, gaps=gaps)


def adiabatic_distance(pair: ChainPair, T: int) -> float:
    """Worst-start TV gap of the full schedule P_0 P_{1/T} ... P_1 to pi_1.

    The maximum over starting distributions is attained at a Dirac start,
    so this is the max over rows of the (T + 1)-factor product.
    """
    if T < 1:
        raise OutOfRangeError(f"T must be >= 1, got {T}")
    M = np.array(pair.p0.entries)
    for k in range(1, T + 1):
        M = M @ _interp_raw(pair, k / T)
    pi1 = pair.pi1.mass
    return float((0.5 * np.abs(M - pi1).sum(axis=1)).max())


@dataclass(frozen=True)
class AdiabaticResult:
    """Least T* from which the adiabatic condition holds up to the horizon.

    In exact mode the condition was evaluated for every T in
    [1, certified_horizon] and ``t_ad`` is the least T* with no failure at
    or beyond it; the certified horizon itself comes from the mixing-time
    bound 2 t_mix(P1, eps/2)^2 / eps, beyond which the condition is
    guaranteed. Fast mode only verifies a fixed window after the first
    passing T and is flagged ``heuristic``.
    """

    t_ad: int
    eps: float
    certified_horizon: int
    per_T_gaps: tuple[tuple[int, float], ...]
    heuristic: bool


def adiabatic_time(
    pair: ChainPair,
    eps: float,
    mode: str = "exact",
    window: int = 50,
    horizon_cap: int = DEFAULT_HORIZON_CAP,
) -> AdiabaticResult:
    """Adiabatic time of the pair at eps.

    ``mode="exact"`` scans every horizon up to the certified one, yielding a
    complete certificate; ``mode="fast"`` returns after the first passing T
    whose following ``window`` horizons also pass.
    """
    if eps <= 0.0:
        raise NonPositiveEpsError(f"eps must be > 0, got {eps!r}")
    if mode not in ("exact", "fast"):
        raise OutOfRangeError(f"mode must be 'exact' or 'fast', got {mode!r}")
    m1 = mixing_time(pair.p1, eps / 2.0).tmix
    horizon = ceil_int(2.0 * m1 * m1 / eps)
    if horizon > horizon_cap:
        raise HorizonCapError(
            f"certified horizon {horizon} exceeds cap {horizon_cap}; "
            "raise the cap or relax eps"
        )

    per: list[tuple[int, float]] = []

    def passes(T: int) -> bool:
        gap = adiabatic_distance(pair, T)
        per.append((T, gap))
        return gap <= eps + PASS_SLACK

    if mode == "exact":
        last_fail = 0
        for T in range(1, horizon + 1):
            if not passes(T):
                last_fail = T
        if last_fail >= horizon:
            raise ChainError(
                f"condition still failing at the certified horizon {horizon}; "
                "numerical breakdown"
            )
        return AdiabaticResult(
            t_ad=last_fail + 1,
            eps=eps,
            certified_horizon=horizon,
            per_T_gaps=tuple(per),
            heuristic=False,
        )

    T = 1
    while T <= horizon:
        if passes(T):
            end = min(T + window, horizon)
            bad = 0
            for W in range(T + 1, end + 1):
                if not passes(W):
                    bad = W
            if bad == 0:
                return AdiabaticResult(
                    t_ad=T,
                    eps=eps,
                    certified_horizon=end,
                    per_T_gaps=tuple(per),
                    heuristic=True,
                )
            T = bad + 1
        else:
            T += 1
    raise ChainError(
        f"no passing window found below the certified horizon {horizon}; "
        "numerical breakdown"
    )


@dataclass(frozen=True)
class StableAdiabaticResult:
    """First T whose corridor stays strictly below eps at every step.

    ``worst_k`` and ``worst_gap`` describe the tightest step of that
    corridor. Every T below t_sad had some gap at or above eps.
    """

    t_sad: int
    eps: float
    worst_k: int
    worst_gap: float


def stable_adiabatic_time(
    pair: ChainPair, eps: float, cap: int = DEFAULT_STABLE_CAP
) -> StableAdiabaticResult:
    """Linear upward scan for the stable adiabatic time.

    The definition takes a plain infimum over T (no requirement on larger
    T), and corridor feasibility is not known to be monotone in T, so every
    T is checked in order. The strict comparison ``gap < eps`` is kept
    exact: adding slack would admit gaps equal to eps.
    """
    if eps <= 0.0:
        raise NonPositiveEpsError(f"eps must be > 0, got {eps!r}")
    if cap < 1:
        raise OutOfRangeError(f"cap must be >= 1, got {cap}")
    cache: dict = {}
    trace: list[tuple[int, float]] = []
    for T in range(1, cap + 1):
        cor = corridor(pair, T, stationary_cache=cache)
        k, gap = cor.worst
        trace.append((T, gap))
        if gap < eps:
            return StableAdiabaticResult(t_sad=T, eps=eps, worst_k=k, worst_gap=gap)
    raise CapExceededError(
        f"no T <= {cap} kept the corridor strictly below eps = {eps!r}", trace=trace
    )


@dataclass(frozen=True)
class CorridorDriftRow:
    """One step of the corridor drift inequality: gap <= tv + (k+1)^2 / (2T)."""

    k: int
    lhs: float
    rhs: float
    passed: bool


def prop3_check(pair: ChainPair, T: int) -> list[CorridorDriftRow]:
    """Check, step by step, that each corridor gap is within the drift bound.

    For every k the gap at step k must not exceed the distance between the
    instantaneous and initial stationary distributions plus the
    accumulated-drift term (k+1)^2 / (2T). Failures are reported, not
    raised.
    """
    cor = corridor(pair, T)
    pi0 = pair.pi0.mass
    ks = np.arange(1, T + 1)
    rhs = 0.5 * np.abs(cor.targets - pi0).sum(axis=1) + (ks + 1) ** 2 / (2.0 * T)
    rows = []
    for k in range(1, T + 1):
        lhs = float(cor.gaps[k - 1])
        r = float(rhs[k - 1])
        rows.append(CorridorDriftRow(k=k, lhs=lhs, rhs=r, passed=lhs <= r + BOUND_SLACK))
    return rows


@dataclass(frozen=True)
class CorridorTailReport:
    """Corridor guarantee on the tail delta <= k/T <= 1 at the derived horizon."""

    eps: float
    delta: float
    T: int
    sup_tmix: int
    grid_resolution: float
    k_min: int
    max_gap: float
    violations: tuple[tuple[int, float], ...]
    passed: bool


def theorem2_check(
    pair: ChainPair,
    eps: float,
    delta: float,
    corridor_cap: int = DEFAULT_CORRIDOR_CAP,
    grid_points: int = 101,
    refine_depth: int = 4,
    sup_result: SupMixingResult | None = None,
) -> CorridorTailReport:
    """Verify the tail-corridor guarantee at T = ceil(2 m^2 / (eps delta)).

    ``m`` is the sup mixing time at eps / 2 (a grid estimate; its resolution
    is recorded so a failure can be attributed to sup underestimation).
    Every step k with delta <= k/T <= 1 must have gap at most eps.
    """
    if eps <= 0.0:
        raise NonPositiveEpsError(f"eps must be > 0, got {eps!r}")
    if not 0.0 < delta <= 1.0:
        raise OutOfRangeError(f"delta = {delta!r} is outside (0, 1]")
    if sup_result is None:
        sup_result = sup_mixing_time(pair, eps / 2.0, grid_points, refine_depth)
    m = sup_result.sup_tmix
    T = ceil_int(2.0 * m * m / (eps * delta))
    if T > corridor_cap:
        raise CapExceededError(f"required horizon {T} exceeds corridor cap {corridor_cap}")
    cor = corridor(pair, T)
    k_min = max(1, ceil_int(delta * T))
    tail = cor.gaps[k_min - 1 :]
    bad = np.flatnonzero(tail > eps + BOUND_SLACK)
    violations = tuple((int(i) + k_min, float(tail[i])) for i in bad)
    return CorridorTailReport(
        eps=eps,
        delta=delta,
        T=T,
        sup_tmix=m,
        grid_resolution=sup_result.grid_resolution,
        k_min=k_min,
        max_gap=float(tail.max()),
        violations=violations,
        passed=not violations,
    )


def theorem3_horizon(n: int, eps: float, sup_tmix_half_eps: int) -> int:
    """Horizon ceil(4 m^4 / eps^3 + 4 m^2 / eps^2 + 1 / eps) for the full corridor.

    With m the sup mixing time at eps / 2, a corridor at this horizon keeps
    every gap within eps, provided eps < 1/sqrt(n) and the derived radius
    sqrt(eps/T) - 1/T falls inside the continuity radius at eps.
    """
    if n < 2:
        raise OutOfRangeError(f"n must be >= 2, got {n}")
    if eps <= 0.0:
        raise NonPositiveEpsError(f"eps must be > 0, got {eps!r}")
    if sup_tmix_half_eps < 1:
        raise ValueError(f"sup_tmix_half_eps must be >= 1, got {sup_tmix_half_eps!r}")
    m = float(sup_tmix_half_eps)
    return ceil_int(4.0 * m**4 / eps**3 + 4.0 * m**2 / eps**2 + 1.0 / eps)
