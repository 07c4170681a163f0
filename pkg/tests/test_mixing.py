"""Mixing times: closed forms, brute-force cross-checks, the sup estimate."""

import numpy as np
import pytest

from markovmix import (
    ChainPair,
    IterationCapError,
    NonPositiveEpsError,
    NotErgodicError,
    OutOfRangeError,
    interpolate,
    mixing_time,
    stationary,
    sup_mixing_time,
    validate_distribution,
    validate_stochastic,
)

from oracles import brute_mixing_time, two_state_tmix, two_state_worst_gap


class TestMixingTime:
    def test_one_step_mixer(self):
        P = validate_stochastic([[0.5, 0.5], [0.5, 0.5]])
        res = mixing_time(P, 0.1)
        assert res.tmix == 1
        assert res.final_gap <= 1e-15

    @pytest.mark.parametrize(
        "eps,expected", [(0.2, 2), (0.1, 3), (0.05, 4), (0.025, 5)]
    )
    def test_lazy_closed_form(self, lazy, eps, expected):
        res = mixing_time(lazy, eps)
        assert res.tmix == expected == two_state_tmix(0.25, 0.25, eps)
        assert res.final_gap == pytest.approx(two_state_worst_gap(0.25, 0.25, expected), abs=1e-12)
        assert res.final_gap <= eps
        assert two_state_worst_gap(0.25, 0.25, expected - 1) > eps

    @pytest.mark.parametrize("eps,expected", [(0.2, 2), (0.1, 3), (0.05, 3)])
    def test_asym_closed_form(self, asym, eps, expected):
        assert mixing_time(asym, eps).tmix == expected == two_state_tmix(0.2, 0.4, eps)

    def test_brute_force_cross_check(self, suite_chains):
        for name, P in suite_chains.items():
            for eps in (0.2, 0.05):
                assert mixing_time(P, eps).tmix == brute_mixing_time(P.entries, eps), (
                    name,
                    eps,
                )

    def test_final_gap_at_threshold(self, suite_chains):
        # value just below eps at tmix, above eps at tmix - 1
        for name, P in suite_chains.items():
            res = mixing_time(P, 0.05)
            assert res.final_gap <= 0.05 + 1e-12, name
            if res.tmix > 1:
                M = np.linalg.matrix_power(P.entries, res.tmix - 1)
                pi = stationary(P).mass
                prev_gap = 0.5 * np.abs(M - pi).sum(axis=1).max()
                assert prev_gap > 0.05, name

    def test_nonstrict_threshold_passes_at_equality(self, lazy):
        # the defining comparison is <=, so eps equal to the exact gap passes
        gap3 = two_state_worst_gap(0.25, 0.25, 3)
        assert mixing_time(lazy, gap3).tmix == 3

    def test_monotone_in_eps(self, suite_chains):
        for name, P in suite_chains.items():
            times = [mixing_time(P, eps).tmix for eps in (0.2, 0.1, 0.05)]
            assert times[0] <= times[1] <= times[2], name

    def test_dirac_starts_suffice(self, suite_chains):
        rng = np.random.default_rng(41)
        for name, P in suite_chains.items():
            res = mixing_time(P, 0.1)
            M = np.linalg.matrix_power(P.entries, res.tmix)
            pi = stationary(P).mass
            dirac_max = 0.5 * np.abs(M - pi).sum(axis=1).max()
            for _ in range(100):
                nu = validate_distribution(rng.dirichlet(np.ones(P.n)))
                gap = 0.5 * np.abs(nu.mass @ M - pi).sum()
                assert gap <= dirac_max + 1e-12, name

    def test_worst_state_attains_gap(self, asym):
        res = mixing_time(asym, 0.05)
        M = np.linalg.matrix_power(asym.entries, res.tmix)
        pi = stationary(asym).mass
        gaps = 0.5 * np.abs(M - pi).sum(axis=1)
        assert gaps[res.worst_state] == pytest.approx(res.final_gap, abs=1e-15)
        assert res.final_gap == pytest.approx(gaps.max(), abs=1e-15)

    def test_iteration_cap(self, lazy):
        with pytest.raises(IterationCapError):
            mixing_time(lazy, 1e-6, cap=3)

    def test_nonpositive_eps(self, lazy):
        with pytest.raises(NonPositiveEpsError):
            mixing_time(lazy, 0.0)

    def test_not_ergodic(self):
        cycle = validate_stochastic([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(NotErgodicError):
            mixing_time(cycle, 0.1)


class TestSupMixingTime:
    def test_constant_family(self, lazy):
        res = sup_mixing_time(ChainPair(lazy, lazy), 0.05)
        assert res.sup_tmix == 4
        assert all(t == 4 for _, t in res.per_s_samples)

    def test_forward_pair(self, lazy_asym_pair):
        res = sup_mixing_time(lazy_asym_pair, 0.05)
        assert res.sup_tmix == 4
        assert res.argmax_s == 0.0

    def test_backward_pair(self, lazy, asym):
        res = sup_mixing_time(ChainPair(asym, lazy), 0.05)
        assert res.sup_tmix == 4
        assert res.argmax_s == 1.0

    def test_dominates_endpoints(self, suite_pairs):
        for name, pair in suite_pairs.items():
            res = sup_mixing_time(pair, 0.1)
            t0 = mixing_time(pair.p0, 0.1).tmix
            t1 = mixing_time(pair.p1, 0.1).tmix
            assert res.sup_tmix >= max(t0, t1), name

    def test_matches_dense_grid_oracle(self, lazy_asym_pair):
        res = sup_mixing_time(lazy_asym_pair, 0.05)
        dense = max(
            mixing_time(interpolate(lazy_asym_pair, float(s)), 0.05).tmix
            for s in np.linspace(0.0, 1.0, 501)
        )
        assert res.sup_tmix == dense

    def test_samples_sorted_and_resolution(self, lazy_asym_pair):
        res = sup_mixing_time(lazy_asym_pair, 0.05, grid_points=11, refine_depth=3)
        ss = [s for s, _ in res.per_s_samples]
        assert ss == sorted(ss)
        assert res.grid_resolution == pytest.approx(1e-3)
        jump_gaps = [
            b - a
            for (a, ta), (b, tb) in zip(res.per_s_samples, res.per_s_samples[1:])
            if ta != tb
        ]
        assert jump_gaps and max(jump_gaps) <= 1e-3 + 1e-12

    def test_no_jumps_reports_base_spacing(self, lazy):
        res = sup_mixing_time(ChainPair(lazy, lazy), 0.05, grid_points=11)
        assert res.grid_resolution == pytest.approx(0.1)

    def test_bad_grid(self, lazy_asym_pair):
        with pytest.raises(OutOfRangeError):
            sup_mixing_time(lazy_asym_pair, 0.05, grid_points=1)
