import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import direct_sup_oracle
from spherebv.errors import (
    ConditionMissingError,
    CutoffTooSmallError,
    NonPositiveEntryError,
)
from spherebv.weights import (
    WeightSequence,
    associated_m,
    associated_mstar,
    check_conditions,
    infimal_convolution,
    mstar_regularization,
    petzsche_vogt_bound,
    verify_assoc_inequality,
)


class TestConstruction:
    def test_gevrey_values(self):
        s = WeightSequence.gevrey(2, p_max=50)
        assert s.log_m(0) == 0.0
        assert abs(s.log_m(5) - 2 * math.log(120)) < 1e-12

    def test_table_requires_normalization(self):
        with pytest.raises(NonPositiveEntryError):
            WeightSequence.from_table([0.5, 1.0, 2.0], tail={"rule": "gevrey", "s": 1.0})

    def test_table_requires_tail(self):
        with pytest.raises(NonPositiveEntryError):
            WeightSequence.from_table([0.0, 1.0, 2.5], tail=None)

    def test_from_values_rejects_nonpositive(self):
        with pytest.raises(NonPositiveEntryError):
            WeightSequence.from_values([1, 2, -3], tail={"rule": "gevrey", "s": 1.0})

    def test_json_roundtrip(self):
        s = WeightSequence.gevrey(1.5, p_max=80)
        s2 = WeightSequence.from_json(s.to_json())
        assert s2.s == 1.5 and s2.p_max == 80

    def test_cutoff_guard(self):
        with pytest.raises(CutoffTooSmallError):
            check_conditions(WeightSequence.gevrey(2, p_max=10))


class TestConditions:
    def test_factorial_flags(self, factorial_seq):
        f = check_conditions(factorial_seq)
        assert f.m0 and f.m0_witness is not None
        assert f.m1
        # harmonic series of quotient reciprocals diverges
        assert not f.m3prime
        assert f.m1star
        assert f.m2 and f.m2prime

    def test_gevrey2_flags(self, gevrey2):
        f = check_conditions(gevrey2)
        assert f.m1 and f.m1star and f.m3prime
        assert math.isfinite(f.m3prime_tail_estimate)
        # partial sum of 1/p^2 approaches pi^2/6
        assert abs(f.m3prime_partial_sum - math.pi**2 / 6) < 0.01
        assert f.na and f.m4 and f.rudin_m4pp

    def test_sqrt_factorial_fails_m0(self):
        f = check_conditions(WeightSequence.gevrey(0.5))
        assert not f.m0
        assert not f.m1star

    def test_m1star_implies_m0_and_m1(self):
        for s in (1.0, 1.5, 2.0, 3.0, 0.5):
            flags = check_conditions(WeightSequence.gevrey(s))
            if flags.m1star:
                assert flags.m0 and flags.m1

    def test_geometric_tail_table(self):
        # quotients 2, 4, 8, ... : very regular, strongly non-quasianalytic
        logs = [0.0]
        for p in range(1, 41):
            logs.append(logs[-1] + p * math.log(2))
        seq = WeightSequence.from_table(logs, tail={"rule": "repeat_ratio"})
        f = check_conditions(seq)
        assert f.m1 and f.m3prime and f.na
        assert not f.m2  # super-multiplicative growth breaks (M.2)

    def test_factorial_type_tail_keeps_dichotomy(self):
        # truncated p! with the matching tail rule reproduces the exact
        # 0/inf split of M* at the quotient limit
        logs = [math.lgamma(p + 1) for p in range(31)]
        seq = WeightSequence.from_table(logs, tail={"rule": "gevrey", "s": 1.0})
        for t in (0.3, 1.0):
            assert associated_mstar(seq, t) == 0.0
        for t in (1.1, 3.0):
            assert associated_mstar(seq, t) == math.inf
        for t in (0.5, 5.0, 100.0):
            assert associated_m(seq, t) == pytest.approx(
                associated_m(WeightSequence.factorial(), t), abs=1e-9
            )

    def test_gevrey_tail_extends_consistently(self):
        # a truncated gevrey table with the matching tail rule reproduces
        # the untruncated sequence everywhere, including past the table
        s = 1.5
        full = WeightSequence.gevrey(s, p_max=400)
        logs = [s * math.lgamma(p + 1) for p in range(41)]
        table = WeightSequence.from_table(logs, tail={"rule": "gevrey", "s": s})
        for p in (10, 40, 41, 80, 333):
            assert table.log_m(p) == pytest.approx(full.log_m(p), rel=1e-12)
        for t in (0.5, 10.0, 1e3, 1e5):
            assert associated_m(table, t) == pytest.approx(
                associated_m(full, t), abs=1e-9, rel=1e-10
            )
            assert associated_mstar(table, t) == pytest.approx(
                associated_mstar(full, t), abs=1e-9, rel=1e-10
            )


class TestAssociatedFunctions:
    def test_frozen_examples(self, gevrey2, factorial_seq):
        assert associated_m(factorial_seq, 1.0) == 0.0
        assert associated_m(factorial_seq, 0.0) == 0.0
        assert abs(associated_m(gevrey2, 4.0) - math.log(4.0)) < 1e-12
        assert abs(associated_mstar(gevrey2, 3.0) - math.log(4.5)) < 1e-12

    def test_factorial_mstar_dichotomy(self, factorial_seq):
        for t in (0.0, 0.25, 0.5, 0.99, 1.0):
            assert associated_mstar(factorial_seq, t) == 0.0
        for t in (1.0000001, 2.0, 100.0):
            assert associated_mstar(factorial_seq, t) == math.inf

    def test_mstar_vanishes_below_m1(self):
        seq = WeightSequence.gevrey(3)
        m1 = math.exp(seq.log_m(1))
        assert associated_mstar(seq, 0.9 * m1) == 0.0

    @pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 3.0])
    def test_breakpoint_formula_vs_direct_sup(self, s):
        seq = WeightSequence.gevrey(s)
        rng = np.random.default_rng(42)
        ts = np.exp(rng.uniform(math.log(1e-2), math.log(1e3), size=1000))
        for t in ts:
            direct = direct_sup_oracle(seq.log_m, float(t), pmax=2000)
            val = associated_m(seq, float(t))
            assert abs(val - direct) <= 1e-12 * max(1.0, abs(direct))

    def test_monotonicity(self, gevrey2):
        ts = np.logspace(-3, 5, 200)
        vals = [associated_m(gevrey2, t) for t in ts]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        vals = [associated_mstar(gevrey2, t) for t in ts]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_m0_linear_bound(self, factorial_seq):
        # under (M.0), M(t) <= H0 t + log A0
        flags = check_conditions(factorial_seq)
        a0, h0 = flags.m0_witness
        for t in np.logspace(-1, 3, 40):
            assert associated_m(factorial_seq, t) <= h0 * t + math.log(a0) + 1e-9

    def test_na_sublinear_trend(self, gevrey2):
        ratios = [associated_m(gevrey2, t) / t for t in (10.0, 1e2, 1e3, 1e4)]
        assert all(b < a for a, b in zip(ratios, ratios[1:]))

    @given(st.floats(min_value=0.01, max_value=1e4))
    @settings(max_examples=60, deadline=None)
    def test_sup_dominates_every_index(self, t):
        seq = WeightSequence.gevrey(2)
        val = associated_m(seq, t)
        for p in (0, 1, 2, 5, 10):
            assert val >= p * math.log(t) - seq.log_m(p) - 1e-10

    def test_cutoff_exceeded_on_boundary_maximizer(self):
        # decreasing quotients force the direct-sup fallback, whose
        # maximizer runs off the cutoff for t above the quotient range
        from spherebv.errors import CutoffExceededError

        logs = [0.0]
        for p in range(1, 31):
            logs.append(logs[-1] + math.log(1.0 / p))
        seq = WeightSequence.from_table(logs, tail={"rule": "repeat_ratio"})
        with pytest.raises(CutoffExceededError) as exc:
            associated_m(seq, 2.0)
        assert exc.value.lower_bound > 0.0


class TestAssocInequality:
    def test_gevrey2_eta_one(self, gevrey2):
        ts = np.logspace(-1, 4, 200)
        v = verify_assoc_inequality(gevrey2, 1.0, ts)
        assert v.holds
        assert v.lhs <= 1.0 + 1e-9

    def test_factorial_eta_two(self, factorial_seq):
        ts = np.logspace(-1, 4, 120)
        assert verify_assoc_inequality(factorial_seq, 2.0, ts).holds

    def test_eta_to_zero_is_identity(self, gevrey2):
        # eta -> 0: both sides reduce to exp(-M(t)); ratio tends to 1
        ts = np.logspace(-1, 2, 30)
        v = verify_assoc_inequality(gevrey2, 1e-9, ts)
        assert v.holds
        assert abs(v.lhs - 1.0) < 1e-6

    def test_condition_missing(self):
        seq = WeightSequence.gevrey(0.5)
        flags = check_conditions(seq)
        if not (flags.m1 and flags.m2prime):
            with pytest.raises(ConditionMissingError):
                verify_assoc_inequality(seq, 1.0, [1.0], flags=flags)


class TestMstarRegularization:
    def test_p_zero_is_one(self, gevrey2, factorial_seq):
        assert mstar_regularization(gevrey2, 0) == 1.0
        assert mstar_regularization(factorial_seq, 0) == 1.0

    def test_matches_direct_grid_sup(self, gevrey2):
        for p in (1, 2, 3):
            val = mstar_regularization(gevrey2, p)
            grid = np.logspace(-6, 6, 20000)
            direct = max(
                t**p * math.exp(-associated_mstar(gevrey2, t))
                for t in grid
                if math.isfinite(associated_mstar(gevrey2, t))
            )
            assert val >= direct - 1e-9
            assert val <= direct * (1.0 + 1e-3) + 1e-9

    def test_m4_crosscheck_gevrey2(self, gevrey2):
        # M_p <= L^(p+1) p! M*_p for some L on the doubling grid
        for L in (1.0, 2.0, 4.0):
            ok = all(
                gevrey2.log_m(p)
                <= (p + 1) * math.log(L)
                + math.lgamma(p + 1)
                + math.log(mstar_regularization(gevrey2, p))
                + 1e-9
                for p in range(0, 12)
            )
            if ok:
                return
        pytest.fail("no doubling-grid L certified the regularization bound")

    def test_factorial_regularization_is_one(self, factorial_seq):
        for p in (1, 2, 5):
            assert abs(mstar_regularization(factorial_seq, p) - 1.0) < 1e-9


class TestPetzscheVogt:
    def test_gevrey2_search_succeeds(self, gevrey2):
        res = petzsche_vogt_bound(gevrey2, np.logspace(0, 3, 24))
        assert res.holds
        assert res.ell <= 2**16

    def test_factorial_closed_form_inf(self, factorial_seq):
        # for M_p = p!, M* is {0, inf} and the infimum is exactly t (y = 1)
        for t in (0.5, 1.0, 3.0, 10.0):
            assert abs(infimal_convolution(factorial_seq, t) - t) < 1e-6

    def test_small_t_both_sides_vanish(self, gevrey2):
        # M vanishes near 0 and the infimum tends to 0 with t
        val = infimal_convolution(gevrey2, 1e-6)
        assert 0.0 <= val < 1e-3

    def test_requires_conditions(self):
        seq = WeightSequence.gevrey(0.5)
        with pytest.raises(ConditionMissingError):
            petzsche_vogt_bound(seq, [1.0])
