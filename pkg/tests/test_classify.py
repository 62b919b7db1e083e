import math

import numpy as np
import pytest

from spherebv.classify import (
    classify_dual,
    classify_function,
    laplace_power_check,
    norm_track,
    pairing,
    partial_sum_remainder,
)
from spherebv.errors import ConditionMissingError, InsufficientDegreesError
from spherebv.expansion import Expansion
from spherebv.harmonics import dim_h
from spherebv.weights import WeightSequence, associated_m, check_conditions

J = 40


def scalar_track_expansion(values, n=3, kind="function"):
    """Expansion whose degree-j part is values[j] times one basis element."""
    coeffs = {}
    for j, v in enumerate(values):
        c = np.zeros(dim_h(n, j))
        c[0] = v
        coeffs[j] = c
    return Expansion.from_coefficients(n, coeffs, kind=kind)


class TestNormTrack:
    def test_single_harmonic_is_indicator(self, rule3):
        e = Expansion.single_harmonic(3, 5, 2)
        track = norm_track(e, q=2)
        want = [0.0] * 6
        want[5] = 1.0
        assert track == pytest.approx(want, abs=1e-12)

    def test_delta_sup_track(self):
        e = Expansion.delta_like(3, [0.0, 0.0, 1.0])
        track = norm_track(e, q=math.inf, jmax=8)
        want = [(2 * j + 1) / (4 * math.pi) for j in range(9)]
        assert track == pytest.approx(want, rel=1e-12)

    def test_scaling(self):
        vals = [2.0 ** (-j) for j in range(10)]
        e = scalar_track_expansion(vals)
        assert norm_track(e, q=2) == pytest.approx(vals, rel=1e-12)

    def test_l2_equals_coefficient_l2(self, rule3):
        rng = np.random.default_rng(8)
        coeffs = {j: rng.normal(size=dim_h(3, j)) for j in range(5)}
        e = Expansion.from_coefficients(3, coeffs)
        track = norm_track(e, q=2)
        for j in range(5):
            from spherebv.quadrature import lq_norm

            quad = lq_norm(e.component(j), 2, rule3)
            assert track[j] == pytest.approx(quad, rel=1e-10)
            assert track[j] == pytest.approx(float(np.linalg.norm(coeffs[j])), rel=1e-12)


class TestClassifyFunction:
    def test_geometric_track_is_analytic(self, gevrey2):
        e = scalar_track_expansion([2.0 ** (-j) for j in range(J + 1)])
        rep = classify_function(e, gevrey2)
        assert rep.root_test_limsup == pytest.approx(0.5, rel=1e-9)
        assert "analytic-function" in rep.satisfied
        assert rep.side == "analytic-function"

    def test_exp_sqrt_decay_is_roumieu(self, gevrey2):
        e = scalar_track_expansion([math.exp(-math.sqrt(j)) for j in range(J + 1)])
        rep = classify_function(e, gevrey2)
        assert "roumieu-function" in rep.satisfied
        assert "beurling-function" not in rep.satisfied

    def test_zero_expansion_in_every_class(self, gevrey2):
        e = scalar_track_expansion([0.0] * (J + 1))
        rep = classify_function(e, gevrey2)
        assert rep.satisfied == [
            "analytic-function",
            "beurling-function",
            "roumieu-function",
        ]
        assert rep.fitted_c == 0.0

    def test_needs_enough_degrees(self, gevrey2):
        e = scalar_track_expansion([1.0] * 5)
        with pytest.raises(InsufficientDegreesError):
            classify_function(e, gevrey2)

    def test_requires_standing_conditions(self):
        bad = WeightSequence.gevrey(0.5)
        e = scalar_track_expansion([2.0 ** (-j) for j in range(J + 1)])
        with pytest.raises(ConditionMissingError):
            classify_function(e, bad)

    def test_scale_covariance(self, gevrey2):
        lam = 7.5
        vals = [math.exp(-math.sqrt(j)) for j in range(J + 1)]
        r1 = classify_function(scalar_track_expansion(vals), gevrey2)
        r2 = classify_function(
            scalar_track_expansion([lam * v for v in vals]), gevrey2
        )
        assert r1.satisfied == r2.satisfied
        assert r2.fitted_c == pytest.approx(lam * r1.fitted_c, rel=1e-9)
        # the finite root-test estimate shifts by at most lam^(1/j) over
        # the tail degrees it reads (exactly scale-invariant as J -> inf)
        drift = lam ** (1.0 / (3 * J // 4))
        assert r1.root_test_limsup <= r2.root_test_limsup <= r1.root_test_limsup * drift * 1.001


class TestClassifyDual:
    def test_delta_is_analytic_functional(self, gevrey2):
        e = Expansion.delta_like(3, [0.0, 0.0, 1.0])
        rep = classify_dual(e, gevrey2, q=math.inf, jmax=J)
        assert "analytic-functional" in rep.satisfied
        assert rep.root_test_limsup > 1.0  # polynomial growth from above
        assert rep.root_test_limsup < 1.1

    def test_exponential_track_is_not_analytic_functional(self, gevrey2):
        e = scalar_track_expansion([2.0**j for j in range(J + 1)], kind="dual")
        rep = classify_dual(e, gevrey2)
        assert rep.root_test_limsup == pytest.approx(2.0, rel=1e-9)
        assert "analytic-functional" not in rep.satisfied

    def test_exp_sqrt_growth_is_beurling_dual(self, gevrey2):
        e = scalar_track_expansion(
            [math.exp(math.sqrt(j)) for j in range(J + 1)], kind="dual"
        )
        rep = classify_dual(e, gevrey2)
        assert "beurling-dual" in rep.satisfied
        # bounded at h = 1 (track e^(sqrt j - 2 sqrt j) decays) but not at
        # the smallest grid h, where M(hj) = 0 on every tested degree
        assert rep.per_h_bounded[1.0]
        assert not rep.per_h_bounded[2.0**-10]
        assert "roumieu-dual" not in rep.satisfied


class TestDualPairing:
    def test_pairing_consistency(self, rule3):
        # <f_j, phi> = <f, phi_j> for finite expansions
        rng = np.random.default_rng(3)
        f = Expansion.from_coefficients(
            3, {j: rng.normal(size=dim_h(3, j)) for j in range(4)}
        )
        phi = Expansion.from_coefficients(
            3, {j: rng.normal(size=dim_h(3, j)) for j in range(4)}
        )
        fsum = lambda pts: sum(f.evaluate_component(j, pts) for j in range(4))
        psum = lambda pts: sum(phi.evaluate_component(j, pts) for j in range(4))
        for j in range(4):
            a = pairing(f.component(j), psum, rule3)
            b = pairing(fsum, phi.component(j), rule3)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-12)


class TestLaplacePower:
    def test_single_harmonic_track(self, gevrey2):
        e = Expansion.single_harmonic(3, 1, 0)
        v = laplace_power_check(e, gevrey2, h=1.0, p_range=range(0, 8))
        assert v.holds
        # ||Delta^p Y_1|| = 2^p exactly on S^2
        lap = e.laplace_beltrami(3)
        assert norm_track(lap, q=2)[1] == pytest.approx(8.0, rel=1e-12)

    def test_p_zero_trivial(self, gevrey2):
        e = Expansion.single_harmonic(3, 2, 1, scale=3.0)
        v = laplace_power_check(e, gevrey2, h=1.0, p_range=[0])
        assert v.holds
        assert v.lhs == pytest.approx(1.0, rel=1e-9)

    def test_degree_one_eigen_scaling_any_dimension(self, gevrey2):
        for n in (3, 4, 5):
            e = Expansion.single_harmonic(n, 1, 0)
            lam = n - 1  # |eigenvalue| of degree-1 harmonics
            track = [norm_track(e.laplace_beltrami(p), q=2)[1] for p in range(4)]
            assert track == pytest.approx([lam**p for p in range(4)], rel=1e-10)
            # n^p envelope with constant 1
            assert all(track[p] <= n**p + 1e-9 for p in range(4))

    def test_mismatched_growth_fails_fitted_protocol(self, gevrey2):
        # a top-heavy degree-40 profile grows like 1640^p beyond the fit
        # window (its eigen-track peaks at p = 3), so the windowed check
        # is genuinely falsifiable and fails here
        e = Expansion.single_harmonic(3, 40, 0)
        v = laplace_power_check(e, gevrey2, h=1.0, p_range=range(0, 5))
        assert not v.holds


class TestPartialSumRemainder:
    def test_full_sum_vanishes(self, gevrey2):
        e = scalar_track_expansion([1.0] * 11)
        lhs, rhs, holds = partial_sum_remainder(e, gevrey2, h=1.0, k=10)
        assert lhs == 0.0 and holds

    def test_synthetic_class_member(self, gevrey2):
        flags = check_conditions(gevrey2)
        A, H = flags.m2prime_witness
        h = 0.5
        vals = [math.exp(-associated_m(gevrey2, 2 * H * h * j)) for j in range(25)]
        e = scalar_track_expansion(vals)
        lhs, rhs, holds = partial_sum_remainder(e, gevrey2, h=h, k=12)
        assert holds

    def test_single_term_tail(self, gevrey2):
        e = Expansion.single_harmonic(3, 20, 0)
        lhs, rhs, holds = partial_sum_remainder(e, gevrey2, h=0.25, k=5)
        want = math.exp(associated_m(gevrey2, 0.25 * 20))
        assert lhs == pytest.approx(want, rel=1e-10)
        assert holds


def _extension_of(coeffs, n=3):
    """Degree-0 homogeneous extension of a coefficient expansion, exact."""
    from spherebv.harmonics import build_basis
    from spherebv.polynomials import RadialForm
    from spherebv.ratmath import Q

    parts = []
    for j, c in coeffs.items():
        basis = build_basis(n, j)
        scales = basis.surface_scales()
        for ck, el, s in zip(c, basis.elements, scales):
            if ck:
                rat = Q(int(round(float(ck) * s * 2**30)), 2**30)
                parts.append(RadialForm.homogeneous_extension(el.scale(rat)))
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


class TestTameEquivalenceSmoke:
    def test_mutual_boundedness_on_family(self, gevrey2):
        # derivative-sup norms vs projection norms on a small family:
        # both are finite and their ratio spread stays bounded, which is
        # the finite-family shadow of the tame norm equivalence
        from spherebv.polynomials import sup_norm_estimate

        rng = np.random.default_rng(14)
        h = 1.0
        alphas = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (2, 0, 0), (1, 1, 1)]
        ratios = []
        for _ in range(20):
            coeffs = {
                j: rng.integers(-8, 9, size=dim_h(3, j)).astype(float) / 8.0
                for j in range(4)
            }
            e = Expansion.from_coefficients(3, coeffs)
            track = norm_track(e, q=2)
            if not any(v > 0 for v in track):
                continue
            proj_norm = max(
                math.exp(associated_m(gevrey2, h * j)) * v
                for j, v in enumerate(track)
                if v > 0
            )
            ext = _extension_of(coeffs)
            sup_norm = 0.0
            for alpha in alphas:
                d = ext.diff_multi(alpha)
                v, _ = sup_norm_estimate(d, samples=400, refine=False)
                sup_norm = max(
                    sup_norm, h ** sum(alpha) * v / math.exp(gevrey2.log_m(sum(alpha)))
                )
            ratios.append(sup_norm / proj_norm)
        spread = max(ratios) / min(ratios)
        assert spread < 1e3
