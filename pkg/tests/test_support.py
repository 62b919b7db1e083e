import math

import numpy as np
import pytest

from spherebv.errors import QuasianalyticWeightError, RegionOverlapsSupportError
from spherebv.expansion import Expansion
from spherebv.polynomials import sphere_grid
from spherebv.reports import Cap
from spherebv.support import detect_support, forward_check, rate_check, support_grid
from spherebv.weights import WeightSequence

NORTH = np.array([0.0, 0.0, 1.0])
SOUTH = -NORTH


@pytest.fixture(scope="module")
def delta_north():
    return Expansion.delta_like(3, NORTH)


@pytest.fixture(scope="module")
def north_report(delta_north):
    return detect_support(delta_north, delta=0.05)


class TestDetect:
    def test_single_cap_containing_pole(self, north_report):
        assert len(north_report.support_caps) == 1
        cap = north_report.support_caps[0]
        assert cap.contains(NORTH)

    def test_far_nodes_vanish(self, north_report):
        nodes = np.asarray(north_report.nodes)
        d = 1.0 - nodes @ NORTH
        for dist, cls in zip(d, north_report.classified):
            if dist >= 0.05:
                assert cls == "vanishes"

    def test_zero_expansion_has_empty_support(self):
        rep = detect_support(Expansion(3, {}, kind="dual"), delta=0.2)
        assert rep.support_caps == []
        assert all(c == "vanishes" for c in rep.classified)

    def test_two_antipodal_caps(self):
        e = Expansion.delta_like(3, NORTH) + Expansion.delta_like(
            3, SOUTH, weight=-1.0 / (4 * math.pi)
        )
        rep = detect_support(e, delta=0.05)
        assert len(rep.support_caps) == 2
        tops = sorted(c.center[2] for c in rep.support_caps)
        assert tops[0] < -0.99 and tops[1] > 0.99

    def test_quasianalytic_weight_refused(self, delta_north):
        with pytest.raises(QuasianalyticWeightError):
            detect_support(delta_north, weights=WeightSequence.factorial())

    def test_linearity_of_vanishing(self):
        # tau-additivity: nodes vanishing for both summands vanish for
        # a normalized combination
        e1 = Expansion.delta_like(3, NORTH)
        e2 = Expansion.delta_like(3, SOUTH)
        grid = support_grid(3, 0.1)
        r1 = detect_support(e1, delta=0.1, grid=grid)
        r2 = detect_support(e2, delta=0.1, grid=grid)
        combo = detect_support(
            e1.scale(0.5) + e2.scale(0.5), delta=0.1, grid=grid
        )
        for c1, c2, cc in zip(r1.classified, r2.classified, combo.classified):
            if c1 == "vanishes" and c2 == "vanishes":
                assert cc == "vanishes"

    def test_rotation_equivariance_exact(self):
        # signed permutation of the pole with a co-rotated grid gives the
        # identically rotated classification and caps
        perm, signs = [1, 2, 0], [1, -1, 1]
        mat = np.zeros((3, 3))
        for i in range(3):
            mat[i, perm[i]] = signs[i]
        grid = support_grid(3, 0.1)
        pole2 = mat @ NORTH
        e1 = Expansion.delta_like(3, NORTH)
        e2 = Expansion.delta_like(3, pole2)
        r1 = detect_support(e1, delta=0.1, grid=grid)
        r2 = detect_support(e2, delta=0.1, grid=grid @ mat.T)
        assert r1.classified == r2.classified
        c1 = np.array([c.center for c in r1.support_caps])
        c2 = np.array([c.center for c in r2.support_caps])
        assert np.allclose(c2, c1 @ mat.T, atol=1e-12)
        assert [c.radius for c in r1.support_caps] == [
            c.radius for c in r2.support_caps
        ]

    def test_monotone_refinement(self, delta_north, north_report):
        # halving delta: new persist nodes stay within one delta-shell of
        # the coarse support estimate
        fine = detect_support(delta_north, delta=0.025)
        coarse_caps = north_report.support_caps
        for node in fine.persist_nodes():
            dists = []
            for cap in coarse_caps:
                c = np.asarray(cap.center)
                ang = math.acos(max(-1.0, min(1.0, float(c @ node))))
                dists.append(ang - cap.radius)
            assert min(dists) <= 0.05 + 1e-9

    def test_profiles_kept_on_request(self, delta_north):
        rep = detect_support(delta_north, delta=0.2, keep_profiles=True)
        prof = np.asarray(rep.profiles)
        assert prof.shape == (len(rep.r_levels), np.asarray(rep.nodes).shape[0])


class TestRate:
    def test_far_hemisphere_slope(self, delta_north, north_report):
        nodes = np.asarray(north_report.nodes)
        far = nodes[nodes @ NORTH <= -0.5]
        v = rate_check(delta_north, far, support_caps=north_report.support_caps)
        assert v.holds
        assert 0.95 <= v.instance["slope"] <= 1.3
        # explicit constant from the kernel denominator bound: at
        # d(omega, N) >= 1/2 the denominator exceeds (2 r rho)^(3/2)
        rho = 0.5
        c_bound = 2.0 / (4 * math.pi * (2 * 0.5 * rho) ** 1.5)
        assert v.instance["c_fit"] <= c_bound * 1.05

    def test_zero_on_region(self, north_report):
        e = Expansion(3, {}, kind="dual")
        far = np.asarray(north_report.nodes)[:50]
        v = rate_check(e, far)
        assert v.holds and v.lhs == 0.0

    def test_region_overlap_refused(self, delta_north, north_report):
        with pytest.raises(RegionOverlapsSupportError):
            rate_check(
                delta_north,
                NORTH[None, :],
                support_caps=north_report.support_caps,
            )

    def test_finite_expansion_rate_after_boundary_subtraction(self):
        rng = np.random.default_rng(11)
        from spherebv.harmonics import dim_h

        e = Expansion.from_coefficients(
            3, {j: rng.normal(size=dim_h(3, j)) for j in range(4)}
        )
        pts = sphere_grid(3, 100)
        v = rate_check(e, pts, subtract_boundary=True)
        assert v.holds
        assert 0.95 <= v.instance["slope"] <= 1.1  # Lipschitz-in-r rate


class TestForward:
    def test_far_cap_vanishes(self, delta_north):
        assert forward_check(delta_north, [Cap(center=[0.0, 0.0, -1.0], radius=1.0)])

    def test_cap_containing_pole_fails(self, delta_north):
        assert not forward_check(delta_north, [Cap(center=[0.0, 0.0, 1.0], radius=0.5)])

    def test_zero_expansion_everywhere(self):
        e = Expansion(3, {}, kind="dual")
        caps = [Cap(center=[0.0, 0.0, -1.0], radius=2.8)]
        assert forward_check(e, caps)
