import math

import numpy as np
import pytest

from conftest import gamma_monomial_oracle, random_unit_vectors
from spherebv.errors import DegreeUnderflowWarning, UnsupportedDimensionExactError
from spherebv.expansion import Expansion
from spherebv.harmonics import surface_area
from spherebv.polynomials import Polynomial
from spherebv.quadrature import integrate, lq_norm, make_rule, project, rule_area_residual


class TestRules:
    def test_circle_rule_is_uniform(self):
        rule = make_rule(2, 8)
        assert len(rule) == 9
        assert np.allclose(rule.weights, 2 * math.pi / 9)

    @pytest.mark.parametrize("n,D", [(2, 10), (3, 8), (3, 17), (4, 8), (5, 6)])
    def test_area_and_unit_nodes(self, n, D):
        rule = make_rule(n, D)
        assert rule_area_residual(rule) < 1e-12 * surface_area(n)
        assert np.max(np.abs(np.linalg.norm(rule.nodes, axis=1) - 1.0)) < 1e-14

    def test_exactness_certification_flags(self):
        assert make_rule(3, 4).certified
        assert not make_rule(4, 4).certified
        with pytest.raises(UnsupportedDimensionExactError):
            make_rule(4, 4, require_exact=True)

    @pytest.mark.parametrize("n", [2, 3])
    def test_exactness_against_gamma_oracle(self, n):
        D = 12
        rule = make_rule(n, D)
        rng = np.random.default_rng(11)
        for _ in range(100):
            alpha = tuple(int(a) for a in rng.integers(0, D // n + 2, size=n))
            if sum(alpha) > D:
                continue
            p = Polynomial.monomial(n, alpha)
            got = integrate(p, rule)
            want = gamma_monomial_oracle(n, alpha)
            assert got == pytest.approx(want, rel=1e-11, abs=1e-13)

    def test_random_polynomials_match_oracle(self):
        rng = np.random.default_rng(12)
        rule = make_rule(3, 10)
        for _ in range(100):
            terms = {}
            want = 0.0
            for _ in range(6):
                alpha = tuple(int(a) for a in rng.integers(0, 4, size=3))
                c = float(rng.normal())
                terms[alpha] = terms.get(alpha, 0.0) + c
            p = Polynomial(3, {a: _to_q(c) for a, c in terms.items()})
            want = sum(c * gamma_monomial_oracle(3, a) for a, c in terms.items())
            got = integrate(lambda pts, poly=p: poly.eval_many(pts), rule)
            assert got == pytest.approx(want, rel=1e-11, abs=1e-12)


def _to_q(c):
    from spherebv.ratmath import Q

    return Q(int(round(c * 2**40)), 2**40)


class TestProjection:
    def test_projection_splits_x1_squared(self, rule3):
        f = Polynomial(3, {(2, 0, 0): 1})
        c0 = project(f, 0, rule3)
        c2 = project(f, 2, rule3)
        pts = random_unit_vectors(3, 30, seed=5)
        recomposed = c0.evaluate(pts) + c2.evaluate(pts)
        assert np.max(np.abs(recomposed - pts[:, 0] ** 2)) < 1e-12
        # the degree-0 part is the constant 1/3
        assert c0.evaluate(pts) == pytest.approx(np.full(30, 1 / 3), abs=1e-12)

    def test_cross_degree_projection_vanishes(self, rule3):
        e = Expansion.single_harmonic(3, 5, 3)
        comp = project(e.component(5), 3, rule3)
        assert np.max(np.abs(comp.coeffs)) < 1e-10

    def test_projection_idempotent(self, rule3):
        f = Polynomial(3, {(2, 1, 0): 1, (0, 1, 0): 2})
        once = project(f, 3, rule3)
        twice = project(once, 3, rule3)
        assert np.max(np.abs(once.coeffs - twice.coeffs)) < 1e-10

    def test_degree_underflow_warns(self):
        rule = make_rule(3, 2)
        f = Polynomial(3, {(4, 0, 0): 1})
        with pytest.warns(DegreeUnderflowWarning):
            project(f, 2, rule)

    def test_parseval_on_truncation(self, rule3):
        f = Polynomial(3, {(2, 0, 0): 1, (1, 1, 0): 2, (0, 0, 1): 1})
        total = integrate(lambda pts: f.eval_many(pts) ** 2, rule3)
        parts = 0.0
        for j in range(3):
            comp = project(f, j, rule3)
            parts += float(np.sum(comp.coeffs**2))
        assert parts == pytest.approx(total, rel=1e-10)


class TestNorms:
    def test_l2_of_constant(self, rule3):
        assert lq_norm(Polynomial.constant(3, 1), 2, rule3) == pytest.approx(
            math.sqrt(4 * math.pi), rel=1e-12
        )

    def test_normalized_element_has_unit_norm(self, rule3):
        e = Expansion.single_harmonic(3, 4, 2)
        assert lq_norm(e.component(4), 2, rule3) == pytest.approx(1.0, abs=1e-10)

    def test_sup_norm_of_coordinate(self, rule3):
        val = lq_norm(Polynomial.variable(3, 0), math.inf, rule3)
        assert 0.999 <= val <= 1.0 + 1e-12

    def test_l1_norm_positive_function(self, rule3):
        # |f| = f for f = 1 + x1/2: L1 equals the integral
        f = Polynomial(3, {(0, 0, 0): 1, (1, 0, 0): _to_q(0.5)})
        got = lq_norm(f, 1, rule3)
        assert got == pytest.approx(4 * math.pi, rel=1e-10)
