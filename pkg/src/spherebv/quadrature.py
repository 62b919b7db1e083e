"""Exact-degree quadrature on spheres, norms, and projections.

Rules are recursive products: a uniform circle rule at the base and
Gauss-Jacobi nodes in each polar cosine (Gauss-Legendre for S^2, weight
(1-u^2)^((n-3)/2) in general).  A rule of exact degree D integrates
every polynomial of degree <= D restricted to the sphere up to
roundoff; rules for n >= 4 use the same construction but are not
certified by the exactness test suite, and carry a flag saying so.
"""

import math
import warnings

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DegreeUnderflowWarning, UnsupportedDimensionExactError
from .expansion import CoeffComponent
from .harmonics import build_basis, surface_area
from .polynomials import Polynomial, RadialForm, sup_norm_estimate


class QuadratureRule:
    """Nodes/weights on S^{n-1} with a known polynomial exactness degree."""

    __slots__ = ("n", "nodes", "weights", "exact_degree", "certified")

    def __init__(self, n, nodes, weights, exact_degree, certified):
        self.n = n
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        self.exact_degree = exact_degree
        self.certified = certified

    def __len__(self):
        return self.nodes.shape[0]

    def to_dict(self):
        return {
            "n": self.n,
            "size": len(self),
            "exact_degree": self.exact_degree,
            "certified": self.certified,
        }


def make_rule(n, exact_degree, require_exact=False):
    """Product rule on S^{n-1} integrating sphere polynomials of the
    given degree.

    n = 2 is a uniform circle grid, n = 3 Gauss-Legendre x uniform; for
    n >= 4 the Gauss-Jacobi product construction is used but certified
    exactness is not claimed, and ``require_exact=True`` raises.
    """
    if n < 2:
        raise UnsupportedDimensionExactError("rules exist for n >= 2")
    if exact_degree < 0:
        raise UnsupportedDimensionExactError("exact_degree must be >= 0")
    if require_exact and n > 3:
        raise UnsupportedDimensionExactError(
            "certified-exact rules are limited to n in {2, 3}"
        )
    D = int(exact_degree)
    if n == 2:
        K = D + 1
        t = np.arange(K) * (2.0 * math.pi / K)
        nodes = np.column_stack([np.cos(t), np.sin(t)])
        weights = np.full(K, 2.0 * math.pi / K)
        return QuadratureRule(2, nodes, weights, D, True)
    m = (D + 2) // 2
    if n == 3:
        u, w = roots_legendre(m)
    else:
        a = (n - 3) / 2.0
        u, w = roots_jacobi(m, a, a)
    sub = make_rule(n - 1, D)
    s = np.sqrt(np.maximum(0.0, 1.0 - u * u))
    nodes = np.empty((m * len(sub), n))
    weights = np.empty(m * len(sub))
    for i in range(m):
        block = slice(i * len(sub), (i + 1) * len(sub))
        nodes[block, 0] = u[i]
        nodes[block, 1:] = s[i] * sub.nodes
        weights[block] = w[i] * sub.weights
    return QuadratureRule(n, nodes, weights, D, n == 3)


def _values_on(f, points):
    if isinstance(f, RadialForm):
        return f.eval_sphere_many(points)
    if isinstance(f, Polynomial):
        return f.eval_many(points)
    if hasattr(f, "evaluate"):
        return np.asarray(f.evaluate(points), dtype=float)
    return np.asarray(f(points), dtype=float)


def integrate(f, rule):
    """Surface integral of f over S^{n-1} by the rule (compensated sum)."""
    vals = _values_on(f, rule.nodes)
    return math.fsum(float(x) for x in vals * rule.weights)


def _poly_degree(f):
    if isinstance(f, Polynomial):
        return f.degree()
    if isinstance(f, RadialForm):
        return max((p.degree() for p in f.parts.values()), default=0)
    if hasattr(f, "j"):
        return int(f.j)
    return None


def project(f, j, rule, return_coeffs=False):
    """Orthogonal projection of f onto the degree-j harmonics.

    Computes the coefficients <f, Y_{k,j}> over the surface-orthonormal
    basis with the given rule; warns when the rule's exactness cannot
    certify the projection of a polynomial input.
    """
    deg = _poly_degree(f)
    if deg is not None and rule.exact_degree < deg + j:
        warnings.warn(
            f"rule degree {rule.exact_degree} < deg(f)+j = {deg + j}; "
            "projection is approximate",
            DegreeUnderflowWarning,
        )
    basis = build_basis(rule.n, j)
    vals = _values_on(f, rule.nodes) * rule.weights
    mat = basis.eval_orthonormal(rule.nodes)
    coeffs = np.array([math.fsum(map(float, row * vals)) for row in mat])
    if return_coeffs:
        return coeffs
    return CoeffComponent(rule.n, j, coeffs)


def lq_norm(f, q, rule, sup_samples=4096):
    """L^q(S^{n-1}) norm of f (surface measure); q = inf samples the sup."""
    if q == math.inf:
        if hasattr(f, "evaluate"):
            val, _ = sup_norm_estimate(lambda x: f.evaluate(x), samples=sup_samples, n=rule.n)
        else:
            val, _ = sup_norm_estimate(f, samples=sup_samples, n=rule.n)
        return val
    if q < 1:
        raise UnsupportedDimensionExactError("q must be in [1, inf]")
    vals = np.abs(_values_on(f, rule.nodes)) ** q
    total = math.fsum(float(x) for x in vals * rule.weights)
    return total ** (1.0 / q)


def rule_area_residual(rule):
    """|sum(weights) - |S^{n-1}|| (an invariant of every rule)."""
    return abs(math.fsum(map(float, rule.weights)) - surface_area(rule.n))
