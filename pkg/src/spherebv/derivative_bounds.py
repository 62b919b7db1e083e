"""Verification engines for the explicit derivative bounds on spherical
harmonics.

Three sup-norm inequalities (Cartesian derivatives of solid harmonics,
angle derivatives through the spherical chart, and surface derivatives
via the degree-0 homogeneous extension) plus the L2 one-step inequality
that drives them.  Derivatives are exact symbolic objects; sup norms
are sampled lower bounds taken on matched grids for both sides, with
optional ascent refinement applied to the left side only, so a "holds"
verdict is conservative.  The L2 step inequality uses exact-degree
quadrature and a 1e-9 relative tolerance.
"""

import math
import random

from .errors import BadMultiIndexError, NotHarmonicError, ZeroPolynomialError
from .harmonics import build_basis
from .polynomials import (
    Polynomial,
    RadialForm,
    signed_permutation_frame,
    sphere_grid,
    sup_norm_estimate,
    to_spherical,
)
from .quadrature import integrate, make_rule
from .ratmath import Q
from .reports import make_verdict

SOLID_SUP = "derivative-sup-solid"
ANGULAR_SUP = "derivative-sup-angular"
SURFACE_SUP = "derivative-sup-surface"
STEP_L2 = "step-l2"


def solid_constant(n, j, order):
    return math.exp(n / 4.0 - 0.5) * math.sqrt(n) * 2.0 ** (order / 2.0) * float(j) ** (
        order + n / 2.0 - 1.0
    )


def angular_constant(n, j, order):
    return (
        math.exp(n / 4.0 - 0.5)
        * math.sqrt(n)
        * ((n + 1.0) ** order - 1.0)
        * 2.0 ** (order / 2.0)
        * float(j) ** (order + n / 2.0 - 1.0)
    )


def surface_constant(n, j, order, epsilon):
    return (
        math.exp(n * (0.25 + math.sqrt(2.0) + 3.0 * math.sqrt(2.0 + 4.0 / epsilon)) - 0.5)
        * n ** ((order + 1.0) / 2.0)
        * (2.0 + epsilon) ** order
        * float(j) ** (order + n / 2.0 - 1.0)
        * math.factorial(order)
    )


def _check_solid(Q_poly):
    if Q_poly.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no degree")
    if not Q_poly.is_homogeneous():
        raise NotHarmonicError("solid harmonics are homogeneous")
    if not Q_poly.laplacian().is_zero():
        raise NotHarmonicError("polynomial is not harmonic")
    return Q_poly.degree()


def verify_solid_derivative_sup(Q_poly, alpha, samples=2048, refine=True, grid=None):
    """Check the Cartesian-derivative sup bound for a solid harmonic.

    lhs is the sampled sup of the exact derivative on the sphere, rhs
    the displayed constant times the sampled sup of Q on the same grid.
    """
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != Q_poly.n or sum(alpha) == 0:
        raise BadMultiIndexError("alpha must be a nonzero multi-index of length n")
    j = _check_solid(Q_poly)
    order = sum(alpha)
    pts = grid if grid is not None else sphere_grid(Q_poly.n, samples)
    deriv = Q_poly.diff_multi(alpha)
    lhs, _ = sup_norm_estimate(deriv, refine=refine, grid=pts)
    supq, _ = sup_norm_estimate(Q_poly, refine=False, grid=pts)
    rhs = solid_constant(Q_poly.n, j, order) * supq
    return make_verdict(
        SOLID_SUP,
        {"n": Q_poly.n, "j": j, "alpha": list(alpha)},
        lhs=lhs,
        rhs=rhs,
        tol=0.0,
        note="matched sampled sups; lhs ascent-refined",
    )


def verify_angular_derivative_sup(
    Q_poly, alpha, pole_frame=None, samples=2048, refine=True
):
    """Check the angle-derivative sup bound through the spherical chart."""
    j = _check_solid(Q_poly)
    n = Q_poly.n
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n - 1 or sum(alpha) == 0:
        raise BadMultiIndexError("alpha must be a nonzero multi-index over n-1 angles")
    order = sum(alpha)
    trig = to_spherical(Q_poly, pole_frame)
    deriv = trig.diff_multi(alpha)
    lhs, _ = sup_norm_estimate(deriv, samples=samples, refine=refine)
    supq, _ = sup_norm_estimate(Q_poly, samples=samples, refine=False)
    rhs = angular_constant(n, j, order) * supq
    return make_verdict(
        ANGULAR_SUP,
        {"n": n, "j": j, "alpha": list(alpha), "frame": "custom" if pole_frame else "identity"},
        lhs=lhs,
        rhs=rhs,
        tol=0.0,
        note="sup over the angle box; lhs ascent-refined",
    )


def verify_surface_derivative_sup(Q_poly, alpha, epsilon, samples=2048, refine=True):
    """Check the surface-derivative sup bound for the degree-0 extension."""
    j = _check_solid(Q_poly)
    n = Q_poly.n
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n or sum(alpha) == 0:
        raise BadMultiIndexError("alpha must be a nonzero multi-index of length n")
    if epsilon <= 0:
        raise BadMultiIndexError("epsilon must be positive")
    order = sum(alpha)
    ext = RadialForm.homogeneous_extension(Q_poly)
    deriv = ext.diff_multi(alpha)
    pts = sphere_grid(n, samples)
    lhs, _ = sup_norm_estimate(deriv, refine=refine, grid=pts)
    supq, _ = sup_norm_estimate(Q_poly, refine=False, grid=pts)
    rhs = surface_constant(n, j, order, epsilon) * supq
    return make_verdict(
        SURFACE_SUP,
        {"n": n, "j": j, "alpha": list(alpha), "epsilon": epsilon},
        lhs=lhs,
        rhs=rhs,
        tol=0.0,
        note="matched sampled sups; lhs ascent-refined",
    )


def verify_step_l2(Q_poly, alpha, beta, rule=None):
    """Check the one-step L2 inequality between consecutive derivatives.

    Exact symbolic derivatives and exact-degree quadrature on both
    sides; tolerance 1e-9 relative.
    """
    j = _check_solid(Q_poly)
    n = Q_poly.n
    alpha = tuple(int(a) for a in alpha)
    beta = tuple(int(b) for b in beta)
    if len(alpha) != n or len(beta) != n or sum(alpha) == 0:
        raise BadMultiIndexError("alpha must be nonzero, beta of matching length")
    if sum(beta) != sum(alpha) - 1 or any(b > a for a, b in zip(alpha, beta)):
        raise BadMultiIndexError("beta must satisfy beta <= alpha, |beta| = |alpha| - 1")
    order = sum(alpha)
    if rule is None:
        rule = make_rule(n, max(2 * j, 2))
    da = Q_poly.diff_multi(alpha)
    db = Q_poly.diff_multi(beta)
    lhs = integrate(da * da, rule)
    factor = (j - order + 1) * (n + 2 * j - 2 * order)
    rhs = factor * integrate(db * db, rule)
    return make_verdict(
        STEP_L2,
        {"n": n, "j": j, "alpha": list(alpha), "beta": list(beta), "factor": factor},
        lhs=lhs,
        rhs=rhs,
        tol=1e-9,
        note="exact derivatives, exact-degree quadrature",
    )


# ---------------------------------------------------------------------------
# Randomized campaigns
# ---------------------------------------------------------------------------

def random_harmonic(n, j, rng, denominator=16):
    """Seeded rational combination of the exact degree-j basis."""
    basis = build_basis(n, j)
    while True:
        coeffs = [rng.randint(-16, 16) for _ in range(basis.dim)]
        if any(coeffs):
            break
    out = Polynomial.zero(n)
    for c, el in zip(coeffs, basis.elements):
        if c:
            out = out + el.scale(Q(c, denominator))
    return out


def _random_alpha(rng, slots, max_order):
    order = rng.randint(1, max_order)
    alpha = [0] * slots
    for _ in range(order):
        alpha[rng.randrange(slots)] += 1
    return tuple(alpha)


def _random_frame(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return signed_permutation_frame(n, perm, signs)


def campaign(
    inequality,
    trials=200,
    ns=(2, 3),
    jmax=10,
    alphamax=4,
    epsilons=(0.5, 1.0, 2.0),
    seed=0,
    samples=2048,
):
    """Seeded randomized verification campaign for one inequality family.

    Returns (verdicts, summary); the summary carries the minimum slack
    ratio and the failure count (expected zero).
    """
    rng = random.Random(seed)
    verdicts = []
    for t in range(trials):
        n = rng.choice(list(ns))
        j = rng.randint(1, jmax)
        Qp = random_harmonic(n, j, rng)
        if inequality == SOLID_SUP:
            alpha = _random_alpha(rng, n, alphamax)
            v = verify_solid_derivative_sup(Qp, alpha, samples=samples)
        elif inequality == ANGULAR_SUP:
            alpha = _random_alpha(rng, n - 1, alphamax)
            frame = _random_frame(rng, n) if rng.random() < 0.5 else None
            v = verify_angular_derivative_sup(Qp, alpha, pole_frame=frame, samples=samples)
        elif inequality == SURFACE_SUP:
            alpha = _random_alpha(rng, n, alphamax)
            eps = rng.choice(list(epsilons))
            v = verify_surface_derivative_sup(Qp, alpha, eps, samples=samples)
        elif inequality == STEP_L2:
            alpha = _random_alpha(rng, n, alphamax)
            beta = list(alpha)
            drop = rng.choice([i for i, a in enumerate(alpha) if a > 0])
            beta[drop] -= 1
            v = verify_step_l2(Qp, alpha, tuple(beta))
        else:
            raise BadMultiIndexError(f"unknown inequality family {inequality!r}")
        v.instance["trial"] = t
        verdicts.append(v)
    ratios = [v.slack_ratio for v in verdicts if math.isfinite(v.slack_ratio)]
    summary = {
        "inequality": inequality,
        "trials": trials,
        "failures": sum(0 if v.holds else 1 for v in verdicts),
        "min_slack_ratio": min(ratios) if ratios else 0.0,
        "max_slack_ratio": max(ratios) if ratios else 0.0,
        "seed": seed,
    }
    return verdicts, summary
