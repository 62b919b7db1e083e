"""Explicit sup-norm bounds for derivatives of spherical harmonics.

Derivatives are exact symbolic objects (polynomials, radial forms, trig
forms); sup norms are sampled lower bounds on matched grids, so every
"holds" verdict is conservative.
"""

import random

from spherebv import (
    Polynomial,
    verify_angular_derivative_sup,
    verify_solid_derivative_sup,
    verify_step_l2,
    verify_surface_derivative_sup,
)
from spherebv.derivative_bounds import STEP_L2, campaign, random_harmonic

x1 = Polynomial.variable(3, 0)

print("The cleanest instance: Q = x1 on S^2")
v = verify_solid_derivative_sup(x1, (1, 0, 0))
print(f"  Cartesian:  |d Q| <= C |Q|: lhs={v.lhs:.4f} rhs={v.rhs:.4f} holds={v.holds}")
v = verify_angular_derivative_sup(x1, (1, 0))
print(f"  angular:    lhs={v.lhs:.4f} rhs={v.rhs:.4f} holds={v.holds}")
v = verify_surface_derivative_sup(x1, (1, 0, 0), epsilon=1.0)
print(f"  surface:    lhs={v.lhs:.4f} rhs={v.rhs:.3e} holds={v.holds} "
      f"(slack ratio {v.slack_ratio:.2e})")

print("\nOne-step L2 inequality, including its equality case")
v = verify_step_l2(x1, (1, 0, 0), (0, 0, 0))
print(f"  Q = x1, alpha = e1: lhs = rhs = {v.lhs:.10f} (equality), holds={v.holds}")
v = verify_step_l2(Polynomial(3, {(1, 1, 0): 1}), (1, 0, 0), (0, 0, 0))
print(f"  Q = x1 x2:          lhs={v.lhs:.6f} rhs={v.rhs:.6f} holds={v.holds}")

print("\nA seeded random harmonic of degree 6 and a mixed third derivative")
rng = random.Random(1)
qp = random_harmonic(3, 6, rng)
v = verify_solid_derivative_sup(qp, (1, 1, 1))
print(f"  lhs={v.lhs:.4f} rhs={v.rhs:.4f} slack={v.slack_ratio:.3e} holds={v.holds}")

print("\nRandomized campaign over the step inequality (exact quadrature)")
verdicts, summary = campaign(STEP_L2, trials=40, seed=3)
print(f"  trials={summary['trials']} failures={summary['failures']} "
      f"min slack={summary['min_slack_ratio']:.3e} max slack={summary['max_slack_ratio']:.3e}")
