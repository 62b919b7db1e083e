"""Weight-sequence calculus: structural conditions and associated functions.

The associated functions M(t) = sup_p log(t^p / M_p) and its factorial
companion M*(t) drive every growth statement in the library; this demo
shows their breakpoint evaluation and the standard condition checks.
"""

import math

import numpy as np

from spherebv import (
    WeightSequence,
    associated_m,
    associated_mstar,
    check_conditions,
    mstar_regularization,
    petzsche_vogt_bound,
    verify_assoc_inequality,
)

print("Structural conditions for three weight families")
for label, seq in [
    ("p!        ", WeightSequence.factorial()),
    ("(p!)^2    ", WeightSequence.gevrey(2)),
    ("(p!)^(1/2)", WeightSequence.gevrey(0.5)),
]:
    f = check_conditions(seq)
    print(
        f"  {label}: m0={f.m0!s:5} m1={f.m1!s:5} m2'={f.m2prime!s:5} "
        f"m2={f.m2!s:5} na={f.na!s:5} m1*={f.m1star!s:5} m3'={f.m3prime!s:5} "
        f"m4={f.m4!s:5} rudin={f.rudin_m4pp}"
    )

g2 = WeightSequence.gevrey(2)
print("\nAssociated function of (p!)^2: M(t) grows like 2 sqrt(t)")
for t in (1.0, 4.0, 100.0, 1e4):
    print(f"  M({t:g}) = {associated_m(g2, t):.6f}   (2 sqrt t = {2*math.sqrt(t):.3f})")

print("\nThe factorial dichotomy for M*")
fac = WeightSequence.factorial()
for t in (0.5, 1.0, 2.0):
    print(f"  M*(p!, {t}) = {associated_mstar(fac, t)}")
print(f"  M*((p!)^2, 3) = {associated_mstar(g2, 3.0):.6f} = log 4.5")

print("\nConvex regularization M*_p = sup_t t^p exp(-M*(t))")
print(f"  (p!)^2: {[round(mstar_regularization(g2, p), 6) for p in range(4)]}")
print(f"  p!    : {[round(mstar_regularization(fac, p), 6) for p in range(4)]}")

print("\nWeighted-argument inequality t^eta exp(-M(H^eta t)) <= A^eta exp(-M(t))")
flags = check_conditions(g2)
for eta in (0.5, 1.0, 2.0):
    v = verify_assoc_inequality(g2, eta, np.logspace(-1, 4, 120), flags=flags)
    print(f"  eta = {eta}: holds = {v.holds}, max LHS/RHS = {v.lhs:.4f}")

print("\nInfimal-convolution comparison constants (doubling-grid search)")
res = petzsche_vogt_bound(g2, np.logspace(0, 3, 24), flags=flags)
print(f"  ell = {res.ell}, log L = {res.log_l:.4f}, holds = {res.holds}")
