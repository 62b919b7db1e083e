"""Classifying functions and duals by the decay of their norm tracks.

Per-degree norms ||f_j|| are compared against exp(+-M(h j)) on a log
grid of h; the root test handles the real-analytic end.
"""

import math

import numpy as np

from spherebv import (
    Expansion,
    WeightSequence,
    classify_dual,
    classify_function,
    dim_h,
    norm_track,
)


def track_expansion(values, kind="function"):
    coeffs = {}
    for j, v in enumerate(values):
        c = np.zeros(dim_h(3, j))
        c[0] = v
        coeffs[j] = c
    return Expansion.from_coefficients(3, coeffs, kind=kind)


J = 40
g2 = WeightSequence.gevrey(2)

print("Function side (decay of ||f_j||)")
for label, vals in [
    ("2^-j        ", [2.0**-j for j in range(J + 1)]),
    ("exp(-sqrt j)", [math.exp(-math.sqrt(j)) for j in range(J + 1)]),
]:
    rep = classify_function(track_expansion(vals), g2)
    print(f"  {label}: satisfied={rep.satisfied}  root test={rep.root_test_limsup:.4f}")

print("\nDual side (growth of ||f_j||)")
delta = Expansion.delta_like(3, [0.0, 0.0, 1.0])
rep = classify_dual(delta, g2, q=math.inf, jmax=J)
print(f"  point mass (d_j growth): satisfied={rep.satisfied}")
print(f"    root test = {rep.root_test_limsup:.4f} -> analytic functional")
for label, vals, kind in [
    ("exp(+sqrt j)", [math.exp(math.sqrt(j)) for j in range(J + 1)], "dual"),
    ("2^j         ", [2.0**j for j in range(J + 1)], "dual"),
]:
    rep = classify_dual(track_expansion(vals, kind), g2)
    print(f"  {label}: satisfied={rep.satisfied}  root test={rep.root_test_limsup:.4f}")

print("\nNorm track of the point mass: sup norms are exactly d_j / |S^2|")
track = norm_track(delta, q=math.inf, jmax=6)
print("  " + ", ".join(f"{v:.4f}" for v in track))
print("  " + ", ".join(f"{(2*j+1)/(4*math.pi):.4f}" for j in range(7)) + "  (closed form)")
