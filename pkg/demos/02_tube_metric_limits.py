"""The metric of a thin tube around a curve, and its squeezing limits.

Coordinates (q1, q2, q3): q1 is arc length along the curve, q2 and q3 run
along the normal and binormal.  The induced metric has determinant
(1 - kappa*q2)^2 exactly, and as the tube is squeezed (q2, q3 -> 0) the
contravariant basis and the Hermitizing field Gamma collapse onto the
curve quantities: u^1 -> t_hat and Gamma -> kappa*n_hat/2.
"""

import numpy as np

from curveq import (
    CurveDefinition,
    arclength_map,
    divergence_identity,
    frenet_at,
    limit_suite,
    metric_at,
)

curve = CurveDefinition.from_strings(
    "3*cos(t)", "3*sin(t)", "4*t", 0.0, 2 * np.pi, False
)
map_ = arclength_map(curve)
s = 0.3 * map_.length
sample = frenet_at(curve, map_, s)

m = metric_at(sample, 0.5, 0.25)
print("metric at (q2, q3) = (0.5, 0.25):")
for row in m.g:
    print("   [" + "  ".join(f"{x:+.6f}" for x in row) + "]")
print(f"det G = {m.det_g:.6f}, closed form (1-kappa*q2)^2 = "
      f"{(1 - sample.kappa * 0.5) ** 2:.6f}")
print(f"max |G Ginv - I| = {np.max(np.abs(m.g @ m.g_inv - np.eye(3))):.2e}")
print()

# Divergence identity residual at a few random tube points.
rng = np.random.default_rng(0)
res = []
for _ in range(10):
    q2, q3 = rng.uniform(-2.0, 2.0, 2)
    res.append(divergence_identity(curve, map_, s, q2, q3))
print(f"divergence identity residual, 10 points: max {max(res):.2e}")
print()

# Squeeze the tube: every tabulated quantity extrapolates to its limit.
report = limit_suite(curve, map_, s)
print(f"{'quantity':<28} {'extrapolated':>16} {'target':>12} {'order':>6}")
for e in report.entries:
    print(
        f"{e.name:<28} {e.extrapolated:>16.10f} {e.target:>12.6f} "
        f"{e.observed_order:>6.2f}"
    )
