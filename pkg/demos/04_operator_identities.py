"""Heisenberg identities at the matrix level.

Discretize H, the geometric momentum P and the force F on a grid, then
check the operator equations themselves:

    (m / i hbar) [a_c, H] = P_c          (velocity is momentum)
    (1 / i hbar) [P_c, H] = F_c          (Heisenberg force)
    sum_c {n_c, P_c}      = 0            (momentum stays tangential)

Residuals are measured on smooth probe states away from the boundary and
shrink at second order in the grid spacing.
"""

import numpy as np

from curveq import CurveDefinition, arclength_map, frame_table, make_grid
from curveq.operators import (
    build_geometric_momentum,
    force_identity_residual,
    kinematical_identity_residual,
    tangentiality_residual,
)

curves = {
    "circle": ("cos(t)", "sin(t)", "0*t", True, "periodic"),
    "helix": ("3*cos(t)", "3*sin(t)", "4*t", False, "dirichlet"),
    "wavy": ("3*cos(t)", "3*sin(t)", "1.5*t + 0.2*sin(2*t)", False, "dirichlet"),
}

levels = [64, 128, 256, 512]
for name, (ax, ay, az, closed, bc) in curves.items():
    curve = CurveDefinition.from_strings(ax, ay, az, 0.0, 2 * np.pi, closed)
    map_ = arclength_map(curve)
    print(f"{name}:")
    print(f"{'n':>6} {'kinematical':>14} {'force':>14} {'tangential':>14}")
    rows = []
    for n in levels:
        grid = make_grid(map_.length, n, bc, closed)
        frame = frame_table(curve, map_, grid)
        p = build_geometric_momentum(frame)
        rows.append(
            (
                kinematical_identity_residual(frame),
                force_identity_residual(frame),
                tangentiality_residual(p, frame),
            )
        )
        print(f"{n:>6} {rows[-1][0]:>14.3e} {rows[-1][1]:>14.3e} "
              f"{rows[-1][2]:>14.3e}")
    orders = [
        np.log2(np.array(rows[i]) / np.array(rows[i + 1]))
        for i in range(len(rows) - 1)
    ]
    mean = np.mean(orders, axis=0)
    note = " (identically zero)" if rows[-1][2] < 1e-13 else f" {mean[2]:.2f}"
    print(f"{'order':>6} {mean[0]:>14.2f} {mean[1]:>14.2f} {note:>14}")
    print()
