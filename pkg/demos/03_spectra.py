"""Spectra of the confined particle: the curvature term is visible.

The effective Hamiltonian on the curve is
    H = -(hbar^2/2m) (d^2/ds^2 + kappa^2/4),
so even a free particle on a circle is shifted below zero.  With
hbar = m = 1 on the unit circle the exact levels are (n^2 - 1/4)/2.
"""

import numpy as np

from curveq import (
    CurveDefinition,
    arclength_map,
    build_hamiltonian,
    frame_table,
    make_grid,
    solve_spectrum,
)

curve = CurveDefinition.from_strings(
    "cos(t)", "sin(t)", "0*t", 0.0, 2 * np.pi, True
)
map_ = arclength_map(curve)

print("unit circle, periodic grid:")
print(f"{'n_grid':>8} {'E0':>14} {'E1':>12} {'E2':>12}")
for n in (250, 500, 1000, 2000):
    grid = make_grid(map_.length, n, "periodic", True)
    frame = frame_table(curve, map_, grid)
    spec = solve_spectrum(build_hamiltonian(frame), 3)
    print(
        f"{n:>8} {spec.eigenvalues[0]:>14.10f} {spec.eigenvalues[1]:>12.8f} "
        f"{spec.eigenvalues[2]:>12.8f}"
    )
print("   exact     -0.1250000000   0.37500000   0.37500000")
print()

# Open curve: a particle in a box picks up a small curvature correction.
wavy = CurveDefinition.from_strings(
    "3*cos(t)", "3*sin(t)", "1.5*t + 0.2*sin(2*t)", 0.0, 2 * np.pi, False
)
wmap = arclength_map(wavy)
grid = make_grid(wmap.length, 1000, "dirichlet", False)
frame = frame_table(wavy, wmap, grid)
spec = solve_spectrum(build_hamiltonian(frame), 4)
box = 0.5 * (np.arange(1, 5) * np.pi / wmap.length) ** 2
print("wavy open curve vs flat box of the same length:")
print(f"{'level':>6} {'curved':>14} {'flat box':>14} {'shift':>12}")
for k in range(4):
    print(
        f"{k:>6} {spec.eigenvalues[k]:>14.8f} {box[k]:>14.8f} "
        f"{spec.eigenvalues[k] - box[k]:>12.2e}"
    )
print()
print("the shift is of order -<kappa^2>/8 =",
      f"{-np.mean(frame.kappa**2) / 8.0:.2e}")
