"""The cylindrical helix, where everything has a closed form.

For (R cos t, R sin t, C t) the curvature and torsion are constant,
so the Hamiltonian in the winding angle theta is a free operator plus a
constant, the spectrum is explicit, and the momentum and force operators
have fixed cylindrical components.  Every number the general pipeline
produces can be checked against these formulas.
"""

import numpy as np

from curveq import (
    HelixParams,
    PhysicalConstants,
    arclength_map,
    frenet_at,
    helix_curve,
    helix_hamiltonian_matrix,
    helix_momentum_and_force_analytic,
    helix_spectrum_analytic,
    solve_spectrum,
)

params = HelixParams(3.0, 4.0)
constants = PhysicalConstants()

print(f"R = {params.radius}, C = {params.pitch}")
print(f"kappa = {params.kappa}, tau = {params.tau}, "
      f"sin^2(alpha) = {params.sin2_alpha}")
print()

curve = helix_curve(params, turns=1.0)
map_ = arclength_map(curve)
f = frenet_at(curve, map_, 0.5 * map_.length)
print("pipeline vs closed form:")
print(f"  kappa: {f.kappa:.15f} vs {params.kappa}")
print(f"  tau:   {f.tau:.15f} vs {params.tau}")
print(f"  L:     {map_.length:.12f} vs {2 * np.pi * params.arc_per_radian():.12f}")
print()

print("periodic spectrum, E_n = (n^2 - sin^2(alpha)/4) / (2 (R^2+C^2)):")
print(f"{'n_grid':>8} {'E0':>14} {'E1':>14} {'E1 error':>12}")
e1 = helix_spectrum_analytic(params, constants, 1)
for n in (512, 1024, 2048):
    spec = solve_spectrum(helix_hamiltonian_matrix(params, constants, n), 3)
    print(f"{n:>8} {spec.eigenvalues[0]:>14.10f} {spec.eigenvalues[1]:>14.10f} "
          f"{abs(spec.eigenvalues[1] - e1):>12.2e}")
print(f"{'exact':>8} {helix_spectrum_analytic(params, constants, 0):>14.10f} "
      f"{e1:>14.10f}")
print()

b = helix_momentum_and_force_analytic(params, constants)
print("momentum components (units of -i hbar, per radian of theta):")
print(f"  azimuthal: {b.momentum_dtheta_azimuthal}  (= kappa)")
print(f"  axial:     {b.momentum_dtheta_z}  (= tau)")
print(f"  inward radial zeroth term: {b.momentum_zeroth_inward_radial}"
      "  (= kappa/2)")
print()
print("force: classical part kappa*m symmetrized around the inward radial")
print(f"  direction; quantum correction magnitude "
      f"{b.force_quantum_magnitude:.6e}")
print("  (= hbar^2 kappa (2 kappa^2 + tau^2) / 4m)")
