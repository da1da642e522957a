"""Closed-form reference quantities for a particle on a cylindrical helix.

The helix (radius R, pitch parameter C, so z = C * theta) has constant
curvature R/(R^2+C^2) and torsion C/(R^2+C^2), which makes every on-curve
operator expressible in closed form.  These serve as the analytic oracle
for the general expression -> Frenet -> operator pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CurveQError
from .frenet import CurveDefinition
from .operators import OperatorMatrix, PhysicalConstants, diff_matrices, make_grid


@dataclass(frozen=True)
class HelixParams:
    radius: float
    pitch: float  # z advance per radian

    def __post_init__(self):
        if self.radius <= 0:
            raise CurveQError("helix radius must be positive")
        if self.pitch < 0:
            raise CurveQError("helix pitch must be non-negative")

    @property
    def rho2(self):
        """R^2 + C^2, the squared arc-length rate per radian."""
        return self.radius**2 + self.pitch**2

    @property
    def kappa(self):
        return self.radius / self.rho2

    @property
    def tau(self):
        return self.pitch / self.rho2

    @property
    def sin2_alpha(self):
        """sin^2 of the pitch angle, R^2/(R^2+C^2); avoids inverse trig."""
        return self.radius**2 / self.rho2

    @property
    def cos2_alpha(self):
        return self.pitch**2 / self.rho2

    def arc_per_radian(self):
        return math.sqrt(self.rho2)


def helix_curve(params, turns=1.0):
    """CurveDefinition tracing the helix over theta in [0, 2*pi*turns]."""
    r, c = params.radius, params.pitch
    return CurveDefinition.from_strings(
        f"{r!r}*cos(t)",
        f"{r!r}*sin(t)",
        f"{c!r}*t",
        0.0,
        2.0 * math.pi * turns,
        closed=(c == 0.0 and abs(turns - round(turns)) < 1e-15),
    )


def helix_hamiltonian_coefficients(params, constants=PhysicalConstants()):
    """(prefactor, potential_const) of the theta-form Hamiltonian.

    H = prefactor * (d^2/dtheta^2 + potential_const) with
    prefactor = -hbar^2 / (2 m (R^2+C^2)) and potential_const = sin^2(alpha)/4.
    """
    prefactor = -(constants.hbar**2) / (2.0 * constants.mass * params.rho2)
    return prefactor, params.sin2_alpha / 4.0


def helix_hamiltonian_matrix(params, constants, n, bc="periodic", theta_max=2 * math.pi):
    """Constant-coefficient Hamiltonian on a theta grid (spectral fixture)."""
    prefactor, pot = helix_hamiltonian_coefficients(params, constants)
    if bc == "periodic":
        grid = make_grid(theta_max, n, "periodic", True)
    else:
        grid = make_grid(theta_max, n, "dirichlet", False)
    _, d2 = diff_matrices(grid)
    return OperatorMatrix(
        prefactor * (d2 + pot * np.eye(n)), grid, hermitian=True
    )


def helix_spectrum_analytic(params, constants, mode, bc="periodic", theta_max=2 * math.pi):
    """Energy of one mode of the constant-coefficient helix Hamiltonian."""
    scale = constants.hbar**2 / (2.0 * constants.mass * params.rho2)
    pot = params.sin2_alpha / 4.0
    if bc == "periodic":
        return scale * (mode**2 - pot)
    if bc == "dirichlet":
        return scale * ((mode * math.pi / theta_max) ** 2 - pot)
    raise CurveQError(f"unknown boundary condition {bc!r}")


@dataclass(frozen=True)
class HelixOperatorBundle:
    """Cylindrical-frame coefficients of the momentum and force operators.

    Momentum (units of -i*hbar): d/dtheta slot carries kappa along the
    azimuthal direction and tau along z; the zeroth term is kappa/2 along
    the inward radial direction (-r).  The force is the constant-curvature
    reduction: the classical term kappa*m*v^2 symmetrized around the inward
    radial direction minus the quantum correction along it.
    """

    momentum_dtheta_azimuthal: float
    momentum_dtheta_z: float
    momentum_zeroth_inward_radial: float
    force_classical_coefficient: float  # multiplies {(-r)/2, m v^2}
    force_quantum_magnitude: float  # coefficient of -(-r) direction
    v2_prefactor: float  # multiplies (d^2/dtheta^2 - sin^2 alpha / 4)


def helix_momentum_and_force_analytic(params, constants=PhysicalConstants()):
    kappa, tau = params.kappa, params.tau
    quantum = (constants.hbar**2 * kappa / (4.0 * constants.mass)) * (
        2.0 * kappa**2 + tau**2
    )
    return HelixOperatorBundle(
        momentum_dtheta_azimuthal=kappa,
        momentum_dtheta_z=tau,
        momentum_zeroth_inward_radial=kappa / 2.0,
        force_classical_coefficient=kappa * constants.mass,
        force_quantum_magnitude=quantum,
        v2_prefactor=-(constants.hbar**2) / (constants.mass**2 * params.rho2),
    )


def helix_frames_on_grid(params, s_values):
    """Frame vectors at arc lengths s from the cylindrical closed forms."""
    rho = params.arc_per_radian()
    theta = np.asarray(s_values) / rho
    r_hat = np.stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=1)
    th_hat = np.stack([-np.sin(theta), np.cos(theta), np.zeros_like(theta)], axis=1)
    z_hat = np.zeros_like(r_hat)
    z_hat[:, 2] = 1.0
    t_hat = (params.radius * th_hat + params.pitch * z_hat) / rho
    n_hat = -r_hat
    b_hat = (params.radius * z_hat - params.pitch * th_hat) / rho
    return t_hat, n_hat, b_hat


def helix_force_matrices(params, grid, constants=PhysicalConstants()):
    """Force operator on an s-grid straight from the closed-form frames.

    Independent of the expression/jet pipeline: frames come from the
    cylindrical formulas, curvature and torsion from R and C.
    """
    kappa, tau = params.kappa, params.tau
    t_hat, n_hat, b_hat = helix_frames_on_grid(params, grid.s_values)
    d1, d2 = diff_matrices(grid)
    pref = constants.hbar**2 / (2.0 * constants.mass)
    t_term = 2.0 * kappa**2 * d1
    n_term = -2.0 * kappa * d2 + (
        kappa**3 / 2.0 + tau**2 * kappa / 2.0
    ) * np.eye(grid.n)
    b_term = -2.0 * tau * kappa * d1
    return tuple(
        OperatorMatrix(
            pref
            * (
                np.diag(t_hat[:, c]) @ t_term
                + np.diag(n_hat[:, c]) @ n_term
                + np.diag(b_hat[:, c]) @ b_term
            ),
            grid,
        )
        for c in range(3)
    )


def helix_momentum_matrices(params, grid, constants=PhysicalConstants()):
    """Symmetric-form momentum on an s-grid from the closed-form frames."""
    t_hat, _, _ = helix_frames_on_grid(params, grid.s_values)
    d1, _ = diff_matrices(grid)
    return tuple(
        OperatorMatrix(
            (-1j * constants.hbar / 2.0)
            * (np.diag(t_hat[:, c]) @ d1 + d1 @ np.diag(t_hat[:, c])),
            grid,
            hermitian=True,
        )
        for c in range(3)
    )
