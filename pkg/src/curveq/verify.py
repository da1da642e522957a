"""Invariant suites with refinement studies and observed convergence orders.

Shared by the command-line ``verify`` task and the acceptance tests: each
check produces rows carrying the residuals per refinement level, the
observed order, the tolerance it is judged against, and a pass flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frenet import frenet_at
from .operators import (
    PhysicalConstants,
    applied_residual_norm,
    build_force,
    build_force_constant_curvature,
    build_geometric_momentum,
    build_hamiltonian,
    force_identity_residual,
    frame_table,
    kinematical_identity_residual,
    make_grid,
    tangentiality_residual,
)
from .tube import divergence_identity, limit_suite, metric_at

EXACT_FLOOR = 1e-12  # residuals below this are reported as exact zeros

ORDER_TARGET = 2.0
ORDER_BAND = 0.3


@dataclass
class VerifyRow:
    name: str
    levels: list
    residuals: list
    observed_order: float
    tolerance: str
    passed: bool
    note: str = ""

    def as_dict(self):
        return {
            "name": self.name,
            "levels": list(self.levels),
            "residuals": list(self.residuals),
            "observed_order": self.observed_order,
            "tolerance": self.tolerance,
            "passed": bool(self.passed),
            "note": self.note,
        }


def observed_order(levels, residuals):
    """Least-squares slope of log(residual) against log(h) ~ log(1/n)."""
    r = np.asarray(residuals, dtype=float)
    if np.all(r < EXACT_FLOOR):
        return float("inf")
    mask = r > 0
    if mask.sum() < 2:
        return float("nan")
    x = -np.log(np.asarray(levels, dtype=float)[mask])
    y = np.log(r[mask])
    return float(np.polyfit(x, y, 1)[0])


def order_row(name, levels, residuals, order_target=ORDER_TARGET, band=ORDER_BAND):
    """Row judging order-of-convergence; exact zeros pass outright."""
    r = np.asarray(residuals, dtype=float)
    if np.all(r < EXACT_FLOOR):
        return VerifyRow(
            name,
            list(levels),
            list(map(float, residuals)),
            float("inf"),
            f"order {order_target} +/- {band}",
            True,
            note="exact to rounding",
        )
    p = observed_order(levels, residuals)
    # Faster-than-expected decay means the leading error term vanished;
    # treat it as a pass but keep the measured order visible.
    passed = p >= order_target - band
    return VerifyRow(
        name,
        list(levels),
        list(map(float, residuals)),
        p,
        f"order {order_target} +/- {band}",
        passed,
        note="" if abs(p - order_target) <= band else "order above target band",
    )


def threshold_row(name, value, tol, note=""):
    return VerifyRow(
        name, [], [float(value)], float("nan"), f"<= {tol:g}", value <= tol, note
    )


# ---------------------------------------------------------------------------
# Individual suites
# ---------------------------------------------------------------------------

def frenet_serret_residual(curve, map_, n):
    """Max residual of the three frame-derivative relations at step L/n."""
    L = map_.length
    h = L / n
    worst = 0.0
    for s in np.linspace(2 * h, L - 2 * h, 33):
        fp = frenet_at(curve, map_, s + h)
        fm = frenet_at(curve, map_, s - h)
        f0 = frenet_at(curve, map_, s)
        dt = (fp.t_hat - fm.t_hat) / (2 * h)
        dn = (fp.n_hat - fm.n_hat) / (2 * h)
        db = (fp.b_hat - fm.b_hat) / (2 * h)
        worst = max(
            worst,
            float(np.linalg.norm(dt - f0.kappa * f0.n_hat)),
            float(np.linalg.norm(dn + f0.kappa * f0.t_hat - f0.tau * f0.b_hat)),
            float(np.linalg.norm(db + f0.tau * f0.n_hat)),
        )
    return worst


def frame_orthonormality_deviation(curve, map_, n_samples=64):
    worst = 0.0
    for s in np.linspace(0.0, map_.length, n_samples):
        f = frenet_at(curve, map_, s)
        vecs = np.array([f.t_hat, f.n_hat, f.b_hat])
        worst = max(
            worst,
            float(np.max(np.abs(vecs @ vecs.T - np.eye(3)))),
            float(np.max(np.abs(np.cross(f.t_hat, f.n_hat) - f.b_hat))),
        )
    return worst


def metric_identity_deviation(curve, map_, n_points=1000, seed=0):
    """Worst det / inverse identity deviation at random admissible points."""
    rng = np.random.default_rng(seed)
    worst_det, worst_inv = 0.0, 0.0
    for _ in range(n_points):
        s = rng.uniform(0.0, map_.length)
        sm = frenet_at(curve, map_, s)
        margin = 0.9 / max(sm.kappa, 1e-300)
        q2 = rng.uniform(-margin, margin)
        q3 = rng.uniform(-margin, margin)
        m = metric_at(sm, q2, q3)
        det_direct = float(np.linalg.det(m.g))
        worst_det = max(
            worst_det, abs(det_direct - m.det_g) / max(m.det_g, 1e-300)
        )
        worst_inv = max(
            worst_inv, float(np.max(np.abs(m.g @ m.g_inv - np.eye(3))))
        )
    return worst_det, worst_inv


def divergence_deviation(curve, map_, n_points=100, seed=1):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        s = rng.uniform(0.0, map_.length)
        sm = frenet_at(curve, map_, s)
        margin = 0.5 / max(sm.kappa, 1e-300)
        q2 = rng.uniform(-margin, margin)
        q3 = rng.uniform(-margin, margin)
        worst = max(worst, divergence_identity(curve, map_, s, q2, q3))
    return worst


@dataclass
class CurveCase:
    """A named curve with grid/boundary choices for the operator suites."""

    name: str
    curve: object
    map: object
    bc: str


def operator_suite(case, levels, constants=PhysicalConstants(), kappa_scale=1.0):
    """Heisenberg-identity and tangentiality rows over grid refinements.

    kappa_scale is a test hook: scaling the tabulated curvature corrupts
    the force build so the force-identity row must fail (negative control).
    """
    rows = []
    kin, frc, tan, mom = [], [], [], []
    closed = case.bc == "periodic"
    for n in levels:
        grid = make_grid(case.map.length, n, case.bc, closed)
        frame = frame_table(case.curve, case.map, grid)
        # The corruption hook targets the force build only: the momentum,
        # Hamiltonian, and tangentiality rows never read the scaled table.
        force_frame = frame
        if kappa_scale != 1.0 and not frame.straight:
            force_frame = _scaled_kappa(frame, kappa_scale)
        p20 = build_geometric_momentum(frame, constants)
        kin.append(kinematical_identity_residual(frame, constants))
        frc.append(force_identity_residual(force_frame, constants))
        tan.append(tangentiality_residual(p20, frame))
        if frame.straight:
            mom.append(0.0)
        else:
            p18 = build_geometric_momentum(frame, constants, form="curvature")
            mom.append(
                max(
                    applied_residual_norm(a.entries - b.entries, grid)
                    for a, b in zip(p18, p20)
                )
            )
    rows.append(order_row(f"{case.name}: kinematical identity", levels, kin))
    rows.append(order_row(f"{case.name}: force identity", levels, frc))
    rows.append(order_row(f"{case.name}: tangentiality", levels, tan))
    rows.append(order_row(f"{case.name}: momentum forms agreement", levels, mom))
    return rows


def _scaled_kappa(frame, factor):
    from dataclasses import replace

    return replace(
        frame,
        kappa=frame.kappa * factor,
        kappa_s=frame.kappa_s * factor,
        kappa_ss=frame.kappa_ss * factor,
    )


def hermiticity_rows(case, n, constants=PhysicalConstants()):
    grid = make_grid(case.map.length, n, case.bc, case.bc == "periodic")
    frame = frame_table(case.curve, case.map, grid)
    ham = build_hamiltonian(frame, constants)
    p = build_geometric_momentum(frame, constants)
    dev_h = float(np.max(np.abs(ham.entries - ham.entries.conj().T)))
    dev_p = max(
        float(np.max(np.abs(pc.entries - pc.entries.conj().T))) for pc in p
    )
    scale = float(np.max(np.abs(ham.entries)))
    return [
        threshold_row(f"{case.name}: H hermiticity", dev_h, 1e-13 * scale),
        threshold_row(
            f"{case.name}: P hermiticity",
            dev_p,
            1e-13 * max(float(np.max(np.abs(p[0].entries))), 1.0),
        ),
    ]


def force_reduction_row(case, n, constants=PhysicalConstants()):
    """Constant-curvature reduction must match the general force build."""
    grid = make_grid(case.map.length, n, case.bc, case.bc == "periodic")
    frame = frame_table(case.curve, case.map, grid)
    f_general = build_force(frame, constants)
    f_reduced = build_force_constant_curvature(frame, constants)
    diff = max(
        float(np.max(np.abs(a.entries - b.entries)))
        for a, b in zip(f_general, f_reduced)
    )
    scale = max(float(np.max(np.abs(a.entries))) for a in f_general)
    return threshold_row(
        f"{case.name}: force reduction (constant curvature)",
        diff / max(scale, 1e-300),
        1e-12,
        note="relative to the largest force entry",
    )


def geometry_rows(case, levels):
    fs_res = [frenet_serret_residual(case.curve, case.map, n) for n in levels]
    rows = [order_row(f"{case.name}: Frenet-Serret relations", levels, fs_res)]
    ortho = frame_orthonormality_deviation(case.curve, case.map)
    rows.append(
        threshold_row(f"{case.name}: frame orthonormality", ortho, 1e-12)
    )
    det_dev, inv_dev = metric_identity_deviation(case.curve, case.map)
    rows.append(
        threshold_row(f"{case.name}: metric determinant identity", det_dev, 1e-12)
    )
    rows.append(
        threshold_row(f"{case.name}: metric inverse identity", inv_dev, 1e-12)
    )
    rows.append(
        threshold_row(
            f"{case.name}: divergence identity",
            divergence_deviation(case.curve, case.map),
            1e-6,
        )
    )
    return rows


def limit_rows(case, s=None, rel_tol=1e-4):
    if s is None:
        s = 0.37 * case.map.length
    report = limit_suite(case.curve, case.map, s)
    rows = []
    for e in report.entries:
        scale = max(abs(e.target), report.kappa**2)
        err = abs(e.extrapolated - e.target) / scale
        rows.append(
            threshold_row(
                f"{case.name}: limit {e.name}",
                err,
                rel_tol,
                note=f"target {e.target:.6g}, order {e.observed_order:.2f}",
            )
        )
    return rows


def full_verify(case, levels, constants=PhysicalConstants(), kappa_scale=1.0,
                straight=False):
    """All applicable rows for one curve case."""
    rows = []
    if not straight:
        rows += geometry_rows(case, levels)
        rows += limit_rows(case)
    rows += hermiticity_rows(case, max(levels), constants)
    rows += operator_suite(case, levels, constants, kappa_scale=kappa_scale)
    return rows
