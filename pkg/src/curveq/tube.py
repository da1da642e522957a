"""Tube-coordinate geometry around a space curve.

Coordinates are (s, q2, q3): arc length along the curve and displacements
along the normal and binormal.  This module builds the coordinate tangent
vectors, the metric with its determinant and inverse, and the Hermitizing
vector field obtained from the s-derivative of the contravariant tangent
vector, and provides the numerical identity and limit checks that the
operator construction rests on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TubeValidityError
from .frenet import JetVec, frenet_at, frenet_jets


def _check_validity(kappa, q2):
    if 1.0 - kappa * q2 <= 0.0:
        raise TubeValidityError(
            f"1 - kappa*q2 = {1.0 - kappa * q2:.3e} <= 0: point outside the "
            "tube coordinate patch"
        )


# ---------------------------------------------------------------------------
# Pointwise objects (plain vectors, no jets)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TubeMetric:
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    g: np.ndarray
    det_g: float
    g_inv: np.ndarray


def tangent_vectors(sample, q2, q3):
    """Coordinate tangent vectors (u1, u2, u3) at normal offsets (q2, q3)."""
    _check_validity(sample.kappa, q2)
    u1 = (
        sample.t_hat * (1.0 - q2 * sample.kappa)
        - q3 * sample.tau * sample.n_hat
        + q2 * sample.tau * sample.b_hat
    )
    return u1, sample.n_hat.copy(), sample.b_hat.copy()


def metric_at(sample, q2, q3):
    """Metric, determinant and inverse at a tube point.

    The determinant is computed both in closed form (1 - kappa*q2)^2 and
    directly from the matrix; the inverse is obtained by direct inversion.
    """
    u1, u2, u3 = tangent_vectors(sample, q2, q3)
    g = np.array(
        [
            [u1 @ u1, u1 @ u2, u1 @ u3],
            [u1 @ u2, u2 @ u2, u2 @ u3],
            [u1 @ u3, u2 @ u3, u3 @ u3],
        ]
    )
    det_closed = (1.0 - sample.kappa * q2) ** 2
    det_direct = float(np.linalg.det(g))
    if abs(det_direct - det_closed) > 1e-10 * max(1.0, det_closed):
        raise TubeValidityError(
            f"metric determinant mismatch: direct {det_direct:.15g} vs "
            f"closed form {det_closed:.15g}"
        )
    return TubeMetric(u1, u2, u3, g, det_closed, np.linalg.inv(g))


def _upper_vectors(sample, q2, q3):
    """Contravariant tangent vectors (u^1, u^2, u^3) as plain 3-vectors."""
    m = metric_at(sample, q2, q3)
    basis = np.array([m.u1, m.u2, m.u3])
    return m.g_inv @ basis  # rows are u^i


def sqrtg_u_upper(sample, q2, q3):
    """sqrt(G) * u^i for i = 1, 2, 3, as rows of a 3x3 array."""
    return np.sqrt((1.0 - sample.kappa * q2) ** 2) * _upper_vectors(
        sample, q2, q3
    )


# ---------------------------------------------------------------------------
# Jet-backed fields along s at fixed (q2, q3)
# ---------------------------------------------------------------------------

class TubeJets:
    """Jet (in the raw curve parameter) versions of the tube fields.

    Every quantity is a jet or a JetVec, so one arc-length derivative at
    fixed (q2, q3) is available exactly, without finite differencing in s.
    Jet depth is limited by torsion (two orders), which is all the fields
    here need.
    """

    def __init__(self, curve, map_, s, q2, q3):
        fj = frenet_jets(curve, map_, s)
        _check_validity(fj.kappa_value, q2)
        self.fj = fj
        kappa, tau = fj.kappa, fj.tau
        t_hat, n_hat, b_hat = fj.t_hat, fj.n_hat, fj.b_hat
        self.u1 = (
            t_hat.scale(1.0 - q2 * kappa)
            - n_hat.scale(q3 * tau)
            + b_hat.scale(q2 * tau)
        )
        self.b = tau * (-q3)  # G_12
        self.c = tau * q2  # G_13
        self.A = (1.0 - q2 * kappa) ** 2 + tau * tau * (q2 * q2 + q3 * q3)
        self.det = self.A - self.b * self.b - self.c * self.c
        self.sqrt_det = 1.0 - kappa * q2  # exact closed form of sqrt(G)
        # Contravariant vectors from the cofactor rows of the inverse.
        n_vec, b_vec = n_hat, b_hat
        self.u1_up = (
            self.u1 - n_vec.scale(self.b) - b_vec.scale(self.c)
        ).scale(1.0 / self.det)
        self.u2_up = (
            self.u1.scale(-self.b)
            + n_vec.scale(self.A - self.c * self.c)
            + b_vec.scale(self.b * self.c)
        ).scale(1.0 / self.det)
        self.u3_up = (
            self.u1.scale(-self.c)
            + n_vec.scale(self.b * self.c)
            + b_vec.scale(self.A - self.b * self.b)
        ).scale(1.0 / self.det)
        self.sqrtg_u1_up = self.u1_up.scale(self.sqrt_det)

    def gamma(self):
        """(1 / 2 sqrt(G)) d/ds (sqrt(G) u^1) as a plain 3-vector."""
        d = self.fj.ds_vec(self.sqrtg_u1_up)
        return d.values() / (2.0 * self.sqrt_det.value)


@dataclass(frozen=True)
class GammaField:
    gamma: np.ndarray


def gamma_at(curve, map_, s, q2, q3):
    """Hermitizing field Gamma at a tube point, via jet differentiation."""
    return GammaField(TubeJets(curve, map_, s, q2, q3).gamma())


def gamma_fd(curve, map_, s, q2, q3, step=None):
    """Gamma by Richardson-refined central differences in s (cross-check)."""
    if step is None:
        step = 1e-3 * map_.length

    def d1(h):
        fp = sqrtg_u_upper(frenet_at(curve, map_, s + h), q2, q3)[0]
        fm = sqrtg_u_upper(frenet_at(curve, map_, s - h), q2, q3)[0]
        return (fp - fm) / (2.0 * h)

    d = (4.0 * d1(step / 2) - d1(step)) / 3.0
    sample = frenet_at(curve, map_, s)
    return d / (2.0 * (1.0 - sample.kappa * q2))


def divergence_identity(curve, map_, s, q2, q3, step=None):
    """Residual norm of the vector identity div(u) = 0 in tube coordinates.

    The s-term comes from exact jet differentiation (it equals 2*Gamma);
    the q2/q3 terms are Richardson-refined central differences.
    """
    tj = TubeJets(curve, map_, s, q2, q3)
    sample = frenet_at(curve, map_, s)
    if step is None:
        step = 1e-2 * min(1.0 / max(sample.kappa, 1.0 / map_.length), map_.length)

    def da(h):
        d2 = (
            sqrtg_u_upper(sample, q2 + h, q3)[1]
            - sqrtg_u_upper(sample, q2 - h, q3)[1]
        ) / (2.0 * h)
        d3 = (
            sqrtg_u_upper(sample, q2, q3 + h)[2]
            - sqrtg_u_upper(sample, q2, q3 - h)[2]
        ) / (2.0 * h)
        return d2 + d3

    d_norm = (4.0 * da(step / 2) - da(step)) / 3.0
    residual = 2.0 * tj.gamma() + d_norm / tj.sqrt_det.value
    return float(np.linalg.norm(residual))


# ---------------------------------------------------------------------------
# Momentum splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentumSplit:
    """Coefficient fields of the split momentum (units of -i*hbar).

    p_along   = -i*hbar (u^1 d/ds + gamma)
    p_normal  = -i*hbar (u^2 d/dq2 + u^3 d/dq3 - gamma)

    ``zeroth_along_fd`` and ``zeroth_normal_fd`` are the anticommutator-form
    zeroth-order terms evaluated by finite differences, an independent path
    that must agree with +gamma and -gamma.
    """

    d1_along: np.ndarray
    zeroth_along: np.ndarray
    d2_normal: np.ndarray
    d3_normal: np.ndarray
    zeroth_normal: np.ndarray
    zeroth_along_fd: np.ndarray
    zeroth_normal_fd: np.ndarray

    def sum_coefficients(self):
        """Coefficients of the recombined full gradient operator."""
        return (
            self.d1_along,
            self.d2_normal,
            self.d3_normal,
            self.zeroth_along + self.zeroth_normal,
        )


def momentum_field_split(curve, map_, s, q2, q3, step=None):
    """Split the 3D momentum into separately Hermitian parts at one point."""
    tj = TubeJets(curve, map_, s, q2, q3)
    sample = frenet_at(curve, map_, s)
    gamma = tj.gamma()
    if step is None:
        step = 1e-3 * min(1.0 / max(sample.kappa, 1.0 / map_.length), map_.length)

    # Anticommutator zeroth terms: (1/2 sqrt(G)) d_i (sqrt(G) u^i) by
    # Richardson-refined central differences.
    z_along = gamma_fd(curve, map_, s, q2, q3, step=10 * step)

    def da(h):
        d2 = (
            sqrtg_u_upper(sample, q2 + h, q3)[1]
            - sqrtg_u_upper(sample, q2 - h, q3)[1]
        ) / (2.0 * h)
        d3 = (
            sqrtg_u_upper(sample, q2, q3 + h)[2]
            - sqrtg_u_upper(sample, q2, q3 - h)[2]
        ) / (2.0 * h)
        return d2 + d3

    z_normal = (4.0 * da(step / 2) - da(step)) / 3.0 / (
        2.0 * tj.sqrt_det.value
    )
    return MomentumSplit(
        d1_along=tj.u1_up.values(),
        zeroth_along=gamma,
        d2_normal=tj.u2_up.values(),
        d3_normal=tj.u3_up.values(),
        zeroth_normal=-gamma,
        zeroth_along_fd=z_along,
        zeroth_normal_fd=z_normal,
    )


# ---------------------------------------------------------------------------
# Squeezing-limit suite
# ---------------------------------------------------------------------------

@dataclass
class LimitEntry:
    name: str
    eps: list
    values: list
    extrapolated: float
    target: float
    observed_order: float

    def as_dict(self):
        return {
            "name": self.name,
            "eps": list(self.eps),
            "values": list(self.values),
            "extrapolated": self.extrapolated,
            "target": self.target,
            "observed_order": self.observed_order,
        }


@dataclass
class LimitReport:
    s: float
    kappa: float
    entries: list = field(default_factory=list)

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def as_dict(self):
        return {
            "s": self.s,
            "kappa": self.kappa,
            "entries": [e.as_dict() for e in self.entries],
        }


def _richardson(values, ratio=2.0):
    """Iterated Richardson extrapolation for a geometric step sequence.

    Assumes an error expansion in integer powers of eps; eliminates powers
    1, 2, 3, ... successively.
    """
    table = [list(values)]
    m = len(values)
    for j in range(1, m):
        prev = table[-1]
        table.append(
            [
                prev[i + 1] + (prev[i + 1] - prev[i]) / (ratio**j - 1.0)
                for i in range(len(prev) - 1)
            ]
        )
    return table[-1][0]


def _observed_order(eps, values, scale):
    diffs = np.diff(np.asarray(values, dtype=float))
    if np.max(np.abs(diffs)) < 1e-13 * max(scale, 1e-300):
        return float("inf")  # sequence already converged: exact
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.abs(diffs[:-1] / diffs[1:])
    ratios = ratios[np.isfinite(ratios) & (ratios > 0)]
    if len(ratios) == 0:
        return float("nan")
    r = eps[0] / eps[1]
    return float(np.median(np.log(ratios) / np.log(r)))


def limit_suite(curve, map_, s, eps_list=None, fd_step=None):
    """Evaluate the squeezing-limit table at q2 = q3 = eps, eps -> 0.

    Each tabulated quantity is evaluated on a geometric eps sequence and
    Richardson-extrapolated; the report carries the target limit and the
    observed leading convergence order.
    """
    sample = frenet_at(curve, map_, s)
    kappa = sample.kappa
    L = map_.length
    if eps_list is None:
        # Geometric, ratio 2, from 1e-1*scale down past 1e-4*scale.
        scale = min(L, 0.5 / kappa)
        eps_list = [0.1 * scale * 0.5**k for k in range(11)]
    eps_list = list(eps_list)
    if fd_step is None:
        fd_step = 1e-3 * min(1.0 / kappa, L)

    names_targets = [
        ("u1_upper_minus_t_hat", 0.0),
        ("gamma_minus_half_kappa_n_hat", 0.0),
        ("u1_dot_d1u2", -kappa),
        ("u1_dot_d1u3", 0.0),
        ("two_u2_dot_gamma", kappa),
        ("two_u3_dot_gamma", 0.0),
        ("u1_dot_u1", 1.0),
        ("ua_dot_da_gamma", 0.5 * kappa**2),
        ("gamma_dot_gamma", 0.25 * kappa**2),
        ("ua_dot_da_u1", 0.0),
        ("u1_dot_d1u1", 0.0),
        ("two_u1_dot_u2", 0.0),
        ("two_u1_dot_u3", 0.0),
    ]
    series = {name: [] for name, _ in names_targets}

    for eps in eps_list:
        tj = TubeJets(curve, map_, s, eps, eps)
        fj = tj.fj
        gamma = tj.gamma()
        u1u = tj.u1_up.values()
        u2u = tj.u2_up.values()
        u3u = tj.u3_up.values()
        d1u1 = fj.ds_vec(tj.u1_up).values()
        d1u2 = fj.ds_vec(tj.u2_up).values()
        d1u3 = fj.ds_vec(tj.u3_up).values()

        def da_vec(f, h=fd_step):
            """u^a . d_a f for a vector field f(q2, q3), Richardson-refined."""

            def one(hh):
                d2 = (f(eps + hh, eps) - f(eps - hh, eps)) / (2.0 * hh)
                d3 = (f(eps, eps + hh) - f(eps, eps - hh)) / (2.0 * hh)
                return u2u @ d2 + u3u @ d3

            return (4.0 * one(h / 2) - one(h)) / 3.0

        gamma_of = lambda a2, a3: TubeJets(curve, map_, s, a2, a3).gamma()
        u1_up_of = lambda a2, a3: TubeJets(curve, map_, s, a2, a3).u1_up.values()

        series["u1_upper_minus_t_hat"].append(
            float(np.linalg.norm(u1u - sample.t_hat))
        )
        series["gamma_minus_half_kappa_n_hat"].append(
            float(np.linalg.norm(gamma - 0.5 * kappa * sample.n_hat))
        )
        series["u1_dot_d1u2"].append(float(u1u @ d1u2))
        series["u1_dot_d1u3"].append(float(u1u @ d1u3))
        series["two_u2_dot_gamma"].append(float(2.0 * u2u @ gamma))
        series["two_u3_dot_gamma"].append(float(2.0 * u3u @ gamma))
        series["u1_dot_u1"].append(float(u1u @ u1u))
        series["ua_dot_da_gamma"].append(float(da_vec(gamma_of)))
        series["gamma_dot_gamma"].append(float(gamma @ gamma))
        series["ua_dot_da_u1"].append(float(da_vec(u1_up_of)))
        series["u1_dot_d1u1"].append(float(u1u @ d1u1))
        series["two_u1_dot_u2"].append(float(2.0 * u1u @ u2u))
        series["two_u1_dot_u3"].append(float(2.0 * u1u @ u3u))

    report = LimitReport(s=float(s), kappa=kappa)
    for name, target in names_targets:
        vals = series[name]
        scale = max(abs(target), max(abs(v) for v in vals), kappa**2)
        report.entries.append(
            LimitEntry(
                name=name,
                eps=eps_list,
                values=vals,
                extrapolated=float(_richardson(vals)),
                target=float(target),
                observed_order=_observed_order(eps_list, vals, scale),
            )
        )
    return report
