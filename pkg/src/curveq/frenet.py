"""Arc-length parametrized Frenet data for expression-defined space curves.

A curve is given by three component expressions of one raw parameter t.
All frame quantities, curvature, torsion and their arc-length derivatives
come out of jet evaluation of the components, so no tabulated quantity is
ever differenced.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CurvatureError, CurveQError, RegularityError
from .exprjet import Jet, evaluate_series, parse_expression

_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(16)


# ---------------------------------------------------------------------------
# Jet 3-vectors
# ---------------------------------------------------------------------------

class JetVec:
    """3-vector whose components are jets."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z

    def __add__(self, other):
        return JetVec(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return JetVec(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return JetVec(-self.x, -self.y, -self.z)

    def scale(self, a):
        return JetVec(self.x * a, self.y * a, self.z * a)

    def dot(self, other):
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other):
        return JetVec(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self):
        from .exprjet import jet_sqrt

        return jet_sqrt(self.dot(self))

    def deriv(self):
        return JetVec(self.x.deriv(), self.y.deriv(), self.z.deriv())

    def values(self):
        return np.array([self.x.value, self.y.value, self.z.value])


# ---------------------------------------------------------------------------
# Curve definition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveDefinition:
    """Embedded space curve a(t) given by component ASTs over [t_min, t_max]."""

    ax: object
    ay: object
    az: object
    t_min: float
    t_max: float
    closed: bool = False

    @staticmethod
    def from_strings(ax, ay, az, t_min, t_max, closed=False, var_name="t"):
        curve = CurveDefinition(
            parse_expression(ax, var_name),
            parse_expression(ay, var_name),
            parse_expression(az, var_name),
            float(t_min),
            float(t_max),
            bool(closed),
        )
        curve.validate()
        return curve

    def position_jets(self, t, n=5):
        return JetVec(
            evaluate_series(self.ax, t, n),
            evaluate_series(self.ay, t, n),
            evaluate_series(self.az, t, n),
        )

    def speed(self, t):
        r = self.position_jets(t, 2)
        v = r.deriv()
        return float(np.linalg.norm(v.values()))

    def validate(self, n_check=512):
        if not self.t_max > self.t_min:
            raise CurveQError("t_max must exceed t_min")
        ts = np.linspace(self.t_min, self.t_max, n_check)
        speeds = np.array([self.speed(t) for t in ts])
        floor = 1e-10 * max(1.0, speeds.max())
        if speeds.min() <= floor:
            t_bad = ts[int(speeds.argmin())]
            raise RegularityError(
                f"|a'(t)| = {speeds.min():.3e} at t = {t_bad:.6g}; "
                "curve is not regular"
            )
        if self.closed:
            p0 = self.position_jets(self.t_min, 1).values()
            p1 = self.position_jets(self.t_max, 1).values()
            if np.max(np.abs(p0 - p1)) > 1e-9:
                raise CurveQError(
                    "closed curve endpoints mismatch: "
                    f"max |a(t_min) - a(t_max)| = {np.max(np.abs(p0 - p1)):.3e}"
                )


@dataclass(frozen=True)
class FrenetSample:
    """Frame and scalar curve data at one arc-length point."""

    s: float
    position: np.ndarray
    t_hat: np.ndarray
    n_hat: np.ndarray
    b_hat: np.ndarray
    kappa: float
    tau: float
    kappa_s: float
    kappa_ss: float
    tau_s: float


# ---------------------------------------------------------------------------
# Arc length
# ---------------------------------------------------------------------------

class ArcLengthMap:
    """Monotone map between the raw parameter t and arc length s."""

    def __init__(self, curve, n_samples=256):
        if n_samples < 16:
            raise CurveQError("n_samples must be at least 16")
        self.curve = curve
        self.t_nodes = np.linspace(curve.t_min, curve.t_max, n_samples + 1)
        seg = np.array(
            [
                self._segment_length(self.t_nodes[i], self.t_nodes[i + 1])
                for i in range(n_samples)
            ]
        )
        self.s_nodes = np.concatenate(([0.0], np.cumsum(seg)))
        self.length = float(self.s_nodes[-1])

    def _segment_length(self, a, b):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        ts = mid + half * _GAUSS_X
        return half * sum(w * self.curve.speed(t) for w, t in zip(_GAUSS_W, ts))

    def s_of_t(self, t):
        t = float(np.clip(t, self.curve.t_min, self.curve.t_max))
        i = min(
            np.searchsorted(self.t_nodes, t, side="right") - 1,
            len(self.t_nodes) - 2,
        )
        return float(self.s_nodes[i] + self._segment_length(self.t_nodes[i], t))

    def t_of_s(self, s):
        if s < -1e-9 * self.length or s > self.length * (1 + 1e-9):
            raise CurveQError(f"arc length {s:g} outside [0, {self.length:g}]")
        s = float(np.clip(s, 0.0, self.length))
        i = min(
            np.searchsorted(self.s_nodes, s, side="right") - 1,
            len(self.s_nodes) - 2,
        )
        lo, hi = self.t_nodes[i], self.t_nodes[i + 1]
        t = lo + (hi - lo) * (s - self.s_nodes[i]) / (
            self.s_nodes[i + 1] - self.s_nodes[i]
        )
        # Newton with bisection safeguard on f(t) = s(t) - s.
        for _ in range(60):
            f = self.s_nodes[i] + self._segment_length(self.t_nodes[i], t) - s
            if abs(f) <= 1e-13 * max(1.0, self.length):
                break
            step = f / self.curve.speed(t)
            t_new = t - step
            if not (lo < t_new < hi):
                if f > 0:
                    hi = t
                else:
                    lo = t
                t_new = 0.5 * (lo + hi)
            else:
                if f > 0:
                    hi = t
                else:
                    lo = t
            t = t_new
        return float(t)


def arclength_map(curve, n_samples=256):
    """Build the t <-> s map by per-segment Gauss quadrature of |a'|."""
    return ArcLengthMap(curve, n_samples)


# ---------------------------------------------------------------------------
# Frenet data
# ---------------------------------------------------------------------------

class FrenetJets:
    """Jets (in the raw parameter) of all frame quantities at one point.

    Carried orders: t_hat 4, n_hat/b_hat/kappa 3, tau 2, speed 4.  The
    helper ``ds`` converts any jet to its arc-length derivative via the
    chain rule d/ds = |a'|^-1 d/dt.
    """

    def __init__(self, curve, t):
        r = curve.position_jets(t, 5)
        v = r.deriv()  # a'
        acc = v.deriv()  # a''
        self._jerk = acc.deriv()  # a'''
        self.position = r
        self.speed = v.norm()
        self.t_hat = v.scale(1.0 / self.speed)
        self._cross = v.cross(acc)
        self.kappa_value = float(
            np.sqrt(self._cross.dot(self._cross).value) / self.speed.value ** 3
        )
        # cross_norm, kappa, tau, b_hat, n_hat are built lazily: they divide
        # by |a' x a''| and must not be touched when kappa vanishes.
        self._cross_norm = None
        self._kappa = None
        self._tau = None
        self._b_hat = None

    @property
    def cross_norm(self):
        if self._cross_norm is None:
            self._cross_norm = self._cross.norm()
        return self._cross_norm

    @property
    def kappa(self):
        if self._kappa is None:
            self._kappa = self.cross_norm / (self.speed * self.speed * self.speed)
        return self._kappa

    @property
    def tau(self):
        if self._tau is None:
            self._tau = self._cross.dot(self._jerk) / (
                self.cross_norm * self.cross_norm
            )
        return self._tau

    @property
    def b_hat(self):
        if self._b_hat is None:
            self._b_hat = self._cross.scale(1.0 / self.cross_norm)
        return self._b_hat

    @property
    def n_hat(self):
        return self.b_hat.cross(self.t_hat)

    def ds(self, jet):
        """Arc-length derivative of a jet quantity (one order shorter)."""
        return jet.deriv() / self.speed

    def ds_vec(self, vec):
        return JetVec(self.ds(vec.x), self.ds(vec.y), self.ds(vec.z))


def kappa_min_for(map_):
    """Curvature floor below which the normal frame is rejected."""
    return 1e-8 / map_.length


def frenet_jets(curve, map_, s):
    """FrenetJets at arc length s, rejecting near-zero curvature."""
    fj = FrenetJets(curve, map_.t_of_s(s))
    if fj.kappa_value < kappa_min_for(map_):
        raise CurvatureError(
            f"curvature {fj.kappa_value:.3e} below floor at s = {s:.6g}; "
            "normal frame undefined"
        )
    return fj


def frenet_at(curve, map_, s):
    """Frenet frame, curvature, torsion and arc-length derivatives at s."""
    fj = frenet_jets(curve, map_, s)
    kappa_t = fj.kappa.derivative(1)
    kappa_tt = fj.kappa.derivative(2)
    tau_t = fj.tau.derivative(1)
    v = fj.speed.value
    v_t = fj.speed.derivative(1)
    return FrenetSample(
        s=float(s),
        position=fj.position.values(),
        t_hat=fj.t_hat.values(),
        n_hat=fj.n_hat.values(),
        b_hat=fj.b_hat.values(),
        kappa=fj.kappa.value,
        tau=fj.tau.value,
        kappa_s=kappa_t / v,
        kappa_ss=kappa_tt / v**2 - kappa_t * v_t / v**3,
        tau_s=tau_t / v,
    )


def is_straight(curve, map_, n_check=128):
    """True when curvature stays below the frame floor along the curve."""
    floor = kappa_min_for(map_)
    for s in np.linspace(0.0, map_.length, n_check):
        fj = FrenetJets(curve, map_.t_of_s(s))
        if fj.kappa_value >= floor:
            return False
    return True
