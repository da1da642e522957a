"""Exception hierarchy for curveq."""


class CurveQError(Exception):
    """Base class for all curveq errors."""


class ExprSyntaxError(CurveQError):
    """Malformed expression text; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprDomainError(CurveQError):
    """Evaluation left the domain of a node (log of non-positive, etc.)."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (node at offset {offset})")
        self.offset = offset


class RegularityError(CurveQError):
    """The curve's speed |a'(t)| dropped below the regularity threshold."""


class CurvatureError(CurveQError):
    """Curvature too small for the normal/binormal frame to be defined."""


class TubeValidityError(CurveQError):
    """Tube point outside the coordinate-validity region 1 - kappa*q2 > 0."""


class GridError(CurveQError):
    """Grid/boundary-condition mismatch with the curve."""


class ConfigError(CurveQError):
    """Invalid run configuration."""
