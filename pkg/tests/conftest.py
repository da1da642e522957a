import math

import pytest

from curveq import CurveDefinition, arclength_map
from curveq.verify import CurveCase

TWO_PI = 2.0 * math.pi


def _case(name, ax, ay, az, t_min, t_max, closed, bc):
    curve = CurveDefinition.from_strings(ax, ay, az, t_min, t_max, closed)
    return CurveCase(name, curve, arclength_map(curve), bc)


@pytest.fixture(scope="session")
def line_case():
    return _case("line", "t", "0*t", "0*t", 0.0, 1.0, False, "dirichlet")


@pytest.fixture(scope="session")
def circle_case():
    return _case(
        "circle", "cos(t)", "sin(t)", "0*t", 0.0, TWO_PI, True, "periodic"
    )


@pytest.fixture(scope="session")
def helix_case():
    return _case(
        "helix", "3*cos(t)", "3*sin(t)", "4*t", 0.0, TWO_PI, False, "dirichlet"
    )


@pytest.fixture(scope="session")
def wavy_case():
    # Open curve with genuinely varying curvature and torsion.
    return _case(
        "wavy",
        "3*cos(t)",
        "3*sin(t)",
        "1.5*t + 0.2*sin(2*t)",
        0.0,
        TWO_PI,
        False,
        "dirichlet",
    )


@pytest.fixture(scope="session")
def all_cases(line_case, circle_case, helix_case, wavy_case):
    return [line_case, circle_case, helix_case, wavy_case]
