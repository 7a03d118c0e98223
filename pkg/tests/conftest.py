import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from minnorm.basis import enumerate_basis
from minnorm.document import parse_input_document
from minnorm.fixtures import pyramid, seven_point
from minnorm.mesh import build_triangulation

settings.register_profile("slow_ok", deadline=None)
settings.load_profile("slow_ok")


@pytest.fixture(scope="session")
def pyramid_tri():
    return parse_input_document(pyramid())


@pytest.fixture(scope="session")
def pyramid_basis(pyramid_tri):
    return enumerate_basis(pyramid_tri)


@pytest.fixture(scope="session")
def seven_tri():
    return parse_input_document(seven_point())


@pytest.fixture(scope="session")
def seven_basis(seven_tri):
    return enumerate_basis(seven_tri)


@pytest.fixture(scope="session")
def square_tri():
    # Unit square corners plus center: the center vertex has degree 4 and a
    # cyclic star, so its rotation actually has freedom.
    points = [(-1.0, -1.0, 0.3), (1.0, -1.0, -0.2), (1.0, 1.0, 0.5),
              (-1.0, 1.0, 0.1), (0.0, 0.0, -0.4)]
    triangles = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    return build_triangulation(points, triangles)


@pytest.fixture(scope="session")
def square_basis(square_tri):
    return enumerate_basis(square_tri)


def planar_variant(fixture: dict, gx: float, gy: float, c: float):
    """Same triangulation as ``fixture`` but heights on the plane gx*x+gy*y+c."""
    points = [(p["x"], p["y"], gx * p["x"] + gy * p["y"] + c)
              for p in fixture["points"]]
    triangles = [[v - 1 for v in t] for t in fixture["triangles"]]
    return build_triangulation(points, triangles)
