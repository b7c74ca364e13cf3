import numpy as np
import pytest

from fewdist import PointSet, construct_johnson, construct_named


@pytest.fixture(scope="session")
def johnson_10_3():
    return construct_johnson(10, 3)


@pytest.fixture(scope="session")
def e8():
    return construct_named("e8_roots")


@pytest.fixture(scope="session")
def pentagon():
    return construct_named("pentagon")


@pytest.fixture(scope="session")
def icosahedron():
    return construct_named("icosahedron")


@pytest.fixture(scope="session")
def cross_polytope_4():
    return construct_named("cross_polytope", d=4)


@pytest.fixture(scope="session")
def hypercube_4():
    return construct_named("hypercube", d=4)


@pytest.fixture(scope="session")
def simplex_5():
    return construct_named("simplex", d=5)


@pytest.fixture(scope="session")
def unit_square():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    return PointSet(dimension=2, points=pts)


@pytest.fixture(scope="session")
def bundled_sets(johnson_10_3, e8, pentagon, icosahedron, cross_polytope_4, hypercube_4,
                 simplex_5, unit_square):
    return {
        "johnson_10_3": johnson_10_3,
        "e8": e8,
        "pentagon": pentagon,
        "icosahedron": icosahedron,
        "cross_polytope_4": cross_polytope_4,
        "hypercube_4": hypercube_4,
        "simplex_5": simplex_5,
        "unit_square": unit_square,
    }
