import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import braid_closure  # noqa: E402

from stickcert.geom import Polygon3  # noqa: E402


@pytest.fixture(scope="session")
def trefoil():
    return braid_closure([1, 1, 1], 2)


@pytest.fixture(scope="session")
def figure_eight():
    return braid_closure([1, -2, 1, -2], 3)


@pytest.fixture(scope="session")
def trefoil_polygon():
    # perturbed torus-curve samples; a 6-stick trefoil
    return Polygon3(
        (
            (2345, 1354, 710),
            (-1125, 640, -700),
            (3, -2707, 712),
            (1118, 650, -695),
            (-2346, 1351, 701),
            (5, -1296, -708),
        ),
        scale=1,
        name="trefoil-6",
    )


@pytest.fixture(scope="session")
def convex_decagon():
    # planar convex 10-gon (integer samples of a large circle)
    import math

    pts = []
    for k in range(10):
        x = int(100000 * math.cos(2 * math.pi * k / 10 + 0.1))
        y = int(100000 * math.sin(2 * math.pi * k / 10 + 0.1))
        pts.append((x, y, 0))
    return Polygon3(tuple(pts), scale=1, name="decagon")
