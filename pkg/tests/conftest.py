import numpy as np
import pytest

from quadcurl.schemas.basis import SpectralOrder
from quadcurl.schemas.geometry import Quadrilateral
from quadcurl.services.meshing import perturbed_quad_mesh, refine, structured_square_mesh


def random_convex_quad(rng: np.random.Generator) -> Quadrilateral:
    """Jittered unit square, scaled, rotated and shifted; always strictly convex."""
    base = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    pts = base + rng.uniform(-0.2, 0.2, size=(4, 2))
    angle = rng.uniform(0.0, 2.0 * np.pi)
    rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    scale = rng.uniform(0.3, 2.0)
    return Quadrilateral(vertices=scale * pts @ rot.T + rng.uniform(-1.0, 1.0, size=2))


@pytest.fixture
def random_quads() -> list[Quadrilateral]:
    """20 seeded random convex quadrilaterals."""
    rng = np.random.default_rng(20240611)
    return [random_convex_quad(rng) for _ in range(20)]


@pytest.fixture
def trapezoid() -> Quadrilateral:
    return Quadrilateral(vertices=[(0.0, 0.0), (2.0, 0.0), (1.5, 1.0), (0.5, 1.0)])


@pytest.fixture
def unit_square() -> Quadrilateral:
    return Quadrilateral(vertices=[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


@pytest.fixture
def rectangle() -> Quadrilateral:
    """2 x 1 rectangle: l2 = l4 = 2, l1 = l3 = 1."""
    return Quadrilateral(vertices=[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (0.0, 1.0)])


@pytest.fixture
def parallelogram() -> Quadrilateral:
    return Quadrilateral(vertices=[(0.0, 0.0), (2.0, 0.0), (2.5, 1.0), (0.5, 1.0)])


@pytest.fixture
def square_mesh_2():
    return structured_square_mesh(2)


@pytest.fixture
def perturbed_mesh_4():
    """Refined 4 x 4 perturbed mesh: 64 distorted elements."""
    return refine(perturbed_quad_mesh(4, 0.2, seed=7))


@pytest.fixture
def order_333() -> SpectralOrder:
    return SpectralOrder(L=3, M=3, N=3)
