import numpy as np
import pytest

from quadcurl.config import settings
from quadcurl.schemas.geometry import Quadrilateral
from quadcurl.services.base import GeometryError, NonConvexElementError
from quadcurl.services.geometry import (
    BilinearMap,
    curl_curl_push_forward,
    edge_endpoints,
    edge_geometry,
    edge_reference_points,
    jacobian,
    map_to_physical,
    push_forward,
    sigma_weighted_det,
)

CORNERS = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
SAMPLES = np.array([[-0.7, -0.2], [0.1, 0.5], [0.6, -0.9], [0.0, 0.0], [0.9, 0.8]])


def test_reference_corners_map_to_vertices(random_quads):
    for quad in random_quads:
        assert np.allclose(map_to_physical(quad, CORNERS), quad.vertices)


def test_rectangle_jacobian_is_diagonal(rectangle):
    data = jacobian(rectangle, SAMPLES)
    expected = np.diag([1.0, 0.5])
    assert np.allclose(data.B, expected)
    assert np.allclose(data.detJ, 0.5)
    assert np.allclose(data.w, 0.0)


def test_edge_geometry_of_rectangle(rectangle):
    lengths, sines = edge_geometry(rectangle)
    assert np.allclose(lengths, [1.0, 2.0, 1.0, 2.0])
    assert np.allclose(sines, 1.0)


def test_jacobian_matches_finite_differences(random_quads):
    h = 1e-6
    for quad in random_quads:
        data = jacobian(quad, SAMPLES)
        dx = (map_to_physical(quad, SAMPLES + [h, 0]) - map_to_physical(quad, SAMPLES - [h, 0])) / (2 * h)
        dy = (map_to_physical(quad, SAMPLES + [0, h]) - map_to_physical(quad, SAMPLES - [0, h])) / (2 * h)
        assert np.allclose(data.B[..., :, 0], dx, atol=1e-8)
        assert np.allclose(data.B[..., :, 1], dy, atol=1e-8)


def test_det_is_bilinear_and_sigma_weighted(random_quads):
    for quad in random_quads:
        j0, jx, jy, jxy = BilinearMap(quad).det_coefficients()
        x, y = SAMPLES[:, 0], SAMPLES[:, 1]
        det = jacobian(quad, SAMPLES).detJ
        assert np.allclose(det, j0 + jx * x + jy * y + jxy * x * y)
        assert np.allclose(det, sigma_weighted_det(quad, SAMPLES))
        assert j0 == pytest.approx(quad.area() / 4.0)


def test_inverse_transpose(random_quads):
    for quad in random_quads:
        data = jacobian(quad, SAMPLES)
        product = np.einsum("...ji,...jk->...ik", data.B_inv_T, data.B)
        assert np.allclose(product, np.eye(2))


def _field(refpt):
    x, y = refpt[..., 0], refpt[..., 1]
    return np.stack([x * y**2 + np.sin(y), np.cos(x) * y + x**3], axis=-1)


def _ref_curl(refpt):
    x, y = refpt[..., 0], refpt[..., 1]
    return -np.sin(x) * y + 3 * x**2 - 2 * x * y - np.cos(y)


def _ref_curl_grad(refpt):
    x, y = refpt[..., 0], refpt[..., 1]
    return np.stack([-np.cos(x) * y + 6 * x - 2 * y, -np.sin(x) - 2 * x + np.sin(y)], axis=-1)


def _physical_curl(quad, physical_pts):
    """Curl of the pushed-forward field evaluated through the inverse map."""
    ref = _inverse_map(quad, physical_pts)
    _, curl = push_forward(quad, ref, _field(ref), _ref_curl(ref))
    return curl


def _inverse_map(quad, physical_pts):
    ref = np.zeros_like(physical_pts)
    for _ in range(50):
        residual = map_to_physical(quad, ref) - physical_pts
        B = jacobian(quad, ref).B
        ref = ref - np.linalg.solve(B, residual[..., None])[..., 0]
    return ref


def test_push_forward_curl_matches_finite_differences(random_quads):
    h = 1e-5
    for quad in random_quads[:10]:
        pts = map_to_physical(quad, SAMPLES * 0.8)
        def value(p):
            ref = _inverse_map(quad, p)
            v, _ = push_forward(quad, ref, _field(ref), _ref_curl(ref))
            return v
        dv2_dx = (value(pts + [h, 0])[..., 1] - value(pts - [h, 0])[..., 1]) / (2 * h)
        dv1_dy = (value(pts + [0, h])[..., 0] - value(pts - [0, h])[..., 0]) / (2 * h)
        assert np.allclose(_physical_curl(quad, pts), dv2_dx - dv1_dy, atol=1e-6)


def test_curl_curl_push_forward_matches_finite_differences(random_quads):
    h = 1e-4
    for quad in random_quads[:10]:
        ref = SAMPLES * 0.8
        pts = map_to_physical(quad, ref)
        expected = curl_curl_push_forward(quad, ref, _ref_curl(ref), _ref_curl_grad(ref))
        dc_dx = (_physical_curl(quad, pts + [h, 0]) - _physical_curl(quad, pts - [h, 0])) / (2 * h)
        dc_dy = (_physical_curl(quad, pts + [0, h]) - _physical_curl(quad, pts - [0, h])) / (2 * h)
        oracle = np.stack([dc_dy, -dc_dx], axis=-1)
        scale = max(1.0, float(np.max(np.abs(oracle))))
        assert np.allclose(expected, oracle, atol=1e-4 * scale)


@pytest.mark.parametrize("edge", [1, 2, 3, 4])
def test_edge_parametrization_runs_counterclockwise(unit_square, edge):
    start, end = edge_endpoints(edge)
    s = np.array([-1.0, 1.0])
    pts = map_to_physical(unit_square, edge_reference_points(edge, s))
    assert np.allclose(pts[0], unit_square.vertices[start])
    assert np.allclose(pts[1], unit_square.vertices[end])


def test_edge_lengths_follow_labeling(trapezoid):
    for edge in (1, 2, 3, 4):
        start, end = edge_endpoints(edge)
        length = np.linalg.norm(trapezoid.vertices[end] - trapezoid.vertices[start])
        assert trapezoid.lengths[edge - 1] == pytest.approx(length)


def test_non_convex_and_clockwise_elements_are_rejected():
    with pytest.raises(NonConvexElementError) as info:
        Quadrilateral(vertices=[(0, 0), (1, 0), (0.2, 0.2), (0, 1)])
    assert info.value.corner == 3
    with pytest.raises(NonConvexElementError):
        Quadrilateral(vertices=[(0, 0), (0, 1), (1, 1), (1, 0)])
    with pytest.raises(NonConvexElementError):
        Quadrilateral(vertices=[(0, 0), (1, 0), (2, 0), (0, 1)])


def test_convexity_tolerance_comes_from_settings(monkeypatch):
    nearly_flat = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.001), (0.0, 1.0)]
    assert Quadrilateral(vertices=nearly_flat).area() > 0.0
    monkeypatch.setattr(settings.mesh, "convexity_tol", 1e-3)
    with pytest.raises(NonConvexElementError):
        Quadrilateral(vertices=nearly_flat)


def test_bad_edge_index():
    with pytest.raises(GeometryError):
        edge_reference_points(5, 0.0)
    with pytest.raises(GeometryError):
        edge_endpoints(0)


def test_parallelogram_detection(parallelogram, trapezoid):
    assert parallelogram.is_parallelogram()
    assert not trapezoid.is_parallelogram()
    assert parallelogram.area() == pytest.approx(2.0)
    assert trapezoid.area() == pytest.approx(1.5)
