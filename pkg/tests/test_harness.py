import math

import numpy as np
import pytest

from quadcurl.schemas.basis import SpectralOrder
from quadcurl.services.base import MeshError
from quadcurl.services.exact import manufactured_solution, zero_solution
from quadcurl.services.harness import (
    convergence_study,
    eigen_levels_study,
    eigen_study,
    error_norms,
    estimated_order,
    observed_order,
    p_convergence_study,
    richardson_extrapolate,
)
from quadcurl.services.meshing import build_dof_map, structured_square_mesh

EXACT = manufactured_solution()
POINTS = np.random.default_rng(11).uniform(0.05, 0.95, size=(20, 2))
H = 2e-3


def _diff(field, pts, step):
    """Fourth-order central difference along step."""
    step = np.asarray(step)
    near = field(pts + step) - field(pts - step)
    far = field(pts + 2 * step) - field(pts - 2 * step)
    return (8.0 * near - far) / (12.0 * H)


def _dx(field, pts):
    return _diff(field, pts, [H, 0.0])


def _dy(field, pts):
    return _diff(field, pts, [0.0, H])


def _curl(vector_field):
    return lambda pts: _dx(lambda p: vector_field(p)[..., 1], pts) - _dy(lambda p: vector_field(p)[..., 0], pts)


def _vector_curl(scalar_field):
    return lambda pts: np.stack([_dy(scalar_field, pts), -_dx(scalar_field, pts)], axis=-1)


def _close(actual, expected, rtol=1e-4):
    return np.allclose(actual, expected, atol=rtol * max(1.0, float(np.max(np.abs(expected)))))


def test_manufactured_solution_is_divergence_free():
    h = 1e-5
    du1 = (EXACT.u(POINTS + [h, 0.0])[..., 0] - EXACT.u(POINTS - [h, 0.0])[..., 0]) / (2 * h)
    du2 = (EXACT.u(POINTS + [0.0, h])[..., 1] - EXACT.u(POINTS - [0.0, h])[..., 1]) / (2 * h)
    assert np.max(np.abs(du1 + du2)) <= 1e-6 * np.max(np.abs(du1))


def test_manufactured_solution_curl_chain():
    assert _close(EXACT.curl_u(POINTS), _curl(EXACT.u)(POINTS))
    assert _close(EXACT.curlcurl_u(POINTS), _vector_curl(EXACT.curl_u)(POINTS))


def test_load_matches_fourfold_curl_of_u():
    nested = _vector_curl(_curl(_vector_curl(_curl(EXACT.u))))(POINTS)
    expected = EXACT.f(POINTS)
    error = np.linalg.norm(nested - expected, axis=-1)
    assert np.all(error <= 1e-4 * np.linalg.norm(expected, axis=-1))


def test_manufactured_boundary_values():
    t = np.linspace(0.0, 1.0, 11)
    zeros, ones = np.zeros_like(t), np.ones_like(t)
    for side, tangent in (((t, zeros), 0), ((t, ones), 0), ((zeros, t), 1), ((ones, t), 1)):
        pts = np.stack(side, axis=-1)
        assert np.allclose(EXACT.u(pts)[..., tangent], 0.0, atol=1e-12)
        assert np.allclose(EXACT.curl_u(pts), 0.0, atol=1e-10)


def test_zero_solution():
    z = zero_solution()
    assert z.u(POINTS).shape == (len(POINTS), 2)
    assert z.curl_u(POINTS).shape == (len(POINTS),)
    assert np.all(z.f(POINTS) == 0.0)


def test_error_norms_of_trivial_discrete_solution(order_333):
    mesh = structured_square_mesh(4)
    dofmap = build_dof_map(mesh, order_333)
    zero = np.zeros(dofmap.n_u)
    report = error_norms(mesh, dofmap, order_333, zero, zero_solution())
    assert report.l2 == report.hcurl_semi == report.hcurl2_semi == 0.0
    assert report.h == pytest.approx(0.25)
    assert report.dofs == dofmap.n_u

    report = error_norms(mesh, dofmap, order_333, zero, EXACT)
    assert report.l2 == pytest.approx(math.sqrt(45.0 * math.pi**2 / 128.0), rel=1e-6)


def test_extrapolation_helpers():
    values = [3.0 + 0.5 * 4.0**-k for k in range(4)]
    assert observed_order(values) == pytest.approx(2.0)
    assert richardson_extrapolate(values) == pytest.approx(3.0)
    assert richardson_extrapolate(values[:2], order=2.0) == pytest.approx(3.0)
    orders = estimated_order(values, 3.0)
    assert orders[0] is None
    assert orders[1:] == [pytest.approx(2.0)] * 3
    assert estimated_order([1.0, 1.0], 1.0) == [None, None]


def test_extrapolation_helpers_reject_short_or_flat_input():
    with pytest.raises(ValueError):
        observed_order([1.0, 2.0])
    with pytest.raises(ValueError):
        observed_order([1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        richardson_extrapolate([1.0])


def test_study_preconditions(order_333):
    with pytest.raises(ValueError):
        convergence_study("square", "uniform", 1, order_333)
    with pytest.raises(MeshError):
        convergence_study("lshape", "uniform", 2, order_333)
    with pytest.raises(MeshError):
        p_convergence_study("lshape", "uniform", 2, [3])


def test_small_convergence_study(order_333):
    reports = convergence_study("square", "perturbed", 2, order_333, seed=3, n0=2)
    assert [r.h for r in reports] == [0.5, 0.25]
    assert reports[0].order_l2 is None
    assert reports[1].dofs > reports[0].dofs
    assert reports[1].l2 < reports[0].l2
    assert reports[1].order_hcurl2 is not None


def test_small_p_study():
    reports = p_convergence_study("square", "uniform", 2, [3, 4, 5])
    assert [r.h for r in reports] == [0.5] * 3
    assert reports[0].hcurl2_semi > reports[1].hcurl2_semi > reports[2].hcurl2_semi


def test_small_eigen_study():
    rows = eigen_levels_study("square", 1, SpectralOrder.parse("3"), 2, n0=2)
    assert [row.index for row in rows] == [1, 2]
    assert rows[0].h == 0.5
    assert rows[0].value == pytest.approx(rows[1].value, rel=1e-8)
    assert rows[0].cluster_id == rows[1].cluster_id


def _finest_orders(reports):
    last = reports[-1]
    return last.order_l2, last.order_hcurl, last.order_hcurl2


@pytest.mark.slow
@pytest.mark.parametrize(
    "order,expected,tol,atleast_l2",
    [
        ("1,1,1", (1.0, 2.0, 1.0), 0.15, False),
        ("2,2,2", (2.0, 2.0, 1.0), 0.15, False),
        ("3,3,3", (3.0, 3.0, 2.0), 0.2, True),
        ("3,4,3", (4.0, 3.0, 2.0), 0.2, False),
        ("3,3,4", (3.0, 4.0, 3.0), 0.2, False),
    ],
)
def test_uniform_h_convergence_rates(order, expected, tol, atleast_l2):
    reports = convergence_study("square", "uniform", 3, SpectralOrder.parse(order), n0=10)
    l2, hcurl, hcurl2 = _finest_orders(reports)
    if atleast_l2:
        assert l2 >= expected[0] - tol
    else:
        assert l2 == pytest.approx(expected[0], abs=tol)
    assert hcurl == pytest.approx(expected[1], abs=tol)
    assert hcurl2 == pytest.approx(expected[2], abs=tol)


@pytest.mark.slow
def test_square_eigenvalues_at_h_one_fifth():
    rows = eigen_study("square", 5, SpectralOrder.parse("4"), 5)
    expected = [708.0004, 708.0034, 2350.2475, 4256.8267, 5024.7537]
    assert [row.value for row in rows] == pytest.approx(expected, rel=5e-4)
    assert rows[0].cluster_id == rows[1].cluster_id


@pytest.mark.slow
def test_square_eigenvalues_at_h_one_tenth():
    rows = eigen_study("square", 10, SpectralOrder.parse("4"), 5)
    expected = [707.9731, 707.9732, 2350.0016, 4255.8534, 5024.0055]
    assert [row.value for row in rows] == pytest.approx(expected, rel=1e-3)


@pytest.mark.slow
def test_extrapolated_first_eigenvalue():
    rows = eigen_levels_study("square", 3, SpectralOrder.parse("4"), 1, n0=5)
    values = [row.value for row in rows]
    assert richardson_extrapolate(values) == pytest.approx(707.9715, rel=1e-4)


@pytest.mark.slow
def test_lowest_order_eigenvalue_converges_quadratically():
    rows = eigen_levels_study("square", 3, SpectralOrder.parse("1"), 1, n0=5)
    orders = estimated_order([row.value for row in rows], 707.9715)
    assert orders[-1] == pytest.approx(2.0, abs=0.2)


@pytest.mark.slow
def test_lshape_first_eigenvalue():
    rows = eigen_levels_study("lshape", 3, SpectralOrder.parse("4"), 1, n0=4)
    values = [row.value for row in rows]
    assert values[1] == pytest.approx(534.942, rel=2e-3)
    assert 1.0 <= observed_order(values) <= 1.4
