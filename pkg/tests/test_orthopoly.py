from math import comb

import numpy as np
import pytest

from quadcurl.services.base import BasisError, ModeIndexError
from quadcurl.services.orthopoly import (
    gauss_legendre_rule,
    jacobi_eval,
    jacobi_table,
    k11_eval,
    k11_table,
    k22_eval,
    k22_table,
    tensor_rule,
)

ZETA = np.linspace(-0.97, 0.97, 50)


@pytest.mark.parametrize("alpha,beta", [(0, 0), (1, 1), (2, 2), (2, 0)])
def test_jacobi_endpoint_values(alpha, beta):
    values, _ = jacobi_table(20, alpha, beta, 1.0)
    for n in range(21):
        assert values[n] == pytest.approx(comb(n + alpha, n), rel=1e-12)


def test_jacobi_derivative_matches_finite_difference():
    h = 1e-6
    values_p, _ = jacobi_table(12, 1.0, 1.0, ZETA + h)
    values_m, _ = jacobi_table(12, 1.0, 1.0, ZETA - h)
    _, derivs = jacobi_table(12, 1.0, 1.0, ZETA)
    assert np.allclose(derivs, (values_p - values_m) / (2 * h), atol=1e-5)


def test_legendre_orthogonality():
    rule = gauss_legendre_rule(25)
    values, _ = jacobi_table(20, 0.0, 0.0, rule.nodes)
    gram = (values * rule.weights) @ values.T
    expected = np.diag([2.0 / (2 * n + 1) for n in range(21)])
    assert np.allclose(gram, expected, atol=1e-12)


def test_k11_interpolation_and_bubbles():
    values, derivs = k11_table(20, np.array([-1.0, 1.0]))
    assert values[0].tolist() == [1.0, 0.0]
    assert values[1].tolist() == [0.0, 1.0]
    assert np.allclose(values[2:], 0.0, atol=1e-14)

    legendre, _ = jacobi_table(19, 0.0, 0.0, ZETA)
    _, d = k11_table(20, ZETA)
    for n in range(2, 21):
        assert np.allclose(d[n], 0.5 * (n - 1) * legendre[n - 1], atol=1e-12)


def test_k22_hermite_conditions():
    values, d1, _ = k22_table(20, np.array([-1.0, 1.0]))
    assert np.allclose(values[0], [1.0, 0.0])
    assert np.allclose(values[2], [0.0, 1.0])
    assert np.allclose(values[1], 0.0) and np.allclose(values[3], 0.0)
    assert np.allclose(d1[1], [1.0, 0.0])
    assert np.allclose(d1[3], [0.0, 1.0])
    assert np.allclose(d1[0], 0.0) and np.allclose(d1[2], 0.0)
    assert np.allclose(values[4:], 0.0, atol=1e-14)
    assert np.allclose(d1[4:], 0.0, atol=1e-12)


def test_k22_derivatives_match_finite_differences():
    h = 1e-5
    vp, d1p, _ = k22_table(15, ZETA + h)
    vm, d1m, _ = k22_table(15, ZETA - h)
    _, d1, d2 = k22_table(15, ZETA)
    assert np.allclose(d1, (vp - vm) / (2 * h), atol=1e-6)
    assert np.allclose(d2, (d1p - d1m) / (2 * h), atol=1e-5)


def test_k22_first_derivative_is_k11():
    k11, _ = k11_table(19, ZETA)
    _, d1, _ = k22_table(20, ZETA)
    for n in range(4, 21):
        assert np.allclose(d1[n], 0.5 * (n - 3) * k11[n - 1], atol=1e-12)


@pytest.mark.parametrize("q", [1, 3, 8, 20])
def test_gauss_rule_is_exact_to_degree_2q_minus_1(q):
    rule = gauss_legendre_rule(q)
    for degree in range(2 * q):
        exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
        assert float(rule.weights @ rule.nodes**degree) == pytest.approx(exact, abs=1e-13)


def test_tensor_rule_integrates_area():
    rule = tensor_rule(6)
    assert rule.size == 36
    assert float(rule.weights.sum()) == pytest.approx(4.0)
    assert float(rule.weights @ (rule.x**2 * rule.y**4)) == pytest.approx(4.0 / 15.0)


def test_scalar_evaluators():
    assert jacobi_eval(2, 0.0, 0.0, 0.5).value == pytest.approx(-0.125)
    value = k11_eval(2, 0.0)
    assert value.value == pytest.approx(-0.25)
    assert value.derivative == pytest.approx(0.0)


def test_invalid_requests():
    with pytest.raises(BasisError):
        jacobi_table(3, -1.0, 0.0, 0.0)
    with pytest.raises(ModeIndexError):
        k11_table(-1, 0.0)
    with pytest.raises(ModeIndexError):
        k22_table(1000, 0.0)
    with pytest.raises(BasisError):
        gauss_legendre_rule(0)


def _jacobi_series(n, alpha, beta, x):
    """Direct summation of (alpha+1)_n / n! * 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2)."""
    z = 0.5 * (1.0 - x)
    total, term = 0.0, 1.0
    for k in range(n + 1):
        total += term
        term *= (k - n) * (n + alpha + beta + 1.0 + k) / ((alpha + 1.0 + k) * (k + 1.0)) * z
    prefactor = 1.0
    for k in range(n):
        prefactor *= (alpha + 1.0 + k) / (k + 1.0)
    return prefactor * total


def test_jacobi_matches_hypergeometric_series():
    assert jacobi_eval(5, 2.0, 2.0, 0.3).value == pytest.approx(_jacobi_series(5, 2.0, 2.0, 0.3), rel=1e-13)
    assert jacobi_eval(0, 1.0, 1.0, 0.37).value == 1.0
    for zeta in (-0.8, 0.1, 0.6):
        assert jacobi_eval(4, 1.0, 0.0, zeta).value == pytest.approx(_jacobi_series(4, 1.0, 0.0, zeta), rel=1e-12)


def test_k11_is_a_legendre_difference():
    k11, _ = k11_table(20, ZETA)
    legendre, _ = jacobi_table(20, 0.0, 0.0, ZETA)
    for n in range(2, 21):
        expected = (n - 1) / (2.0 * (2 * n - 1)) * (legendre[n] - legendre[n - 2])
        assert np.allclose(k11[n], expected, rtol=0.0, atol=1e-12)


def test_k22_scalar_examples():
    assert k22_eval(4, 0.0).value == pytest.approx(1.0 / 16.0, abs=1e-15)
    hermite = k22_eval(1, -1.0)
    assert hermite.value == pytest.approx(0.0, abs=1e-15)
    assert hermite.derivative == pytest.approx(1.0, abs=1e-14)
    assert k22_eval(5, 0.5).derivative == pytest.approx(k11_eval(4, 0.5).value, abs=1e-13)
