"""Jacobi and generalized Jacobi polynomials and Gauss-Legendre rules.

The classic Jacobi polynomials use the unnormalized three-term recurrence
(J_n(1) = binom(n + alpha, n)). The generalized families K^{-1,-1}_n and
K^{-2,-2}_n are built on top of them; their low indices are the Lagrange and
Hermite interpolants on [-1, 1].
"""

from functools import lru_cache

import numpy as np

from quadcurl.schemas.polynomial import PolynomialValue, QuadratureRule, TensorRule
from quadcurl.services.base import BasisError, ModeIndexError

MAX_INDEX = 64


def _check_index(n: int) -> None:
    if n < 0 or n > MAX_INDEX:
        raise ModeIndexError(f"polynomial index {n} outside [0, {MAX_INDEX}]")


def _jacobi_values(nmax: int, alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    values = np.empty((nmax + 1,) + z.shape)
    values[0] = 1.0
    if nmax == 0:
        return values
    apb = alpha + beta
    values[1] = 0.5 * (alpha - beta + (apb + 2.0) * z)
    for k in range(2, nmax + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        a2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb)
        values[k] = ((a2 + a3 * z) * values[k - 1] - a4 * values[k - 2]) / a1
    return values


def jacobi_table(
    nmax: int, alpha: float, beta: float, zeta: np.ndarray | float
) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of J_0..J_nmax with weights (alpha, beta).

    Returns two arrays of shape (nmax + 1, *zeta.shape).
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise BasisError(f"Jacobi weights must exceed -1, got ({alpha}, {beta})")
    _check_index(nmax)
    z = np.asarray(zeta, dtype=float)
    values = _jacobi_values(nmax, alpha, beta, z)
    derivs = np.zeros_like(values)
    if nmax >= 1:
        shifted = _jacobi_values(nmax - 1, alpha + 1.0, beta + 1.0, z)
        n = np.arange(1, nmax + 1, dtype=float).reshape((-1,) + (1,) * z.ndim)
        derivs[1:] = 0.5 * (alpha + beta + n + 1.0) * shifted
    return values, derivs


def jacobi_eval(n: int, alpha: float, beta: float, zeta: float) -> PolynomialValue:
    values, derivs = jacobi_table(n, alpha, beta, zeta)
    return PolynomialValue(value=float(values[n]), derivative=float(derivs[n]))


def k11_table(nmax: int, zeta: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
    """K^{-1,-1}_0..K^{-1,-1}_nmax and their first derivatives."""
    _check_index(nmax)
    z = np.asarray(zeta, dtype=float)
    values = np.empty((max(nmax, 1) + 1,) + z.shape)
    derivs = np.empty_like(values)
    values[0] = 0.5 * (1.0 - z)
    derivs[0] = -0.5
    values[1] = 0.5 * (1.0 + z)
    derivs[1] = 0.5
    if nmax >= 2:
        bubble = 0.25 * (z * z - 1.0)
        j11, _ = jacobi_table(nmax - 2, 1.0, 1.0, z)
        legendre, _ = jacobi_table(nmax - 1, 0.0, 0.0, z)
        for n in range(2, nmax + 1):
            values[n] = bubble * j11[n - 2]
            derivs[n] = 0.5 * (n - 1) * legendre[n - 1]
    return values[: nmax + 1], derivs[: nmax + 1]


def k11_eval(n: int, zeta: float) -> PolynomialValue:
    values, derivs = k11_table(n, zeta)
    return PolynomialValue(value=float(values[n]), derivative=float(derivs[n]))


def k22_table(
    nmax: int, zeta: np.ndarray | float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """K^{-2,-2}_0..K^{-2,-2}_nmax with first and second derivatives.

    Indices 0..3 are the cubic Hermite interpolants: K_0, K_2 carry the values
    at -1 and 1, K_1, K_3 the slopes.
    """
    _check_index(nmax)
    z = np.asarray(zeta, dtype=float)
    size = max(nmax, 3) + 1
    values = np.empty((size,) + z.shape)
    d1 = np.empty_like(values)
    d2 = np.empty_like(values)
    zm, zp = 1.0 - z, 1.0 + z

    values[0] = zm * zm * (2.0 + z) / 4.0
    values[1] = zm * zm * zp / 4.0
    values[2] = zp * zp * (2.0 - z) / 4.0
    values[3] = zp * zp * (z - 1.0) / 4.0
    d1[0] = 3.0 * (z - 1.0) * zp / 4.0
    d1[1] = (z - 1.0) * (3.0 * z + 1.0) / 4.0
    d1[2] = 3.0 * zm * zp / 4.0
    d1[3] = zp * (3.0 * z - 1.0) / 4.0
    d2[0] = 1.5 * z
    d2[1] = (3.0 * z - 1.0) / 2.0
    d2[2] = -1.5 * z
    d2[3] = (3.0 * z + 1.0) / 2.0

    if nmax >= 4:
        bubble = 0.25 * (z * z - 1.0)
        j22, _ = jacobi_table(nmax - 4, 2.0, 2.0, z)
        k11, _ = k11_table(nmax - 1, z)
        legendre, _ = jacobi_table(nmax - 2, 0.0, 0.0, z)
        for n in range(4, nmax + 1):
            values[n] = bubble * bubble * j22[n - 4]
            d1[n] = 0.5 * (n - 3) * k11[n - 1]
            d2[n] = 0.25 * (n - 3) * (n - 2) * legendre[n - 2]
    return values[: nmax + 1], d1[: nmax + 1], d2[: nmax + 1]


def k22_eval(n: int, zeta: float) -> PolynomialValue:
    values, d1, _ = k22_table(n, zeta)
    return PolynomialValue(value=float(values[n]), derivative=float(d1[n]))


@lru_cache(maxsize=64)
def _gauss_legendre(q: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    k = np.arange(1, q + 1, dtype=float)
    x = np.cos(np.pi * (4.0 * k - 1.0) / (4.0 * q + 2.0))
    for _ in range(100):
        values, derivs = jacobi_table(q, 0.0, 0.0, x)
        step = values[q] / derivs[q]
        x = x - step
        if np.max(np.abs(step)) < 1e-15:
            break
    _, derivs = jacobi_table(q, 0.0, 0.0, x)
    weights = 2.0 / ((1.0 - x * x) * derivs[q] ** 2)
    order = np.argsort(x)
    return tuple(x[order]), tuple(weights[order])


def gauss_legendre_rule(q: int) -> QuadratureRule:
    if q < 1:
        raise BasisError(f"quadrature needs at least one node, got {q}")
    if q > MAX_INDEX:
        raise ModeIndexError(f"quadrature order {q} above {MAX_INDEX}")
    nodes, weights = _gauss_legendre(q)
    return QuadratureRule(nodes=np.array(nodes), weights=np.array(weights), order=q)


def tensor_rule(q: int) -> TensorRule:
    rule = gauss_legendre_rule(q)
    x, y = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    w = np.outer(rule.weights, rule.weights)
    return TensorRule(x=x.ravel(), y=y.ravel(), weights=w.ravel())
