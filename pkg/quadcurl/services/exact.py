"""Closed-form exact solutions for the source problem on the unit square."""

from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

PointField = Callable[[np.ndarray], np.ndarray]


class ExactSolution(BaseModel):
    """u and its curl powers as functions of points shaped (..., 2)."""

    name: str
    u: PointField
    curl_u: PointField
    curlcurl_u: PointField
    f: PointField

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _sin3(t: np.ndarray, k: int) -> np.ndarray:
    """k-th derivative of sin^3(pi t) = (3 sin(pi t) - sin(3 pi t)) / 4."""
    phase = k * np.pi / 2.0
    return (
        3.0 * np.pi**k * np.sin(np.pi * t + phase)
        - (3.0 * np.pi) ** k * np.sin(3.0 * np.pi * t + phase)
    ) / 4.0


def _split(points: np.ndarray):
    points = np.asarray(points, dtype=float)
    return points[..., 0], points[..., 1]


def _u(points: np.ndarray) -> np.ndarray:
    x, y = _split(points)
    return np.stack([_sin3(x, 0) * _sin3(y, 1), -_sin3(x, 1) * _sin3(y, 0)], axis=-1)


def _curl(points: np.ndarray) -> np.ndarray:
    x, y = _split(points)
    return -(_sin3(x, 2) * _sin3(y, 0) + _sin3(x, 0) * _sin3(y, 2))


def _curlcurl(points: np.ndarray) -> np.ndarray:
    x, y = _split(points)
    return np.stack(
        [
            -(_sin3(x, 2) * _sin3(y, 1) + _sin3(x, 0) * _sin3(y, 3)),
            _sin3(x, 3) * _sin3(y, 0) + _sin3(x, 1) * _sin3(y, 2),
        ],
        axis=-1,
    )


def _load(points: np.ndarray) -> np.ndarray:
    x, y = _split(points)
    return np.stack(
        [
            _sin3(x, 4) * _sin3(y, 1)
            + 2.0 * _sin3(x, 2) * _sin3(y, 3)
            + _sin3(x, 0) * _sin3(y, 5),
            -(
                _sin3(x, 5) * _sin3(y, 0)
                + 2.0 * _sin3(x, 3) * _sin3(y, 2)
                + _sin3(x, 1) * _sin3(y, 4)
            ),
        ],
        axis=-1,
    )


def manufactured_solution() -> ExactSolution:
    """u = (3 pi sin^3(pi x) sin^2(pi y) cos(pi y), -3 pi sin^3(pi y) sin^2(pi x) cos(pi x)).

    u is the curl of sin^3(pi x) sin^3(pi y), so it is divergence free, and
    both u x n and curl u vanish on the boundary of (0,1)^2.
    """
    return ExactSolution(name="sin3", u=_u, curl_u=_curl, curlcurl_u=_curlcurl, f=_load)


def _zero_vector(points: np.ndarray) -> np.ndarray:
    return np.zeros(np.shape(points)[:-1] + (2,))


def _zero_scalar(points: np.ndarray) -> np.ndarray:
    return np.zeros(np.shape(points)[:-1])


def zero_solution() -> ExactSolution:
    return ExactSolution(
        name="zero",
        u=_zero_vector,
        curl_u=_zero_scalar,
        curlcurl_u=_zero_vector,
        f=_zero_vector,
    )
