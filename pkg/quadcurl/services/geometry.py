"""Bilinear reference map and the contravariant transforms.

All functions accept a single reference point or an array of points with the
coordinate axis last.
"""

import numpy as np

from quadcurl.logger import get_logger
from quadcurl.schemas.geometry import JacobianData, Quadrilateral
from quadcurl.services.base import GeometryError, NonConvexElementError

logger = get_logger("geometry")


def _split(refpt) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(refpt, dtype=float)
    if pts.shape[-1] != 2:
        raise GeometryError(f"reference points need a trailing axis of 2, got {pts.shape}")
    return pts[..., 0], pts[..., 1]


def shape_functions(xh: np.ndarray, yh: np.ndarray) -> np.ndarray:
    """sigma_1..sigma_4 stacked on the last axis."""
    return np.stack(
        [
            (1.0 - xh) * (1.0 - yh),
            (1.0 + xh) * (1.0 - yh),
            (1.0 + xh) * (1.0 + yh),
            (1.0 - xh) * (1.0 + yh),
        ],
        axis=-1,
    ) / 4.0


class BilinearMap:
    """Affine-in-each-variable entries of B_K for one element.

    B11 = b11 + b11y*y^, B12 = b12 + b12x*x^, B21 = b21 + b21y*y^,
    B22 = b22 + b22x*x^.
    """

    def __init__(self, quad: Quadrilateral):
        x1, x2, x3, x4 = quad.x
        y1, y2, y3, y4 = quad.y
        self.quad = quad
        self.b11, self.b11y = (x2 - x1 + x3 - x4) / 4.0, (x1 - x2 + x3 - x4) / 4.0
        self.b12, self.b12x = (x4 - x1 + x3 - x2) / 4.0, (x3 - x2 - x4 + x1) / 4.0
        self.b21, self.b21y = (y2 - y1 + y3 - y4) / 4.0, (y1 - y2 + y3 - y4) / 4.0
        self.b22, self.b22x = (y4 - y1 + y3 - y2) / 4.0, (y3 - y2 - y4 + y1) / 4.0

    def det_coefficients(self) -> tuple[float, float, float, float]:
        """(j0, jx, jy, jxy) with det J = j0 + jx x^ + jy y^ + jxy x^ y^."""
        j0 = self.b11 * self.b22 - self.b12 * self.b21
        jx = self.b11 * self.b22x - self.b12x * self.b21
        jy = self.b11y * self.b22 - self.b12 * self.b21y
        jxy = self.b11y * self.b22x - self.b12x * self.b21y
        return j0, jx, jy, jxy

    def matrices(self, xh: np.ndarray, yh: np.ndarray) -> np.ndarray:
        B = np.empty(np.shape(xh) + (2, 2))
        B[..., 0, 0] = self.b11 + self.b11y * yh
        B[..., 0, 1] = self.b12 + self.b12x * xh
        B[..., 1, 0] = self.b21 + self.b21y * yh
        B[..., 1, 1] = self.b22 + self.b22x * xh
        return B

    def evaluate(self, xh: np.ndarray, yh: np.ndarray) -> JacobianData:
        B = self.matrices(np.asarray(xh, dtype=float), np.asarray(yh, dtype=float))
        det = B[..., 0, 0] * B[..., 1, 1] - B[..., 0, 1] * B[..., 1, 0]
        if np.any(det <= 0.0):
            logger.error(f"Non-positive Jacobian (min det {float(np.min(det)):.3e})")
            raise NonConvexElementError(
                f"Jacobian determinant {float(np.min(det)):.3e} is not positive"
            )
        inv_t = np.empty_like(B)
        inv_t[..., 0, 0] = B[..., 1, 1] / det
        inv_t[..., 0, 1] = -B[..., 1, 0] / det
        inv_t[..., 1, 0] = -B[..., 0, 1] / det
        inv_t[..., 1, 1] = B[..., 0, 0] / det
        # w = ((x12+x34)/4 B22 - (y12+y34)/4 B12, -(y12+y34)/4 B11 + (x12+x34)/4 B21)
        w = np.empty(det.shape + (2,))
        w[..., 0] = self.b11y * B[..., 1, 1] - self.b21y * B[..., 0, 1]
        w[..., 1] = -self.b21y * B[..., 0, 0] + self.b11y * B[..., 1, 0]
        return JacobianData(B=B, detJ=det, B_inv_T=inv_t, w=w)


def map_to_physical(quad: Quadrilateral, refpt) -> np.ndarray:
    xh, yh = _split(refpt)
    return shape_functions(xh, yh) @ quad.vertices


def jacobian(quad: Quadrilateral, refpt) -> JacobianData:
    xh, yh = _split(refpt)
    return BilinearMap(quad).evaluate(xh, yh)


def sigma_weighted_det(quad: Quadrilateral, refpt) -> np.ndarray:
    """det J as (l2 l1 s1 sigma1 + l3 l2 s2 sigma2 + l4 l3 s3 sigma3 + l1 l4 s4 sigma4)/4."""
    xh, yh = _split(refpt)
    return shape_functions(xh, yh) @ quad.corner_cross / 4.0


def push_forward(
    quad: Quadrilateral, refpt, vhat, curlhat
) -> tuple[np.ndarray, np.ndarray]:
    """v = B^{-T} v^, curl = curl^ / det J."""
    data = jacobian(quad, refpt)
    v = np.einsum("...ij,...j->...i", data.B_inv_T, np.asarray(vhat, dtype=float))
    return v, np.asarray(curlhat, dtype=float) / data.detJ


def curl_curl_from_jacobian(
    data: JacobianData, curlhat: np.ndarray, grad_curlhat: np.ndarray
) -> np.ndarray:
    """(B/J^2) [ (d_y c, -d_x c) - (c/J) w ] with the reference curl c."""
    rot = np.stack([grad_curlhat[..., 1], -grad_curlhat[..., 0]], axis=-1)
    inner = rot - (curlhat / data.detJ)[..., None] * data.w
    return np.einsum("...ij,...j->...i", data.B, inner) / (data.detJ**2)[..., None]


def curl_curl_push_forward(
    quad: Quadrilateral, refpt, curlhat, grad_curlhat
) -> np.ndarray:
    data = jacobian(quad, refpt)
    return curl_curl_from_jacobian(
        data,
        np.asarray(curlhat, dtype=float),
        np.asarray(grad_curlhat, dtype=float),
    )


def edge_geometry(quad: Quadrilateral) -> tuple[np.ndarray, np.ndarray]:
    return quad.lengths.copy(), quad.sines.copy()


def edge_reference_points(edge: int, s) -> np.ndarray:
    """Reference points on edge 1..4 for the counterclockwise parameter s."""
    s = np.asarray(s, dtype=float)
    one = np.ones_like(s)
    if edge == 1:
        return np.stack([-one, -s], axis=-1)
    if edge == 2:
        return np.stack([s, -one], axis=-1)
    if edge == 3:
        return np.stack([one, s], axis=-1)
    if edge == 4:
        return np.stack([-s, one], axis=-1)
    raise GeometryError(f"edge index must be 1..4, got {edge}")


def edge_endpoints(edge: int) -> tuple[int, int]:
    """0-based local vertex ids (start, end) of an edge in counterclockwise order."""
    if edge not in (1, 2, 3, 4):
        raise GeometryError(f"edge index must be 1..4, got {edge}")
    return (edge + 2) % 4, (edge + 3) % 4
