from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from quadcurl.config import settings
from quadcurl.services.base import NonConvexElementError


class Quadrilateral(BaseModel):
    """Convex element with counterclockwise vertices P1..P4.

    Edge i (1-based) runs from P_{i-1} to P_i: edge 1 is P4P1 (x^ = -1),
    edge 2 is P1P2 (y^ = -1), edge 3 is P2P3 (x^ = 1), edge 4 is P3P4 (y^ = 1).
    """

    vertices: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("vertices", mode="before")
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        array = np.array(value, dtype=float).reshape(4, 2)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_convex(self) -> "Quadrilateral":
        scale = float(np.max(self.lengths)) if np.all(np.isfinite(self.vertices)) else 0.0
        if scale <= 0.0:
            raise NonConvexElementError("degenerate quadrilateral")
        tol = settings.mesh.convexity_tol
        cross = self.corner_cross
        for corner, value in enumerate(cross, start=1):
            if value < tol * scale * scale:
                raise NonConvexElementError(
                    f"corner P{corner} is not strictly convex (cross={value:.3e})",
                    corner=corner,
                )
        return self

    @property
    def x(self) -> np.ndarray:
        return self.vertices[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.vertices[:, 1]

    @cached_property
    def lengths(self) -> np.ndarray:
        """l_i = |P_i - P_{i-1}|."""
        return np.linalg.norm(self.vertices - np.roll(self.vertices, 1, axis=0), axis=1)

    @cached_property
    def corner_cross(self) -> np.ndarray:
        """Cross products at each corner, equal to s_i l_i l_{i+1}."""
        nxt = np.roll(self.vertices, -1, axis=0) - self.vertices
        prv = np.roll(self.vertices, 1, axis=0) - self.vertices
        return nxt[:, 0] * prv[:, 1] - nxt[:, 1] * prv[:, 0]

    @cached_property
    def sines(self) -> np.ndarray:
        return self.corner_cross / (self.lengths * np.roll(self.lengths, -1))

    def area(self) -> float:
        c = self.corner_cross
        return 0.5 * float(c[0] + c[2])

    def is_parallelogram(self, tol: float = 1e-12) -> bool:
        p = self.vertices
        gap = (p[1] - p[0]) - (p[2] - p[3])
        return bool(np.linalg.norm(gap) <= tol * float(np.max(self.lengths)))


class JacobianData(BaseModel):
    """B_K, det J_K, B_K^{-T} and the curl-curl correction vector w at points.

    Arrays carry the point shape in front: B is (..., 2, 2).
    """

    B: np.ndarray
    detJ: np.ndarray
    B_inv_T: np.ndarray
    w: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
