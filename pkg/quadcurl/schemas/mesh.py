from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from quadcurl.schemas.basis import SpectralOrder
from quadcurl.schemas.geometry import Quadrilateral


class MeshEdge(BaseModel):
    vertices: tuple[int, int] = Field(description="Global vertex ids, lower id first")
    elements: tuple[int, ...] = Field(description="Adjacent element ids")
    boundary: bool

    model_config = ConfigDict(frozen=True)


class Mesh(BaseModel):
    """Conforming quadrilateral mesh.

    Local edge i of an element (1-based) runs counterclockwise from local
    vertex (i + 2) % 4 to (i + 3) % 4. `element_orientation` is +1 where
    that direction agrees with the global one (lower to higher vertex id).
    """

    vertices: np.ndarray
    elements: np.ndarray
    edges: list[MeshEdge]
    element_edges: np.ndarray
    element_orientation: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_elements(self) -> int:
        return int(self.elements.shape[0])

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def quads(self) -> list[Quadrilateral]:
        return [Quadrilateral(vertices=self.vertices[e]) for e in self.elements]

    @cached_property
    def boundary_vertices(self) -> np.ndarray:
        mask = np.zeros(self.n_vertices, dtype=bool)
        for edge in self.edges:
            if edge.boundary:
                mask[list(edge.vertices)] = True
        return mask

    @cached_property
    def edge_lookup(self) -> dict[tuple[int, int], int]:
        return {edge.vertices: i for i, edge in enumerate(self.edges)}


class DofMap(BaseModel):
    """Global numbering of the u (vector) and p (scalar) unknowns.

    `u_index[e, i]` is the global id of local mode i of element e and
    `u_sign[e, i]` the factor relating the global function to the local one.
    Boundary DOFs are flagged; with `homogeneous` they are eliminated.
    """

    order: SpectralOrder
    homogeneous: bool
    low_modes: str = "phi"
    u_index: np.ndarray
    u_sign: np.ndarray
    u_boundary: np.ndarray
    u_keys: list[tuple]
    p_index: np.ndarray
    p_sign: np.ndarray
    p_boundary: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_u_total(self) -> int:
        return int(self.u_boundary.shape[0])

    @property
    def n_p_total(self) -> int:
        return int(self.p_boundary.shape[0])

    @cached_property
    def u_free(self) -> np.ndarray:
        if not self.homogeneous:
            return np.arange(self.n_u_total)
        return np.flatnonzero(~self.u_boundary)

    @cached_property
    def p_free(self) -> np.ndarray:
        if not self.homogeneous:
            return np.arange(self.n_p_total)
        return np.flatnonzero(~self.p_boundary)

    @property
    def n_u(self) -> int:
        return int(self.u_free.shape[0])

    @property
    def n_p(self) -> int:
        return int(self.p_free.shape[0])
