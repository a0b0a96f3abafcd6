"""Mesh construction, refinement, IO and global DOF numbering."""

from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np

from quadcurl.config import settings
from quadcurl.logger import get_logger
from quadcurl.schemas.basis import Mode, ModeFamily, SpectralOrder
from quadcurl.schemas.geometry import Quadrilateral
from quadcurl.schemas.mesh import DofMap, Mesh, MeshEdge
from quadcurl.services.base import BasisError, MeshError, NonConformingMeshError
from quadcurl.services.geometry import edge_endpoints, edge_reference_points, map_to_physical
from quadcurl.services.refbasis import (
    edge_trace,
    enumerate_modes,
    eval_scalar_mode,
    scalar_modes,
)

logger = get_logger("meshing")

MESH_HEADER = "quadmesh v1"
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit splitmix generator; see docs/mesh_format.md for the recurrence."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def build_mesh(vertices, elements) -> Mesh:
    """Derive edges and orientations, validating convexity and conformity."""
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 2)
    elements = np.asarray(elements, dtype=np.int64).reshape(-1, 4)
    if elements.size == 0:
        raise MeshError("mesh has no elements")
    if elements.min() < 0 or elements.max() >= vertices.shape[0]:
        raise MeshError("element references a vertex that does not exist")

    for e, element in enumerate(elements):
        if len(set(element.tolist())) != 4:
            raise MeshError(f"element {e} repeats a vertex")
        Quadrilateral(vertices=vertices[element])

    owners: dict[tuple[int, int], list[int]] = {}
    directed: set[tuple[int, int]] = set()
    element_edges = np.empty((len(elements), 4), dtype=np.int64)
    orientation = np.empty((len(elements), 4), dtype=np.int64)
    order: list[tuple[int, int]] = []
    for e, element in enumerate(elements):
        for local in range(4):
            a_loc, b_loc = edge_endpoints(local + 1)
            a, b = int(element[a_loc]), int(element[b_loc])
            if (a, b) in directed:
                raise NonConformingMeshError(
                    f"edge ({a},{b}) traversed twice in the same direction"
                )
            directed.add((a, b))
            key = (min(a, b), max(a, b))
            if key not in owners:
                owners[key] = []
                order.append(key)
            owners[key].append(e)
            if len(owners[key]) > 2:
                raise NonConformingMeshError(f"edge {key} has more than two elements")
            orientation[e, local] = 1 if a < b else -1

    lookup = {key: i for i, key in enumerate(order)}
    for e, element in enumerate(elements):
        for local in range(4):
            a_loc, b_loc = edge_endpoints(local + 1)
            a, b = int(element[a_loc]), int(element[b_loc])
            element_edges[e, local] = lookup[(min(a, b), max(a, b))]

    edges = [
        MeshEdge(vertices=key, elements=tuple(owners[key]), boundary=len(owners[key]) == 1)
        for key in order
    ]
    _check_hanging_nodes(vertices, edges)
    return Mesh(
        vertices=vertices,
        elements=elements,
        edges=edges,
        element_edges=element_edges,
        element_orientation=orientation,
    )


def _check_hanging_nodes(vertices: np.ndarray, edges: list[MeshEdge]) -> None:
    for edge in edges:
        if not edge.boundary:
            continue
        a, b = vertices[edge.vertices[0]], vertices[edge.vertices[1]]
        d = b - a
        length2 = float(d @ d)
        rel = vertices - a
        t = rel @ d / length2
        dist = np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0]) / np.sqrt(length2)
        inside = (t > 1e-9) & (t < 1.0 - 1e-9) & (dist < 1e-9 * np.sqrt(length2))
        if np.any(inside):
            raise NonConformingMeshError(
                f"vertex {int(np.flatnonzero(inside)[0])} hangs on edge {edge.vertices}"
            )


def _grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.arange(n + 1) / n
    X, Y = np.meshgrid(t, t, indexing="xy")
    vertices = np.stack([X.ravel(), Y.ravel()], axis=-1)
    elements = [
        (j * (n + 1) + i, j * (n + 1) + i + 1, (j + 1) * (n + 1) + i + 1, (j + 1) * (n + 1) + i)
        for j in range(n)
        for i in range(n)
    ]
    return vertices, np.array(elements, dtype=np.int64)


def structured_square_mesh(n: int) -> Mesh:
    """n x n uniform squares on (0,1)^2."""
    if n < 1:
        raise MeshError(f"mesh needs n >= 1, got {n}")
    vertices, elements = _grid(n)
    return build_mesh(vertices, elements)


def perturbed_quad_mesh(n: int, magnitude: float, seed: int) -> Mesh:
    """Uniform mesh with interior vertices shifted by up to magnitude * h."""
    if n < 1:
        raise MeshError(f"mesh needs n >= 1, got {n}")
    if not 0.0 <= magnitude < 0.25:
        raise MeshError(f"perturbation magnitude must lie in [0, 0.25), got {magnitude}")
    vertices, elements = _grid(n)
    h = 1.0 / n
    rng = SplitMix64(seed)
    for j in range(1, n):
        for i in range(1, n):
            v = j * (n + 1) + i
            dx = (2.0 * rng.next_float() - 1.0) * magnitude * h
            dy = (2.0 * rng.next_float() - 1.0) * magnitude * h
            vertices[v, 0] += dx
            vertices[v, 1] += dy
    logger.debug(f"Perturbed {n}x{n} mesh (magnitude={magnitude}, seed={seed})")
    return build_mesh(vertices, elements)


def lshape_mesh(n: int) -> Mesh:
    """Uniform squares of side 1/n on (0,1)^2 minus [0.5,1)^2."""
    if n < 2 or n % 2:
        raise MeshError(f"L-shape mesh needs an even n >= 2, got {n}")
    half = n // 2
    ids: dict[tuple[int, int], int] = {}
    coords: list[tuple[float, float]] = []

    def vid(i: int, j: int) -> int:
        if (i, j) not in ids:
            ids[(i, j)] = len(coords)
            coords.append((i / n, j / n))
        return ids[(i, j)]

    elements = []
    for j in range(n):
        for i in range(n):
            if i >= half and j >= half:
                continue
            elements.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return build_mesh(np.array(coords), np.array(elements, dtype=np.int64))


def refine(mesh: Mesh) -> Mesh:
    """Split every element into four through edge midpoints and its center.

    New vertices follow the old ones: edge midpoints in edge order, then
    element centers in element order.
    """
    n_vertices, n_edges = mesh.n_vertices, len(mesh.edges)
    lookup = mesh.edge_lookup
    pairs = np.array([edge.vertices for edge in mesh.edges])
    midpoints = 0.5 * (mesh.vertices[pairs[:, 0]] + mesh.vertices[pairs[:, 1]])
    centers = np.array([map_to_physical(quad, (0.0, 0.0)) for quad in mesh.quads])

    def mid(a: int, b: int) -> int:
        return n_vertices + lookup[(min(a, b), max(a, b))]

    children = []
    for e, (a, b, c, d) in enumerate(mesh.elements.tolist()):
        center = n_vertices + n_edges + e
        ab, bc, cd, da = mid(a, b), mid(b, c), mid(c, d), mid(d, a)
        children += [
            (a, ab, center, da),
            (ab, b, bc, center),
            (center, bc, c, cd),
            (da, center, cd, d),
        ]
    vertices = np.vstack([mesh.vertices, midpoints, centers])
    return build_mesh(vertices, np.array(children, dtype=np.int64))


def mesh_size(mesh: Mesh) -> float:
    """Longest edge length."""
    pairs = np.array([edge.vertices for edge in mesh.edges])
    d = mesh.vertices[pairs[:, 1]] - mesh.vertices[pairs[:, 0]]
    return float(np.max(np.linalg.norm(d, axis=1)))


def write_mesh(mesh: Mesh, path: str | Path) -> None:
    lines = [MESH_HEADER, f"vertices {mesh.n_vertices}"]
    lines += [f"{x:.17g} {y:.17g}" for x, y in mesh.vertices]
    lines.append(f"elements {mesh.n_elements}")
    lines += [" ".join(str(int(v)) for v in element) for element in mesh.elements]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_mesh(path: str | Path) -> Mesh:
    try:
        lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    except OSError as e:
        raise MeshError(f"cannot read mesh file {path}: {e}") from e
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    try:
        if lines[0] != MESH_HEADER:
            raise MeshError(f"expected header '{MESH_HEADER}', got '{lines[0]}'")
        label, count = lines[1].split()
        if label != "vertices":
            raise MeshError("missing 'vertices' section")
        nv = int(count)
        vertices = [tuple(float(t) for t in ln.split()) for ln in lines[2 : 2 + nv]]
        label, count = lines[2 + nv].split()
        if label != "elements":
            raise MeshError("missing 'elements' section")
        ne = int(count)
        elements = [tuple(int(t) for t in ln.split()) for ln in lines[3 + nv : 3 + nv + ne]]
    except (IndexError, ValueError) as e:
        raise MeshError(f"malformed mesh file {path}: {e}") from e
    if len(vertices) != nv or len(elements) != ne:
        raise MeshError(f"mesh file {path} is truncated")
    if any(len(v) != 2 for v in vertices) or any(len(el) != 4 for el in elements):
        raise MeshError(f"mesh file {path} has malformed rows")
    return build_mesh(np.array(vertices), np.array(elements, dtype=np.int64))


_REFERENCE_SQUARE = Quadrilateral(
    vertices=[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
)
_SAMPLES = np.array([-0.87, -0.52, -0.13, 0.21, 0.64, 0.93])


def _canonical_mode(mode: Mode) -> Mode:
    """The same trace family placed on edge 2."""
    k = mode.trace_index
    if mode.family == ModeFamily.FUNCTION_EDGE:
        return Mode(family=mode.family, m=k, n=0, edge=2)
    if mode.family == ModeFamily.CURL_EDGE:
        return Mode(family=mode.family, m=k, n=1, edge=2)
    return Mode(family=mode.family, m=1, n=0, edge=2)


@lru_cache(maxsize=4096)
def _vector_profile(mode: Mode, orientation: int) -> np.ndarray:
    tangential, curl = edge_trace(
        mode, _REFERENCE_SQUARE, mode.edge, orientation * _SAMPLES
    )
    return np.concatenate([orientation * tangential, curl])


@lru_cache(maxsize=4096)
def _scalar_profile(m: int, n: int, edge: int, orientation: int) -> np.ndarray:
    value, _ = eval_scalar_mode(m, n, edge_reference_points(edge, orientation * _SAMPLES))
    return value


def _match_sign(profile: np.ndarray, canonical: np.ndarray, what: str) -> int:
    sign = 1 if float(profile @ canonical) >= 0.0 else -1
    scale = float(np.linalg.norm(canonical))
    if scale == 0.0 or np.linalg.norm(profile - sign * canonical) > 1e-10 * scale:
        raise BasisError(f"edge trace of {what} is not a signed copy of its global trace")
    return sign


def edge_sign(mode: Mode, orientation: int) -> int:
    """Sign making a local edge mode agree with the global edge function."""
    return _match_sign(
        _vector_profile(mode, orientation),
        _vector_profile(_canonical_mode(mode), 1),
        mode.label(),
    )


def scalar_edge_sign(m: int, n: int, edge: int, orientation: int) -> int:
    k = n if edge in (1, 3) else m
    return _match_sign(
        _scalar_profile(m, n, edge, orientation),
        _scalar_profile(k, 0, 2, 1),
        f"scalar mode ({m},{n}) on edge {edge}",
    )


def build_dof_map(
    mesh: Mesh,
    order: SpectralOrder,
    homogeneous: bool = True,
    low_modes: Optional[str] = None,
) -> DofMap:
    """Number vertex, edge and interior DOFs and fix edge orientation signs."""
    low_modes = low_modes or settings.basis.low_modes
    modes = enumerate_modes(order, low_modes)
    smodes = scalar_modes(order)
    boundary_vertex = mesh.boundary_vertices
    ne = mesh.n_elements

    u_index = np.empty((ne, len(modes)), dtype=np.int64)
    u_sign = np.ones((ne, len(modes)))
    u_keys: list[tuple] = []
    u_bnd: list[bool] = []
    u_lookup: dict[tuple, int] = {}

    p_index = np.empty((ne, len(smodes)), dtype=np.int64)
    p_sign = np.ones((ne, len(smodes)))
    p_bnd: list[bool] = []
    p_lookup: dict[tuple, int] = {}

    def assign(lookup, keys, bnd, key, boundary) -> int:
        if key not in lookup:
            lookup[key] = len(bnd)
            bnd.append(boundary)
            if keys is not None:
                keys.append(key)
        return lookup[key]

    for e in range(ne):
        element = mesh.elements[e]
        for i, mode in enumerate(modes):
            if mode.entity == "vertex":
                v = int(element[mode.corner - 1])
                key, boundary = ("v", v), bool(boundary_vertex[v])
            elif mode.entity == "edge":
                g = int(mesh.element_edges[e, mode.edge - 1])
                o = int(mesh.element_orientation[e, mode.edge - 1])
                key = ("e", g, mode.trace_kind, mode.trace_index)
                boundary = mesh.edges[g].boundary
                u_sign[e, i] = edge_sign(mode, o)
            else:
                key, boundary = ("i", e, i), False
            u_index[e, i] = assign(u_lookup, u_keys, u_bnd, key, boundary)

        for i, smode in enumerate(smodes):
            if smode.entity == "vertex":
                v = int(element[smode.corner - 1])
                key, boundary = ("v", v), bool(boundary_vertex[v])
            elif smode.entity == "edge":
                g = int(mesh.element_edges[e, smode.edge - 1])
                o = int(mesh.element_orientation[e, smode.edge - 1])
                k = smode.n if smode.edge in (1, 3) else smode.m
                key, boundary = ("e", g, k), mesh.edges[g].boundary
                p_sign[e, i] = scalar_edge_sign(smode.m, smode.n, smode.edge, o)
            else:
                key, boundary = ("i", e, i), False
            p_index[e, i] = assign(p_lookup, None, p_bnd, key, boundary)

    dofmap = DofMap(
        order=order,
        homogeneous=homogeneous,
        low_modes=low_modes,
        u_index=u_index,
        u_sign=u_sign,
        u_boundary=np.array(u_bnd, dtype=bool),
        u_keys=u_keys,
        p_index=p_index,
        p_sign=p_sign,
        p_boundary=np.array(p_bnd, dtype=bool),
    )
    logger.info(
        f"DOF map built for order {order} on {ne} elements: "
        f"{dofmap.n_u}/{dofmap.n_u_total} free u-DOFs, {dofmap.n_p} free p-DOFs"
    )
    return dofmap
