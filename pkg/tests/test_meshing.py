import numpy as np
import pytest

from quadcurl.domains import domain_registry, get_domain
from quadcurl.domains.plugin_system import DomainRegistry
from quadcurl.domains.plugins.square import SquarePlugin
from quadcurl.schemas.basis import SpectralOrder
from quadcurl.services.base import MeshError, NonConformingMeshError, NonConvexElementError
from quadcurl.services.geometry import edge_reference_points
from quadcurl.services.meshing import (
    SplitMix64,
    build_dof_map,
    build_mesh,
    lshape_mesh,
    mesh_size,
    perturbed_quad_mesh,
    read_mesh,
    refine,
    structured_square_mesh,
    write_mesh,
)
from quadcurl.services.refbasis import edge_trace, enumerate_modes, eval_scalar_mode, scalar_modes

S = np.linspace(-0.9, 0.9, 7)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_structured_counts(n):
    mesh = structured_square_mesh(n)
    assert mesh.n_vertices == (n + 1) ** 2
    assert mesh.n_elements == n * n
    assert mesh.n_edges == 2 * n * (n + 1)
    assert sum(edge.boundary for edge in mesh.edges) == 4 * n
    assert mesh_size(mesh) == pytest.approx(1.0 / n)


def test_refine_quadruples_elements(square_mesh_2):
    fine = refine(square_mesh_2)
    assert fine.n_elements == 16
    assert fine.n_vertices == 25
    assert mesh_size(fine) == pytest.approx(0.25)
    assert np.allclose(sorted(map(tuple, fine.vertices)), sorted(map(tuple, structured_square_mesh(4).vertices)))
    for (a, b), edge_id in square_mesh_2.edge_lookup.items():
        midpoint = 0.5 * (square_mesh_2.vertices[a] + square_mesh_2.vertices[b])
        assert np.allclose(fine.vertices[square_mesh_2.n_vertices + edge_id], midpoint)
    assert len(square_mesh_2.edge_lookup) == len(square_mesh_2.edges) == 12


def test_lshape_mesh():
    mesh = lshape_mesh(4)
    assert mesh.n_elements == 12
    assert mesh.n_vertices == 21
    area = sum(quad.area() for quad in mesh.quads)
    assert area == pytest.approx(0.75)
    with pytest.raises(MeshError):
        lshape_mesh(3)


def test_splitmix64_reference_output():
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert 0.0 <= SplitMix64(42).next_float() < 1.0


def test_perturbed_mesh_is_seeded():
    a = perturbed_quad_mesh(6, 0.2, seed=3)
    b = perturbed_quad_mesh(6, 0.2, seed=3)
    c = perturbed_quad_mesh(6, 0.2, seed=4)
    assert np.array_equal(a.vertices, b.vertices)
    assert not np.array_equal(a.vertices, c.vertices)
    uniform = structured_square_mesh(6)
    shift = np.abs(a.vertices - uniform.vertices)
    assert np.all(shift <= 0.2 / 6 + 1e-15)
    assert np.allclose(shift[a.boundary_vertices], 0.0)
    with pytest.raises(MeshError):
        perturbed_quad_mesh(4, 0.3, seed=1)


def test_mesh_file_round_trip(tmp_path, perturbed_mesh_4):
    path = tmp_path / "mesh.txt"
    write_mesh(perturbed_mesh_4, path)
    loaded = read_mesh(path)
    assert np.array_equal(loaded.vertices, perturbed_mesh_4.vertices)
    assert np.array_equal(loaded.elements, perturbed_mesh_4.elements)


def test_malformed_mesh_files(tmp_path):
    bad_header = tmp_path / "a.txt"
    bad_header.write_text("mesh v0\nvertices 0\nelements 0\n")
    with pytest.raises(MeshError):
        read_mesh(bad_header)
    truncated = tmp_path / "b.txt"
    truncated.write_text("quadmesh v1\nvertices 4\n0 0\n1 0\n")
    with pytest.raises(MeshError):
        read_mesh(truncated)
    with pytest.raises(MeshError):
        read_mesh(tmp_path / "missing.txt")


def test_rejected_meshes():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    with pytest.raises(MeshError):
        build_mesh(square, np.zeros((0, 4)))
    with pytest.raises(MeshError):
        build_mesh(square, [(0, 1, 2, 7)])
    with pytest.raises(NonConvexElementError):
        build_mesh([(0, 0), (1, 0), (0.2, 0.2), (0, 1)], [(0, 1, 2, 3)])
    overlapping = square + [(1, 2), (0, 2)]
    with pytest.raises(NonConformingMeshError):
        build_mesh(overlapping, [(0, 1, 2, 3), (0, 1, 4, 5)])
    hanging = square + [(2, 0), (2, 0.5), (1, 0.5), (2, 1)]
    with pytest.raises(NonConformingMeshError):
        build_mesh(hanging, [(0, 1, 2, 3), (1, 4, 5, 6), (6, 5, 7, 2)])


def test_orientation_is_opposite_across_interior_edges(perturbed_mesh_4):
    mesh = perturbed_mesh_4
    for g, edge in enumerate(mesh.edges):
        if edge.boundary:
            continue
        signs = []
        for e in edge.elements:
            local = int(np.flatnonzero(mesh.element_edges[e] == g)[0])
            signs.append(int(mesh.element_orientation[e, local]))
        assert sorted(signs) == [-1, 1]


def test_lowest_order_dof_count():
    dofmap = build_dof_map(structured_square_mesh(10), SpectralOrder.parse("1"))
    assert dofmap.n_u == 261
    assert dofmap.n_p == 81
    full = build_dof_map(structured_square_mesh(10), SpectralOrder.parse("1"), homogeneous=False)
    assert full.n_u == full.n_u_total == 121 + 220


def test_dof_map_shares_entities(square_mesh_2, order_333):
    dofmap = build_dof_map(square_mesh_2, order_333)
    per_edge = 1 + (order_333.M - 1) + (order_333.N - 2)
    interior = (order_333.L - 1) ** 2 + (order_333.N - 1) * (order_333.N - 3)
    expected = square_mesh_2.n_vertices + per_edge * square_mesh_2.n_edges + interior * 4
    assert dofmap.n_u_total == expected
    assert dofmap.u_index.shape == (4, 24)
    assert set(np.unique(dofmap.u_sign)) <= {-1.0, 1.0}


def _side(mesh, dofmap, modes, e, g, s):
    """Global-function traces on edge g as seen from element e."""
    local = int(np.flatnonzero(mesh.element_edges[e] == g)[0]) + 1
    out = {}
    for i, mode in enumerate(modes):
        tangential, curl = edge_trace(mode, mesh.quads[e], local, s)
        gid = int(dofmap.u_index[e, i])
        sign = dofmap.u_sign[e, i]
        t0, c0 = out.get(gid, (0.0, 0.0))
        out[gid] = (t0 + sign * tangential, c0 + sign * curl)
    return out


@pytest.mark.parametrize("order", ["3,4,3", "2,2,2"])
def test_global_functions_are_conforming(perturbed_mesh_4, order):
    """Tangential component and curl agree from both sides of every interior edge."""
    mesh = perturbed_mesh_4
    spectral = SpectralOrder.parse(order)
    dofmap = build_dof_map(mesh, spectral, homogeneous=False)
    modes = enumerate_modes(spectral)
    for g, edge in enumerate(mesh.edges):
        if edge.boundary:
            continue
        a, b = edge.elements
        left = _side(mesh, dofmap, modes, a, g, S)
        right = _side(mesh, dofmap, modes, b, g, -S)
        for gid in set(left) | set(right):
            tl, cl = left.get(gid, (0.0, 0.0))
            tr, cr = right.get(gid, (0.0, 0.0))
            assert np.allclose(tl, -np.asarray(tr), atol=1e-9)
            assert np.allclose(cl, cr, atol=1e-9)


def test_scalar_functions_are_continuous(perturbed_mesh_4):
    mesh = perturbed_mesh_4
    order = SpectralOrder.parse("4,4,4")
    dofmap = build_dof_map(mesh, order, homogeneous=False)
    smodes = scalar_modes(order)

    def side(e, g, s):
        local = int(np.flatnonzero(mesh.element_edges[e] == g)[0]) + 1
        pts = edge_reference_points(local, s)
        out = {}
        for i, smode in enumerate(smodes):
            value, _ = eval_scalar_mode(smode.m, smode.n, pts)
            gid = int(dofmap.p_index[e, i])
            out[gid] = out.get(gid, 0.0) + dofmap.p_sign[e, i] * value
        return out

    for g, edge in enumerate(mesh.edges):
        if edge.boundary:
            continue
        a, b = edge.elements
        left, right = side(a, g, S), side(b, g, -S)
        for gid in set(left) | set(right):
            assert np.allclose(left.get(gid, 0.0), right.get(gid, 0.0), atol=1e-12)


def test_domain_registry():
    assert set(domain_registry.names()) >= {"square", "lshape"}
    assert get_domain("lshape").default_shift() == pytest.approx(300.0)
    with pytest.raises(MeshError):
        get_domain("disk")
    with pytest.raises(MeshError):
        get_domain("lshape").build(4, kind="perturbed")
    with pytest.raises(MeshError):
        get_domain("square").build(4, kind="curved")

    assert domain_registry.mesh_kinds() == ["uniform", "perturbed"]
    assert get_domain("lshape").mesh_kinds == ("uniform",)

    registry = DomainRegistry()
    assert registry.mesh_kinds() == []
    registry.register(SquarePlugin())
    assert registry.mesh_kinds() == ["uniform", "perturbed"]
    with pytest.raises(ValueError):
        registry.register(SquarePlugin())
    with pytest.raises(TypeError):
        registry.register(object())


def test_square_plugin_builds_perturbed_meshes():
    mesh = get_domain("square").build(5, kind="perturbed", seed=11)
    assert np.array_equal(mesh.vertices, perturbed_quad_mesh(5, 0.2, seed=11).vertices)
