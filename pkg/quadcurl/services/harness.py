"""Error norms and convergence / eigenvalue study drivers."""

import math
from typing import Optional, Sequence

import numpy as np

from quadcurl.config import settings
from quadcurl.domains import get_domain
from quadcurl.logger import get_logger
from quadcurl.schemas.basis import SpectralOrder
from quadcurl.schemas.mesh import DofMap, Mesh
from quadcurl.schemas.solution import EigenRow, ErrorReport
from quadcurl.services.assembly import (
    ElementIntegrator,
    assemble,
    expand_free,
    local_coefficients,
)
from quadcurl.services.base import MeshError
from quadcurl.services.exact import ExactSolution, manufactured_solution
from quadcurl.services.meshing import build_dof_map, mesh_size, refine
from quadcurl.services.solvers import solve_eigen_with_retry, solve_saddle

logger = get_logger("harness")

EIGEN_BASE_CELLS = {"square": 5, "lshape": 4}


def error_norms(
    mesh: Mesh,
    dofmap: DofMap,
    order: SpectralOrder,
    u_coeffs: np.ndarray,
    exact: ExactSolution,
    q: Optional[int] = None,
    h: Optional[float] = None,
) -> ErrorReport:
    """L2 norms of u_h - u, of their curls and of their curl-curls."""
    q = q or order.N + settings.quadrature.error_extra
    integrator = ElementIntegrator(order, q, dofmap.low_modes)
    full = expand_free(dofmap, np.asarray(u_coeffs, dtype=float))

    l2 = hcurl = hcurl2 = 0.0
    for e, quad in enumerate(mesh.quads):
        pm = integrator.physical(quad)
        c = local_coefficients(dofmap, full, e)
        du = np.einsum("m,mqk->qk", c, pm.value) - exact.u(pm.points)
        dc = c @ pm.curl - exact.curl_u(pm.points)
        dcc = np.einsum("m,mqk->qk", c, pm.curl_curl) - exact.curlcurl_u(pm.points)
        l2 += float(np.sum(pm.weights * np.sum(du**2, axis=-1)))
        hcurl += float(np.sum(pm.weights * dc**2))
        hcurl2 += float(np.sum(pm.weights * np.sum(dcc**2, axis=-1)))

    return ErrorReport(
        h=mesh_size(mesh) if h is None else h,
        dofs=dofmap.n_u,
        l2=math.sqrt(l2),
        hcurl_semi=math.sqrt(hcurl),
        hcurl2_semi=math.sqrt(hcurl2),
    )


def _rate(previous: float, current: float, ratio: float) -> Optional[float]:
    if previous <= 0.0 or current <= 0.0:
        return None
    return math.log(previous / current) / math.log(ratio)


def _with_orders(reports: list[ErrorReport]) -> list[ErrorReport]:
    out = reports[:1]
    for prev, cur in zip(reports, reports[1:]):
        ratio = prev.h / cur.h
        out.append(
            cur.model_copy(
                update={
                    "order_l2": _rate(prev.l2, cur.l2, ratio),
                    "order_hcurl": _rate(prev.hcurl_semi, cur.hcurl_semi, ratio),
                    "order_hcurl2": _rate(prev.hcurl2_semi, cur.hcurl2_semi, ratio),
                }
            )
        )
    return out


def _source_level(
    mesh: Mesh,
    order: SpectralOrder,
    exact: ExactSolution,
    h: float,
    low_modes: Optional[str] = None,
) -> ErrorReport:
    dofmap = build_dof_map(mesh, order, low_modes=low_modes)
    system = assemble(mesh, dofmap, order, f=exact.f)
    solution = solve_saddle(system)
    report = error_norms(mesh, dofmap, order, solution.u_coeffs, exact, h=h)
    logger.info(
        f"Source level solved at h={h:.5g}, order {order}",
        extra={
            "dofs": report.dofs,
            "l2": report.l2,
            "hcurl": report.hcurl_semi,
            "hcurl2": report.hcurl2_semi,
        },
    )
    return report


def _check_source_domain(domain: str) -> None:
    if domain != "square":
        raise MeshError(f"the manufactured solution lives on the unit square, not '{domain}'")


def convergence_study(
    domain: str,
    mesh_kind: str,
    levels: int,
    order: SpectralOrder,
    seed: Optional[int] = None,
    n0: int = 10,
    exact: Optional[ExactSolution] = None,
    low_modes: Optional[str] = None,
) -> list[ErrorReport]:
    """Solve on n0 x n0 and its regular refinements; h is the base cell size."""
    _check_source_domain(domain)
    if levels < 2:
        raise ValueError(f"a convergence study needs at least 2 levels, got {levels}")
    exact = exact or manufactured_solution()
    mesh = get_domain(domain).build(n0, mesh_kind, seed)

    reports: list[ErrorReport] = []
    for level in range(levels):
        if level:
            mesh = refine(mesh)
        reports.append(_source_level(mesh, order, exact, 1.0 / (n0 * 2**level), low_modes))
    return _with_orders(reports)


def p_convergence_study(
    domain: str,
    mesh_kind: str,
    n: int,
    degrees: Sequence[int],
    seed: Optional[int] = None,
    exact: Optional[ExactSolution] = None,
    low_modes: Optional[str] = None,
) -> list[ErrorReport]:
    """Fixed n x n mesh, orders (N, N, N) for each N in degrees."""
    _check_source_domain(domain)
    exact = exact or manufactured_solution()
    mesh = get_domain(domain).build(n, mesh_kind, seed)
    return [
        _source_level(mesh, SpectralOrder(L=N, M=N, N=N), exact, 1.0 / n, low_modes)
        for N in degrees
    ]


def eigen_study(
    domain: str,
    n: int,
    order: SpectralOrder,
    k: int,
    shift: Optional[float] = None,
    seed: int = 0,
    low_modes: Optional[str] = None,
) -> list[EigenRow]:
    """First k eigenvalues on the uniform n-cell mesh of a domain."""
    plugin = get_domain(domain)
    mesh = plugin.build(n, "uniform")
    dofmap = build_dof_map(mesh, order, low_modes=low_modes)
    system = assemble(mesh, dofmap, order)
    shift = plugin.default_shift() if shift is None else shift
    solution = solve_eigen_with_retry(system, k, shift=shift, seed=seed)
    h = 1.0 / n
    rows = [
        EigenRow(h=h, index=i + 1, value=float(value), cluster_id=cluster)
        for i, (value, cluster) in enumerate(zip(solution.eigenvalues, solution.clusters))
    ]
    logger.info(
        f"{domain} eigenvalues at h=1/{n}, order {order}",
        extra={"eigenvalues": solution.eigenvalues, "shift": solution.shift},
    )
    return rows


def eigen_levels_study(
    domain: str,
    levels: int,
    order: SpectralOrder,
    k: int,
    n0: Optional[int] = None,
    shift: Optional[float] = None,
    low_modes: Optional[str] = None,
) -> list[EigenRow]:
    n0 = n0 or EIGEN_BASE_CELLS.get(domain, 4)
    rows: list[EigenRow] = []
    for level in range(levels):
        rows.extend(eigen_study(domain, n0 * 2**level, order, k, shift=shift, low_modes=low_modes))
    return rows


def observed_order(values: Sequence[float], ratio: float = 2.0) -> float:
    """Convergence order from the last three values of a sequence refined by ratio."""
    if len(values) < 3:
        raise ValueError("need three values to estimate an order")
    v0, v1, v2 = values[-3:]
    d01, d12 = abs(v0 - v1), abs(v1 - v2)
    if d01 == 0.0 or d12 == 0.0:
        raise ValueError("sequence is stationary; order undefined")
    return math.log(d01 / d12) / math.log(ratio)


def richardson_extrapolate(
    values: Sequence[float], ratio: float = 2.0, order: Optional[float] = None
) -> float:
    """Extrapolated limit of the last two values, estimating the order if not given."""
    if len(values) < 2:
        raise ValueError("need two values to extrapolate")
    p = observed_order(values, ratio) if order is None else order
    coarse, fine = values[-2], values[-1]
    return fine + (fine - coarse) / (ratio**p - 1.0)


def estimated_order(
    values: Sequence[float], reference: float, ratio: float = 2.0
) -> list[Optional[float]]:
    """Per-level orders of |value - reference|; the first entry is None."""
    errors = [abs(v - reference) for v in values]
    orders: list[Optional[float]] = [None]
    for prev, cur in zip(errors, errors[1:]):
        orders.append(_rate(prev, cur, ratio))
    return orders
