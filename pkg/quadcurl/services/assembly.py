"""Element integration and global assembly of the mixed quad-curl system."""

from typing import Callable, NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from quadcurl.config import settings
from quadcurl.logger import get_logger
from quadcurl.schemas.assembly import ElementMatrices, SaddleSystem
from quadcurl.schemas.basis import Mode, ModeFamily, SpectralOrder
from quadcurl.schemas.geometry import JacobianData, Quadrilateral
from quadcurl.schemas.mesh import DofMap, Mesh
from quadcurl.services.base import AssemblyError, BasisError
from quadcurl.services.geometry import BilinearMap, curl_curl_from_jacobian, map_to_physical
from quadcurl.services.orthopoly import tensor_rule
from quadcurl.services.refbasis import ReferenceTabulation, enumerate_modes, low_order_identity

logger = get_logger("assembly")

VectorField = Callable[[np.ndarray], np.ndarray]


def default_quadrature(order: SpectralOrder) -> int:
    return order.N + settings.quadrature.assembly_extra


class PhysicalModes(NamedTuple):
    """Push-forward of every mode to one element at the quadrature points."""

    data: JacobianData
    weights: np.ndarray
    points: np.ndarray
    value: np.ndarray
    curl: np.ndarray
    curl_curl: np.ndarray
    scalar_value: np.ndarray
    scalar_grad: np.ndarray


class ElementIntegrator:
    """Tensor Gauss-Legendre integration of the mode products on elements."""

    def __init__(self, order: SpectralOrder, q: Optional[int] = None, low_modes: Optional[str] = None):
        self.order = order
        self.q = q or default_quadrature(order)
        if self.q < 1:
            raise AssemblyError(f"quadrature needs q >= 1, got {self.q}")
        self.rule = tensor_rule(self.q)
        self.tabulation = ReferenceTabulation(order, self.rule.x, self.rule.y, low_modes)
        self.scalar_value, self.scalar_ref_grad = self.tabulation.scalar()

    @property
    def modes(self) -> list[Mode]:
        return self.tabulation.modes

    def physical(self, quad: Quadrilateral) -> PhysicalModes:
        data = BilinearMap(quad).evaluate(self.rule.x, self.rule.y)
        ref = self.tabulation.evaluate(quad)
        value = np.einsum("qij,mqj->mqi", data.B_inv_T, ref.value)
        curl = ref.curl / data.detJ
        curl_curl = curl_curl_from_jacobian(data, ref.curl, ref.curl_grad)
        grad = np.einsum("qij,mqj->mqi", data.B_inv_T, self.scalar_ref_grad)
        points = map_to_physical(quad, np.stack([self.rule.x, self.rule.y], axis=-1))
        return PhysicalModes(
            data=data,
            weights=self.rule.weights * data.detJ,
            points=points,
            value=value,
            curl=curl,
            curl_curl=curl_curl,
            scalar_value=self.scalar_value,
            scalar_grad=grad,
        )

    def matrices(self, quad: Quadrilateral, f: Optional[VectorField] = None) -> ElementMatrices:
        pm = self.physical(quad)
        w = pm.weights
        A = np.einsum("iqk,jqk,q->ij", pm.curl_curl, pm.curl_curl, w)
        M = np.einsum("iqk,jqk,q->ij", pm.value, pm.value, w)
        B = np.einsum("iqk,jqk,q->ij", pm.value, pm.scalar_grad, w)
        S = np.einsum("iqk,jqk,q->ij", pm.scalar_grad, pm.scalar_grad, w)
        load = None if f is None else self._load(pm, f)
        return ElementMatrices(A=A, B=B, M=M, S=S, f_load=load)

    def load(self, quad: Quadrilateral, f: VectorField) -> np.ndarray:
        return self._load(self.physical(quad), f)

    @staticmethod
    def _load(pm: PhysicalModes, f: VectorField) -> np.ndarray:
        values = np.asarray(f(pm.points), dtype=float).reshape(-1, 2)
        return np.einsum("iqk,qk,q->i", pm.value, values, pm.weights)


def element_matrices(
    quad: Quadrilateral,
    order: SpectralOrder,
    q: Optional[int] = None,
    low_modes: Optional[str] = None,
) -> ElementMatrices:
    return ElementIntegrator(order, q, low_modes).matrices(quad)


def element_load(
    quad: Quadrilateral,
    order: SpectralOrder,
    f: VectorField,
    q: Optional[int] = None,
    low_modes: Optional[str] = None,
) -> np.ndarray:
    return ElementIntegrator(order, q, low_modes).load(quad, f)


def _check_dofmap(mesh: Mesh, dofmap: DofMap, order: SpectralOrder, n_modes: int) -> None:
    if dofmap.order != order:
        raise AssemblyError(f"dof map built for order {dofmap.order}, assembling {order}")
    if dofmap.u_index.shape != (mesh.n_elements, n_modes):
        raise AssemblyError(
            f"dof map has shape {dofmap.u_index.shape}, expected "
            f"({mesh.n_elements}, {n_modes})"
        )


def _symmetric(matrix: sp.spmatrix) -> sp.csr_matrix:
    return sp.csr_matrix(0.5 * (matrix + matrix.T))


def assemble(
    mesh: Mesh,
    dofmap: DofMap,
    order: SpectralOrder,
    f: Optional[VectorField] = None,
    q: Optional[int] = None,
) -> SaddleSystem:
    """Scatter signed element blocks and eliminate the masked DOFs."""
    integrator = ElementIntegrator(order, q, dofmap.low_modes)
    _check_dofmap(mesh, dofmap, order, len(integrator.modes))
    nu, npp = dofmap.n_u_total, dofmap.n_p_total

    rows_uu, cols_uu, a_vals, m_vals = [], [], [], []
    rows_up, cols_up, b_vals = [], [], []
    load = np.zeros(nu)
    for e, quad in enumerate(mesh.quads):
        em = integrator.matrices(quad, f)
        su, sp_ = dofmap.u_sign[e], dofmap.p_sign[e]
        iu, ip = dofmap.u_index[e], dofmap.p_index[e]
        uu = np.outer(su, su)
        rows_uu.append(np.repeat(iu, len(iu)))
        cols_uu.append(np.tile(iu, len(iu)))
        a_vals.append((em.A * uu).ravel())
        m_vals.append((em.M * uu).ravel())
        rows_up.append(np.repeat(iu, len(ip)))
        cols_up.append(np.tile(ip, len(iu)))
        b_vals.append((em.B * np.outer(su, sp_)).ravel())
        if em.f_load is not None:
            np.add.at(load, iu, em.f_load * su)

    ru, cu = np.concatenate(rows_uu), np.concatenate(cols_uu)
    A = sp.coo_matrix((np.concatenate(a_vals), (ru, cu)), shape=(nu, nu)).tocsr()
    M = sp.coo_matrix((np.concatenate(m_vals), (ru, cu)), shape=(nu, nu)).tocsr()
    B = sp.coo_matrix(
        (np.concatenate(b_vals), (np.concatenate(rows_up), np.concatenate(cols_up))),
        shape=(nu, npp),
    ).tocsr()

    uf, pf = dofmap.u_free, dofmap.p_free
    system = SaddleSystem(
        A=_symmetric(A[uf][:, uf]),
        B=sp.csr_matrix(B[uf][:, pf]),
        M=_symmetric(M[uf][:, uf]),
        f=load[uf],
        n_u=len(uf),
        n_p=len(pf),
    )
    logger.info(
        f"Assembled {mesh.n_elements} elements at order {order} (q={integrator.q}): "
        f"n_u={system.n_u}, n_p={system.n_p}, nnz={system.A.nnz + system.B.nnz}"
    )
    return system


def expand_free(dofmap: DofMap, coeffs: np.ndarray) -> np.ndarray:
    """Free-DOF vector to the full global numbering (eliminated DOFs are 0)."""
    full = np.zeros(dofmap.n_u_total)
    full[dofmap.u_free] = coeffs
    return full


def local_coefficients(dofmap: DofMap, full: np.ndarray, element: int) -> np.ndarray:
    return full[dofmap.u_index[element]] * dofmap.u_sign[element]


def interpolate_low_order(mesh: Mesh, dofmap: DofMap, field: str) -> np.ndarray:
    """Free-DOF coefficients of the constant field (1,0) or (0,1)."""
    if field not in ("1,0", "0,1"):
        raise BasisError(f"only the constant fields interpolate exactly, got '{field}'")
    modes = enumerate_modes(dofmap.order, dofmap.low_modes)
    position = {mode: i for i, mode in enumerate(modes)}
    bubble = Mode(family=ModeFamily.INTERIOR_PHI, m=3, n=3)
    tilde = dofmap.low_modes == "tilde"

    full = np.zeros(dofmap.n_u_total)
    for e, quad in enumerate(mesh.quads):
        bubble_coef = 0.0
        for mode, coef in low_order_identity(field, quad):
            if tilde:
                mode = mode.model_copy(update={"family": ModeFamily.TILDE_FUNCTION_EDGE_LOW})
                bubble_coef -= coef * (1.0 if mode.edge in (1, 2) else -1.0) / 8.0
            i = position[mode]
            full[dofmap.u_index[e, i]] = coef * dofmap.u_sign[e, i]
        if tilde and abs(bubble_coef) > 0.0:
            if bubble not in position:
                raise BasisError("tilde low modes need p(3,3) (L >= 3) to represent constants")
            i = position[bubble]
            full[dofmap.u_index[e, i]] = bubble_coef * dofmap.u_sign[e, i]
    return full[dofmap.u_free]
