from typing import Optional

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict


class ElementMatrices(BaseModel):
    """Dense element blocks in local mode order.

    A: curl-curl stiffness, B: (u_i, grad p_j), M: vector mass,
    S: scalar stiffness (grad p_i, grad p_j).
    """

    A: np.ndarray
    B: np.ndarray
    M: np.ndarray
    S: np.ndarray
    f_load: Optional[np.ndarray] = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class SaddleSystem(BaseModel):
    """Free-DOF blocks of [A B; B^T 0] and the vector mass matrix."""

    A: sp.csr_matrix
    B: sp.csr_matrix
    M: sp.csr_matrix
    f: np.ndarray
    n_u: int
    n_p: int

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def block(self) -> sp.csc_matrix:
        return sp.bmat([[self.A, self.B], [self.B.T, None]], format="csc")

    def mass_block(self) -> sp.csc_matrix:
        zero = sp.csr_matrix((self.n_p, self.n_p))
        return sp.bmat([[self.M, None], [None, zero]], format="csc")

    def rhs(self) -> np.ndarray:
        return np.concatenate([self.f, np.zeros(self.n_p)])
