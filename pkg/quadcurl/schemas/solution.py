from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class SourceSolution(BaseModel):
    u_coeffs: np.ndarray
    p_coeffs: np.ndarray
    residual_norm: float = Field(description="Relative residual of the block system")
    constraint_norm: float = Field(description="|B^T u| relative to |B| |u|")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class EigenSolution(BaseModel):
    """Eigenpairs in ascending order; eigenvectors are M-orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    clusters: list[int]
    shift: float
    iterations: int

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ErrorReport(BaseModel):
    h: float
    dofs: int
    l2: float = Field(ge=0.0)
    hcurl_semi: float = Field(ge=0.0)
    hcurl2_semi: float = Field(ge=0.0)
    order_l2: Optional[float] = None
    order_hcurl: Optional[float] = None
    order_hcurl2: Optional[float] = None


class EigenRow(BaseModel):
    h: float
    index: int
    value: float
    cluster_id: int
