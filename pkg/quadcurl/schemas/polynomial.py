import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class PolynomialValue(BaseModel):
    value: float = Field(description="Polynomial value at zeta")
    derivative: float = Field(description="d/dzeta at zeta")

    model_config = ConfigDict(frozen=True)


class QuadratureRule(BaseModel):
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int = Field(ge=1, description="Number of nodes")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_shapes(self) -> "QuadratureRule":
        if self.nodes.shape != (self.order,) or self.weights.shape != (self.order,):
            raise ValueError("nodes and weights must both have `order` entries")
        return self


class TensorRule(BaseModel):
    """Product rule on the reference square, points flattened x-major."""

    x: np.ndarray
    y: np.ndarray
    weights: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])
