from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from quadcurl.services.base import InvalidOrderError, ModeIndexError


class ModeFamily(str, Enum):
    INTERIOR_PHI = "interior_phi"
    INTERIOR_PSI = "interior_psi"
    FUNCTION_EDGE = "function_edge"
    FUNCTION_EDGE_LOW = "function_edge_low"
    TILDE_FUNCTION_EDGE_LOW = "tilde_function_edge_low"
    CURL_EDGE = "curl_edge"
    VERTEX = "vertex"
    TILDE_VERTEX = "tilde_vertex"


EDGE_FAMILIES = frozenset(
    {
        ModeFamily.FUNCTION_EDGE,
        ModeFamily.FUNCTION_EDGE_LOW,
        ModeFamily.TILDE_FUNCTION_EDGE_LOW,
        ModeFamily.CURL_EDGE,
    }
)
VERTEX_FAMILIES = frozenset({ModeFamily.VERTEX, ModeFamily.TILDE_VERTEX})


class SpectralOrder(BaseModel):
    """Polynomial orders (L, M, N): interior gradients, function edges, curls."""

    L: int = Field(ge=1)
    M: int = Field(ge=1)
    N: int = Field(ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_admissible(self) -> "SpectralOrder":
        low = self.L == self.M == self.N and self.L in (1, 2)
        if not low and min(self.L, self.M, self.N) < 3:
            raise InvalidOrderError(
                f"order ({self.L},{self.M},{self.N}) needs L, M, N >= 3 "
                "or L = M = N in {1, 2}"
            )
        return self

    @classmethod
    def parse(cls, text: str) -> "SpectralOrder":
        """Accept 'L,M,N' or a single 'N' meaning (N, N, N)."""
        try:
            parts = [int(p) for p in text.split(",")]
        except ValueError as e:
            raise InvalidOrderError(f"cannot parse order '{text}'") from e
        if len(parts) == 1:
            parts = parts * 3
        if len(parts) != 3:
            raise InvalidOrderError(f"order '{text}' must have one or three entries")
        return cls(L=parts[0], M=parts[1], N=parts[2])

    @property
    def is_low(self) -> bool:
        return self.N < 3

    def __str__(self) -> str:
        return f"({self.L},{self.M},{self.N})"


class Mode(BaseModel):
    """A basis function on the reference square.

    `edge` is set for edge families (1..4), `corner` for vertex families.
    (m, n) are the tensor indices of the underlying reference function.
    """

    family: ModeFamily
    m: int = Field(ge=0)
    n: int = Field(ge=0)
    edge: Optional[int] = Field(default=None, ge=1, le=4)
    corner: Optional[int] = Field(default=None, ge=1, le=4)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_entity(self) -> "Mode":
        if self.family in EDGE_FAMILIES and self.edge is None:
            raise ModeIndexError(f"{self.family.value} mode needs an edge")
        if self.family in VERTEX_FAMILIES and self.corner is None:
            raise ModeIndexError(f"{self.family.value} mode needs a corner")
        return self

    @property
    def entity(self) -> str:
        if self.family in EDGE_FAMILIES:
            return "edge"
        if self.family in VERTEX_FAMILIES:
            return "vertex"
        return "interior"

    @property
    def trace_index(self) -> int:
        """1D index of the edge trace: 1 for the low function modes."""
        if self.family in (
            ModeFamily.FUNCTION_EDGE_LOW,
            ModeFamily.TILDE_FUNCTION_EDGE_LOW,
        ):
            return 1
        if self.edge in (1, 3):
            return self.n
        return self.m

    @property
    def trace_kind(self) -> str:
        return "curl" if self.family == ModeFamily.CURL_EDGE else "function"

    def label(self) -> str:
        where = f"e{self.edge}" if self.edge else f"P{self.corner}" if self.corner else ""
        return f"{self.family.value}[{self.m},{self.n}]{where}"


class ScalarMode(BaseModel):
    """Tensor mode K11_m(x) K11_n(y) of the multiplier space."""

    m: int = Field(ge=0)
    n: int = Field(ge=0)
    entity: str
    edge: Optional[int] = None
    corner: Optional[int] = None

    model_config = ConfigDict(frozen=True)


class ModeEval(BaseModel):
    """Reference value, curl and curl gradient, point axes in front."""

    value: np.ndarray
    curl: np.ndarray
    curl_grad: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
