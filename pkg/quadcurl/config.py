from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseModel):
    shift_square: float = Field(
        default=500.0, description="Eigen shift for the unit square (below lambda_1)"
    )
    shift_lshape: float = Field(
        default=300.0, description="Eigen shift for the L-shaped domain"
    )
    block_extra: int = Field(
        default=5, description="Subspace block size beyond the requested count"
    )
    max_iterations: int = Field(default=200, description="Subspace iteration cap")
    ritz_tol: float = Field(
        default=1e-9, description="Relative change of the Ritz values that ends iteration"
    )
    residual_tol: float = Field(
        default=1e-7,
        description="Bound on |Av + Bw - lambda Mv| / (lambda |Mv|) for every returned pair",
    )
    spurious_ceiling: float = Field(
        default=1e12, description="Ritz values above this magnitude are discarded"
    )
    spurious_residual: float = Field(
        default=1e-5, description="Backward error above which a Ritz pair is discarded"
    )
    cluster_tol: float = Field(
        default=1e-6, description="Relative gap that joins eigenvalues into a cluster"
    )
    shift_retries: int = Field(
        default=3, description="Attempts with a perturbed shift before giving up"
    )
    shift_jitter: float = Field(
        default=0.013, description="Relative shift perturbation applied per retry"
    )


class QuadratureSettings(BaseModel):
    assembly_extra: int = Field(
        default=6, description="Assembly uses N + assembly_extra points per direction"
    )
    error_extra: int = Field(
        default=8, description="Error norms use N + error_extra points per direction"
    )


class MeshSettings(BaseModel):
    perturbation: float = Field(
        default=0.2, description="Default relative vertex displacement"
    )
    seed: int = Field(default=42, description="Default perturbation seed")
    convexity_tol: float = Field(
        default=1e-12, description="Relative cross-product floor for convexity"
    )


class BasisSettings(BaseModel):
    low_modes: Literal["phi", "tilde"] = Field(
        default="phi",
        description="Low-order function-edge family used by orders (1,1,1)/(2,2,2)",
    )


class Settings(BaseSettings):
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="INFO")
    LOG_FORMAT: Literal["json", "text", "colored"] = Field(default="colored")
    LOG_FILE: str | None = Field(default=None)

    solver: SolverSettings = Field(default_factory=SolverSettings)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    mesh: MeshSettings = Field(default_factory=MeshSettings)
    basis: BasisSettings = Field(default_factory=BasisSettings)

    model_config = SettingsConfigDict(
        env_prefix="QUADCURL_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )

    def shift_for(self, domain: str) -> float:
        """Default eigen shift for a named domain."""
        if domain == "lshape":
            return self.solver.shift_lshape
        return self.solver.shift_square


settings = Settings()
