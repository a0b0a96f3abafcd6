from quadcurl.services.base import (
    AssemblyError,
    BasisError,
    GeometryError,
    InvalidOrderError,
    MeshError,
    ModeIndexError,
    NonConformingMeshError,
    NonConvergenceError,
    NonConvexElementError,
    QuadCurlError,
    ResultFileError,
    ShiftCollisionError,
    SingularSystemError,
    SolverError,
)

__all__ = [
    "AssemblyError",
    "BasisError",
    "GeometryError",
    "InvalidOrderError",
    "MeshError",
    "ModeIndexError",
    "NonConformingMeshError",
    "NonConvergenceError",
    "NonConvexElementError",
    "QuadCurlError",
    "ResultFileError",
    "ShiftCollisionError",
    "SingularSystemError",
    "SolverError",
]
