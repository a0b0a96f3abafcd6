from typing import Optional


class QuadCurlError(Exception):
    """Base exception for solver package errors."""

    pass


class GeometryError(QuadCurlError):
    """Raised when an element's geometry is unusable."""

    pass


class NonConvexElementError(GeometryError):
    """Raised when a quadrilateral is not strictly convex and counterclockwise."""

    def __init__(self, message: str, corner: Optional[int] = None):
        self.corner = corner
        super().__init__(message)


class BasisError(QuadCurlError):
    """Raised for invalid basis requests."""

    pass


class InvalidOrderError(BasisError):
    """Raised when (L, M, N) is not an admissible spectral order."""

    pass


class ModeIndexError(BasisError):
    """Raised when a mode's indices fall outside its family range."""

    pass


class MeshError(QuadCurlError):
    """Raised when a mesh cannot be built or read."""

    pass


class NonConformingMeshError(MeshError):
    """Raised when elements meet along partial edges or an edge has three owners."""

    pass


class AssemblyError(QuadCurlError):
    """Raised when a DOF map does not match the mesh or order being assembled."""

    pass


class SolverError(QuadCurlError):
    """Base exception for linear and eigen solver failures."""

    pass


class SingularSystemError(SolverError):
    """Raised when the block system factorization is singular."""

    pass


class ShiftCollisionError(SolverError):
    """Raised when the shifted pencil cannot be factorized."""

    def __init__(self, shift: float, message: str):
        self.shift = shift
        super().__init__(f"shift {shift:g}: {message}")


class NonConvergenceError(SolverError):
    """Raised when subspace iteration exhausts its iteration budget."""

    def __init__(self, iterations: int, residual: float, shift: float):
        self.iterations = iterations
        self.residual = residual
        self.shift = shift
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(residual {residual:.3e}, shift {shift:g})"
        )


class ResultFileError(QuadCurlError):
    """Raised when a results CSV cannot be written or parsed."""

    pass
