from quadcurl.schemas.assembly import ElementMatrices, SaddleSystem
from quadcurl.schemas.basis import Mode, ModeEval, ModeFamily, ScalarMode, SpectralOrder
from quadcurl.schemas.geometry import JacobianData, Quadrilateral
from quadcurl.schemas.mesh import DofMap, Mesh, MeshEdge
from quadcurl.schemas.polynomial import PolynomialValue, QuadratureRule, TensorRule
from quadcurl.schemas.solution import EigenRow, EigenSolution, ErrorReport, SourceSolution

__all__ = [
    "ElementMatrices",
    "SaddleSystem",
    "Mode",
    "ModeEval",
    "ModeFamily",
    "ScalarMode",
    "SpectralOrder",
    "JacobianData",
    "Quadrilateral",
    "DofMap",
    "Mesh",
    "MeshEdge",
    "PolynomialValue",
    "QuadratureRule",
    "TensorRule",
    "EigenRow",
    "EigenSolution",
    "ErrorReport",
    "SourceSolution",
]
