from typing import Optional

from quadcurl.config import settings
from quadcurl.schemas.mesh import Mesh
from quadcurl.services.base import MeshError
from quadcurl.services.meshing import lshape_mesh


class LShapePlugin:
    """(0,1)^2 without [0.5,1)^2; uniform meshes only."""

    name: str = "lshape"
    mesh_kinds: tuple[str, ...] = ("uniform",)

    def build(self, n: int, kind: str = "uniform", seed: Optional[int] = None) -> Mesh:
        if kind not in self.mesh_kinds:
            raise MeshError(f"lshape has no mesh kind '{kind}', expected one of {self.mesh_kinds}")
        return lshape_mesh(n)

    def default_shift(self) -> float:
        return settings.shift_for(self.name)
