from typing import Optional

from quadcurl.config import settings
from quadcurl.schemas.mesh import Mesh
from quadcurl.services.base import MeshError
from quadcurl.services.meshing import perturbed_quad_mesh, structured_square_mesh


class SquarePlugin:
    """Unit square (0,1)^2, uniform or perturbed."""

    name: str = "square"
    mesh_kinds: tuple[str, ...] = ("uniform", "perturbed")

    def build(self, n: int, kind: str = "uniform", seed: Optional[int] = None) -> Mesh:
        if kind not in self.mesh_kinds:
            raise MeshError(f"square has no mesh kind '{kind}', expected one of {self.mesh_kinds}")
        if kind == "perturbed":
            seed = settings.mesh.seed if seed is None else seed
            return perturbed_quad_mesh(n, settings.mesh.perturbation, seed)
        return structured_square_mesh(n)

    def default_shift(self) -> float:
        return settings.shift_for(self.name)
