from typing import Dict, List, Optional, Protocol, runtime_checkable

from quadcurl.schemas.mesh import Mesh
from quadcurl.services.base import MeshError


@runtime_checkable
class DomainPlugin(Protocol):
    """Protocol for named computational domains."""

    name: str
    mesh_kinds: tuple[str, ...]

    def build(self, n: int, kind: str = "uniform", seed: Optional[int] = None) -> Mesh:
        """Mesh with n cells per unit length."""
        ...

    def default_shift(self) -> float:
        """Eigen shift below the first eigenvalue of the domain."""
        ...


class DomainRegistry:
    """Registry for domain plugins."""

    def __init__(self):
        self._plugins: Dict[str, DomainPlugin] = {}

    def register(self, plugin: DomainPlugin) -> None:
        if not isinstance(plugin, DomainPlugin):
            raise TypeError(f"Plugin {plugin} does not implement DomainPlugin protocol")

        if plugin.name in self._plugins:
            raise ValueError(f"Domain '{plugin.name}' is already registered")

        self._plugins[plugin.name] = plugin

    def get(self, name: str) -> DomainPlugin:
        plugin = self._plugins.get(name)
        if plugin is None:
            raise MeshError(f"unknown domain '{name}', expected one of {self.names()}")
        return plugin

    def names(self) -> List[str]:
        return list(self._plugins.keys())

    def is_valid_domain(self, name: str) -> bool:
        return name in self._plugins

    def mesh_kinds(self) -> List[str]:
        """Every mesh kind offered by some registered domain."""
        kinds = {kind for plugin in self._plugins.values() for kind in plugin.mesh_kinds}
        return sorted(kinds, key=lambda kind: (kind != "uniform", kind))


domain_registry = DomainRegistry()
