from quadcurl.domains.plugin_system import DomainPlugin, DomainRegistry, domain_registry
from quadcurl.domains.plugins.lshape import LShapePlugin
from quadcurl.domains.plugins.square import SquarePlugin


def register_plugins(registry: DomainRegistry = domain_registry) -> None:
    """Register the built-in domains once."""
    for plugin in (SquarePlugin(), LShapePlugin()):
        if not registry.is_valid_domain(plugin.name):
            registry.register(plugin)


__all__ = [
    "DomainPlugin",
    "DomainRegistry",
    "domain_registry",
    "LShapePlugin",
    "SquarePlugin",
    "register_plugins",
]
