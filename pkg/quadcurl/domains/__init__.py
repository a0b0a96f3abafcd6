from quadcurl.domains.plugin_system import DomainPlugin, DomainRegistry, domain_registry
from quadcurl.domains.plugins import register_plugins

register_plugins()


def get_domain(name: str) -> DomainPlugin:
    return domain_registry.get(name)


__all__ = ["DomainPlugin", "DomainRegistry", "domain_registry", "get_domain"]
