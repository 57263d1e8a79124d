from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FrontendConfig:
    """Annotation vocabularies and client patterns (Spring + JAX-RS defaults)."""

    controller_markers: tuple[str, ...] = ("RestController", "Controller", "Path")
    endpoint_annotations: tuple[str, ...] = (
        "GetMapping",
        "PostMapping",
        "PutMapping",
        "DeleteMapping",
        "PatchMapping",
        "RequestMapping",
        "GET",
        "POST",
        "PUT",
        "DELETE",
        "PATCH",
        "HEAD",
        "OPTIONS",
    )
    client_methods: tuple[str, ...] = (
        "getForObject",
        "getForEntity",
        "postForObject",
        "postForEntity",
        "put",
        "delete",
        "exchange",
    )
    persistence_annotations: tuple[str, ...] = ("Entity", "Document", "Table")
    data_annotations: tuple[str, ...] = ("Data", "Value", "Getter")
    dto_suffixes: tuple[str, ...] = ("Dto", "DTO", "VO", "Request", "Response")
    source_extensions: tuple[str, ...] = (".java",)
    # not a config-file key: directories never scanned for sources
    exclude_globs: tuple[str, ...] = (".*", "target", "build", "node_modules")

    # classes carrying these are never data entities
    non_entity_markers: tuple[str, ...] = (
        "RestController",
        "Controller",
        "Path",
        "Service",
        "Repository",
        "Component",
        "Configuration",
        "SpringBootApplication",
        "FeignClient",
    )
