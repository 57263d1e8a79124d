from __future__ import annotations

from ..model import EntityDef, EntityField
from .config import FrontendConfig
from .expr import simple_type


def filter_entities(classes, config: FrontendConfig | None = None, exclude=()) -> list[EntityDef]:
    """Keep the classes that carry data: persistent entities and DTOs.

    Classes marked as controllers, services, repositories and the like are
    dropped even when they also carry data annotations. ``exclude`` holds
    ``(service, name)`` keys of classes already claimed as controllers.
    """
    config = config or FrontendConfig()
    persistence = set(config.persistence_annotations)
    data = set(config.data_annotations)
    blocked = set(config.non_entity_markers)
    excluded = set(exclude)
    out = []
    for cls in classes:
        if cls.kind not in ("class", "record"):
            continue
        names = cls.annotation_names()
        if names & blocked or (cls.service, cls.name) in excluded:
            continue
        if names & persistence:
            kind = "persistent"
        elif names & data or any(cls.name.endswith(s) for s in config.dto_suffixes if s):
            kind = "dto"
        else:
            continue
        out.append(
            EntityDef(
                service=cls.service,
                name=cls.name,
                fields=tuple(EntityField(f.name, simple_type(f.type_name)) for f in cls.fields),
                kind=kind,
                annotations=tuple(a.name for a in cls.annotations),
                source_loc=cls.source_loc,
            )
        )
    return out
