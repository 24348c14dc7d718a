"""Load parsed entities into a DAO family."""

from __future__ import annotations

from typing import Iterable

from ..dao import DaoFamily
from ..model import Entity, EntityKind, kind_of

# Dependency-safe save order; propositions last so their predicates and
# objects are already the stored definitions.
_SAVE_ORDER = (
    EntityKind.TYPE,
    EntityKind.PREDICATE,
    EntityKind.OBJECT,
    EntityKind.ACTION,
    EntityKind.PROPOSITION,
)

_COUNT_KEYS = {
    EntityKind.TYPE: "types",
    EntityKind.OBJECT: "objects",
    EntityKind.PREDICATE: "predicates",
    EntityKind.PROPOSITION: "propositions",
    EntityKind.ACTION: "actions",
}


def load_into_kb(entities: Iterable[Entity], family: DaoFamily) -> dict[str, int]:
    """Save every entity through ``family`` in dependency order.

    Returns how many entities of each kind were saved. Saves are the
    family's normal upserts, so loading the same entities twice is
    idempotent; conflicts (``ConflictingDefinition``) and storage errors
    propagate.
    """
    buckets: dict[EntityKind, list[Entity]] = {kind: [] for kind in EntityKind}
    for entity in entities:
        buckets[kind_of(entity)].append(entity)
    for kind in _SAVE_ORDER:
        for entity in buckets[kind]:
            family.save(entity)
    return {_COUNT_KEYS[kind]: len(buckets[kind]) for kind in EntityKind}
