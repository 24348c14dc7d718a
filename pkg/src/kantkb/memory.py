"""Volatile in-process backend: five name-keyed hash tables behind a lock.

This module is also the semantic core of the toolkit. The persistent
store composes a :class:`MemoryStore` as its in-process index and reuses
the ``*_with_changes`` entry points, which report which tables an
operation touched.

Saves run in two phases: first the whole cascade is planned and checked
against the stored tables (conflicts surface before anything mutates),
then the plan is applied. An operation that raises leaves the store
untouched.
"""

from __future__ import annotations

import threading

from .backend import StorageBackend
from .errors import ConflictingDefinition, DependentsExist
from .model import (
    Entity,
    EntityKind,
    PddlAction,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    entity_key,
    kind_of,
)

_Plan = dict[EntityKind, dict[str, Entity]]


class MemoryStore(StorageBackend):
    """Hash-indexed knowledge base with no persistence."""

    def __init__(self):
        self._lock = threading.RLock()
        self._tables: dict[EntityKind, dict[str, Entity]] = {
            kind: {} for kind in EntityKind
        }

    # -- contract operations --------------------------------------------

    def get(self, kind: EntityKind, name: str) -> Entity | None:
        if kind is EntityKind.PROPOSITION:
            raise ValueError(
                "propositions are retrieved via get_by_predicate/get_goals/get_no_goals"
            )
        with self._lock:
            return self._tables[kind].get(name.lower())

    def get_all(self, kind: EntityKind) -> list[Entity]:
        with self._lock:
            return list(self._tables[kind].values())

    def save(self, entity: Entity) -> bool:
        self._save_with_changes(entity)
        return True

    def delete(self, entity: Entity) -> bool:
        removed, _ = self._delete_with_changes(entity)
        return removed

    def get_by_predicate(self, predicate_name: str) -> list[PddlProposition]:
        wanted = predicate_name.lower()
        with self._lock:
            return [
                p
                for p in self._tables[EntityKind.PROPOSITION].values()
                if p.predicate.name == wanted
            ]

    def get_goals(self) -> list[PddlProposition]:
        with self._lock:
            return [
                p for p in self._tables[EntityKind.PROPOSITION].values() if p.is_goal
            ]

    def get_no_goals(self) -> list[PddlProposition]:
        with self._lock:
            return [
                p
                for p in self._tables[EntityKind.PROPOSITION].values()
                if not p.is_goal
            ]

    def reset(self) -> bool:
        self._reset_with_changes()
        return True

    # -- change-reporting entry points (used by the persistent store) ---

    def _save_with_changes(self, entity: Entity) -> set[EntityKind]:
        with self._lock:
            plan: _Plan = {kind: {} for kind in EntityKind}
            self._plan_direct(entity, plan)
            changed: set[EntityKind] = set()
            for kind, entries in plan.items():
                table = self._tables[kind]
                for key, value in entries.items():
                    if table.get(key) != value:
                        table[key] = value
                        changed.add(kind)
            return changed

    def _delete_with_changes(self, entity: Entity) -> tuple[bool, set[EntityKind]]:
        kind = kind_of(entity)
        key = entity_key(entity)
        with self._lock:
            if key not in self._tables[kind]:
                return False, set()
            self._check_no_dependents(kind, key)
            del self._tables[kind][key]
            return True, {kind}

    def _reset_with_changes(self) -> set[EntityKind]:
        with self._lock:
            changed = {kind for kind, table in self._tables.items() if table}
            for table in self._tables.values():
                table.clear()
            return changed

    def _replace_tables(self, tables: dict[EntityKind, dict[str, Entity]]) -> None:
        with self._lock:
            self._tables = {kind: dict(tables[kind]) for kind in EntityKind}

    def _copy_tables(self) -> dict[EntityKind, dict[str, Entity]]:
        with self._lock:
            return {kind: dict(table) for kind, table in self._tables.items()}

    # -- save planning ---------------------------------------------------

    def _plan_direct(self, entity: Entity, plan: _Plan) -> None:
        """Plan a top-level save: upsert the entity, strict-check its deps."""
        if isinstance(entity, PddlType):
            plan[EntityKind.TYPE][entity.name] = entity
        elif isinstance(entity, PddlObject):
            self._plan_type(entity.type, plan)
            self._check_replaceable(EntityKind.OBJECT, entity)
            plan[EntityKind.OBJECT][entity.name] = entity
        elif isinstance(entity, PddlPredicate):
            for t in entity.parameter_types:
                self._plan_type(t, plan)
            self._check_replaceable(EntityKind.PREDICATE, entity)
            plan[EntityKind.PREDICATE][entity.name] = entity
        elif isinstance(entity, PddlProposition):
            self._plan_predicate(entity.predicate, plan)
            for obj in entity.objects:
                self._plan_object(obj, plan)
            plan[EntityKind.PROPOSITION][entity_key(entity)] = entity
        elif isinstance(entity, PddlAction):
            for param in entity.parameters:
                self._plan_type(param.type, plan)
            for literal in entity.conditions + entity.effects:
                self._plan_predicate(literal.predicate, plan)
            plan[EntityKind.ACTION][entity.name] = entity
        else:
            raise TypeError(f"not a storable entity: {entity!r}")

    def _check_replaceable(self, kind: EntityKind, entity: Entity) -> None:
        """Direct upserts may restructure an entity only while nothing depends on it."""
        stored = self._tables[kind].get(entity.name)
        if stored is None or stored == entity:
            return
        if self._has_dependents(kind, entity.name):
            raise ConflictingDefinition(
                f"{kind.value} {entity.name!r} is referenced by stored knowledge "
                f"and cannot be redefined with a different structure"
            )

    def _plan_type(self, t: PddlType, plan: _Plan) -> None:
        plan[EntityKind.TYPE][t.name] = t

    def _plan_object(self, obj: PddlObject, plan: _Plan) -> None:
        self._plan_type(obj.type, plan)
        self._require_consistent(EntityKind.OBJECT, obj.name, obj, plan)
        plan[EntityKind.OBJECT][obj.name] = obj

    def _plan_predicate(self, pred: PddlPredicate, plan: _Plan) -> None:
        for t in pred.parameter_types:
            self._plan_type(t, plan)
        self._require_consistent(EntityKind.PREDICATE, pred.name, pred, plan)
        plan[EntityKind.PREDICATE][pred.name] = pred

    def _require_consistent(
        self, kind: EntityKind, key: str, entity: Entity, plan: _Plan
    ) -> None:
        """A dependency may be inserted, never restructured."""
        for source, origin in ((self._tables[kind], "stored"), (plan[kind], "saved")):
            existing = source.get(key)
            if existing is not None and existing != entity:
                raise ConflictingDefinition(
                    f"{kind.value} {key!r} already {origin} with a different structure"
                )

    # -- dependency scans --------------------------------------------------

    def _has_dependents(self, kind: EntityKind, name: str) -> bool:
        propositions = self._tables[EntityKind.PROPOSITION].values()
        if kind is EntityKind.TYPE:
            return (
                any(
                    o.type.name == name
                    for o in self._tables[EntityKind.OBJECT].values()
                )
                or any(
                    name in (t.name for t in p.parameter_types)
                    for p in self._tables[EntityKind.PREDICATE].values()
                )
                or any(
                    name in (param.type.name for param in a.parameters)
                    for a in self._tables[EntityKind.ACTION].values()
                )
            )
        if kind is EntityKind.OBJECT:
            return any(
                name in (o.name for o in p.objects) for p in propositions
            )
        if kind is EntityKind.PREDICATE:
            return any(p.predicate.name == name for p in propositions) or any(
                name
                in (lit.predicate.name for lit in a.conditions + a.effects)
                for a in self._tables[EntityKind.ACTION].values()
            )
        return False

    def _check_no_dependents(self, kind: EntityKind, key: str) -> None:
        if self._has_dependents(kind, key):
            raise DependentsExist(
                f"{kind.value} {key!r} is still referenced by stored knowledge"
            )
