"""Naive list-scan knowledge base used as a behavioral oracle.

Deliberately implemented nothing like the package's stores: entities
live in plain lists, every lookup is a linear scan, and save/delete
semantics are written out longhand from the storage contract. Tests
run the same operation sequences against this model and the real
backends and require identical observable behavior.
"""

from __future__ import annotations

from kantkb.errors import ConflictingDefinition, DependentsExist
from kantkb.model import (
    EntityKind,
    PddlAction,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    entity_key,
    kind_of,
)


class ReferenceKb:
    def __init__(self):
        self.entries: list = []  # every entity of every kind, in one list

    # -- scans -------------------------------------------------------------

    def _of_kind(self, kind: EntityKind) -> list:
        return [e for e in self.entries if kind_of(e) is kind]

    def _find(self, kind: EntityKind, key: str):
        for entity in self.entries:
            if kind_of(entity) is kind and entity_key(entity) == key:
                return entity
        return None

    def _remove(self, kind: EntityKind, key: str) -> None:
        self.entries = [
            e
            for e in self.entries
            if not (kind_of(e) is kind and entity_key(e) == key)
        ]

    # -- contract ------------------------------------------------------------

    def get(self, kind: EntityKind, name: str):
        if kind is EntityKind.PROPOSITION:
            raise ValueError("propositions are retrieved via the proposition getters")
        return self._find(kind, name.lower())

    def get_all(self, kind: EntityKind) -> list:
        return self._of_kind(kind)

    def get_by_predicate(self, predicate_name: str) -> list:
        wanted = predicate_name.lower()
        return [
            p
            for p in self._of_kind(EntityKind.PROPOSITION)
            if p.predicate.name == wanted
        ]

    def get_goals(self) -> list:
        return [p for p in self._of_kind(EntityKind.PROPOSITION) if p.is_goal]

    def get_no_goals(self) -> list:
        return [p for p in self._of_kind(EntityKind.PROPOSITION) if not p.is_goal]

    def reset(self) -> bool:
        self.entries = []
        return True

    def close(self) -> None:
        pass

    def save(self, entity) -> bool:
        # Phase 1: gather the dependency closure and check every piece
        # against stored state and against the other pieces.
        deps = self._dependency_closure(entity)
        for dep in deps:
            stored = self._find(kind_of(dep), entity_key(dep))
            if stored is not None and stored != dep:
                raise ConflictingDefinition(
                    f"dependency {entity_key(dep)!r} exists with a different structure"
                )
            for other in deps:
                if (
                    other is not dep
                    and kind_of(other) is kind_of(dep)
                    and entity_key(other) == entity_key(dep)
                    and other != dep
                ):
                    raise ConflictingDefinition(
                        f"save references {entity_key(dep)!r} with two structures"
                    )
        kind = kind_of(entity)
        stored = self._find(kind, entity_key(entity))
        if stored is not None and stored != entity:
            restructured = self._strip_goal(stored) != self._strip_goal(entity)
            if restructured and self._has_dependents(kind, entity_key(entity)):
                raise ConflictingDefinition(
                    f"{entity_key(entity)!r} is referenced and cannot be restructured"
                )
        # Phase 2: apply.
        for dep in deps:
            if self._find(kind_of(dep), entity_key(dep)) is None:
                self.entries.append(dep)
        if stored is not None:
            self._remove(kind, entity_key(entity))
        self.entries.append(entity)
        return True

    def delete(self, entity) -> bool:
        kind = kind_of(entity)
        key = entity_key(entity)
        if self._find(kind, key) is None:
            return False
        if self._has_dependents(kind, key):
            raise DependentsExist(f"{key!r} is still referenced")
        self._remove(kind, key)
        return True

    # -- helpers ---------------------------------------------------------------

    @staticmethod
    def _strip_goal(entity):
        if isinstance(entity, PddlProposition) and entity.is_goal:
            return PddlProposition(entity.predicate, entity.objects, is_goal=False)
        return entity

    @staticmethod
    def _dependency_closure(entity) -> list:
        deps: list = []
        if isinstance(entity, PddlObject):
            deps.append(entity.type)
        elif isinstance(entity, PddlPredicate):
            deps.extend(entity.parameter_types)
        elif isinstance(entity, PddlProposition):
            deps.append(entity.predicate)
            deps.extend(entity.predicate.parameter_types)
            for obj in entity.objects:
                deps.append(obj)
                deps.append(obj.type)
        elif isinstance(entity, PddlAction):
            for param in entity.parameters:
                deps.append(param.type)
            for literal in entity.conditions + entity.effects:
                deps.append(literal.predicate)
                deps.extend(literal.predicate.parameter_types)
        return deps

    def _has_dependents(self, kind: EntityKind, key: str) -> bool:
        propositions = self._of_kind(EntityKind.PROPOSITION)
        actions = self._of_kind(EntityKind.ACTION)
        if kind is EntityKind.TYPE:
            for obj in self._of_kind(EntityKind.OBJECT):
                if obj.type.name == key:
                    return True
            for pred in self._of_kind(EntityKind.PREDICATE):
                if any(t.name == key for t in pred.parameter_types):
                    return True
            for action in actions:
                if any(p.type.name == key for p in action.parameters):
                    return True
            return False
        if kind is EntityKind.OBJECT:
            for prop in propositions:
                if any(o.name == key for o in prop.objects):
                    return True
            return False
        if kind is EntityKind.PREDICATE:
            for prop in propositions:
                if prop.predicate.name == key:
                    return True
            for action in actions:
                if any(
                    lit.predicate.name == key
                    for lit in action.conditions + action.effects
                ):
                    return True
            return False
        return False
