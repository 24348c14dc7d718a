"""Storage backend contract shared by all DAO families.

A backend owns one knowledge base: five per-kind entity tables plus the
operation semantics (cascading save, dependency-checked delete, the
proposition getters). Every public operation is atomic with respect to
other operations on the same backend, so a backend can be shared across
threads.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from .model import Entity, EntityKind, PddlProposition


class StorageBackend(ABC):
    """Operations every storage backend provides.

    Semantics all implementations must share:

    * ``save`` is an upsert keyed on the canonical name (propositions:
      predicate name + ordered object names). Dependencies are saved
      transitively; a dependency that already exists with a different
      structure raises ``ConflictingDefinition``.
    * ``delete`` is a no-op (returns False) when the entity is absent and
      raises ``DependentsExist`` while other stored knowledge still
      references it.
    * ``get`` returns None for absent names; absence is never an error.
    """

    @abstractmethod
    def get(self, kind: EntityKind, name: str) -> Entity | None:
        """Look up one type/object/predicate/action by canonical name."""

    @abstractmethod
    def get_all(self, kind: EntityKind) -> list[Entity]:
        """All stored entities of one kind, order unspecified."""

    @abstractmethod
    def save(self, entity: Entity) -> bool:
        """Upsert ``entity`` and its dependencies; returns True on success."""

    @abstractmethod
    def delete(self, entity: Entity) -> bool:
        """Remove the entity matching ``entity``'s key; False when absent."""

    @abstractmethod
    def get_by_predicate(self, predicate_name: str) -> list[PddlProposition]:
        """All propositions (goals included) over the named predicate."""

    @abstractmethod
    def get_goals(self) -> list[PddlProposition]:
        """Exactly the propositions flagged as goals."""

    @abstractmethod
    def get_no_goals(self) -> list[PddlProposition]:
        """Exactly the propositions not flagged as goals."""

    @abstractmethod
    def reset(self) -> bool:
        """Drop all knowledge of every kind; True on success."""

    def close(self) -> None:
        """Release backend resources; further use is undefined."""
