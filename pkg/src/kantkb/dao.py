"""Storage-agnostic data access: DAO family plus the backend factory.

A :class:`DaoFamily` bundles five data-access objects — one per entity
kind — all bound to one backend instance, so a save through any of them
is visible to gets through the others. Code that prefers a single
handle can use the family-level operations directly; the per-kind DAOs
exist for callers that want to pass around a narrower capability.

``create_dao_family`` is the abstract-factory entry point: give it a
:class:`BackendConfig` and it returns a coherent family for that
backend, never a mix.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .backend import StorageBackend
from .model import Entity, EntityKind, PddlProposition, kind_of


class BackendKind(Enum):
    MEMORY = "memory"
    DOCSTORE = "docstore"

    @classmethod
    def from_string(cls, text: str) -> "BackendKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(
                f"unknown backend {text!r}; expected 'memory' or 'docstore'"
            ) from None


@dataclass(frozen=True)
class BackendConfig:
    """Which backend to build and, for the persistent one, where."""

    kind: BackendKind
    location: str | None = None

    def __post_init__(self):
        if self.kind is BackendKind.DOCSTORE and not self.location:
            raise ValueError("docstore backend requires a location")
        if self.kind is BackendKind.MEMORY and self.location is not None:
            raise ValueError("memory backend takes no location")


class EntityDao:
    """Access to one entity kind on a shared backend."""

    def __init__(self, backend: StorageBackend, kind: EntityKind):
        self._backend = backend
        self.kind = kind

    def get(self, name: str):
        return self._backend.get(self.kind, name)

    def get_all(self) -> list[Entity]:
        return self._backend.get_all(self.kind)

    def save(self, entity: Entity) -> bool:
        self._check_kind(entity)
        return self._backend.save(entity)

    def delete(self, entity: Entity) -> bool:
        self._check_kind(entity)
        return self._backend.delete(entity)

    def _check_kind(self, entity: Entity) -> None:
        if kind_of(entity) is not self.kind:
            raise TypeError(
                f"{self.kind.value} DAO cannot handle a {kind_of(entity).value}"
            )


class PropositionDao(EntityDao):
    """Proposition access; lookups go through the three getters, not names."""

    def __init__(self, backend: StorageBackend):
        super().__init__(backend, EntityKind.PROPOSITION)

    def get(self, name: str):
        raise ValueError(
            "propositions are retrieved via get_by_predicate/get_goals/get_no_goals"
        )

    def get_by_predicate(self, predicate_name: str) -> list[PddlProposition]:
        return self._backend.get_by_predicate(predicate_name)

    def get_goals(self) -> list[PddlProposition]:
        return self._backend.get_goals()

    def get_no_goals(self) -> list[PddlProposition]:
        return self._backend.get_no_goals()


class DaoFamily:
    """Five DAOs over one backend, plus family-level convenience calls.

    Families are safe for concurrent use; every operation (including a
    cascading save and reset) is atomic on the underlying backend.
    Persistent families hold a directory lock, so close them (or use the
    family as a context manager) when done.
    """

    def __init__(self, backend: StorageBackend):
        self.backend = backend
        self.type_dao = EntityDao(backend, EntityKind.TYPE)
        self.object_dao = EntityDao(backend, EntityKind.OBJECT)
        self.predicate_dao = EntityDao(backend, EntityKind.PREDICATE)
        self.proposition_dao = PropositionDao(backend)
        self.action_dao = EntityDao(backend, EntityKind.ACTION)

    def get(self, kind: EntityKind | str, name: str):
        if isinstance(kind, str):
            kind = EntityKind.from_string(kind)
        return self.backend.get(kind, name)

    def get_all(self, kind: EntityKind | str) -> list[Entity]:
        if isinstance(kind, str):
            kind = EntityKind.from_string(kind)
        return self.backend.get_all(kind)

    def save(self, entity: Entity) -> bool:
        return self.backend.save(entity)

    def delete(self, entity: Entity) -> bool:
        return self.backend.delete(entity)

    def get_by_predicate(self, predicate_name: str) -> list[PddlProposition]:
        return self.backend.get_by_predicate(predicate_name)

    def get_goals(self) -> list[PddlProposition]:
        return self.backend.get_goals()

    def get_no_goals(self) -> list[PddlProposition]:
        return self.backend.get_no_goals()

    def reset(self) -> bool:
        return self.backend.reset()

    def close(self) -> None:
        self.backend.close()

    def __enter__(self) -> "DaoFamily":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def create_dao_family(config: BackendConfig) -> DaoFamily:
    """Build the coherent DAO family for the configured backend.

    A docstore family loads any state already persisted at the location;
    a memory family starts empty. Raises ``BackendUnavailable`` when the
    location cannot be opened, holds another family's lock, or contains
    corrupt collections.
    """
    if config.kind is BackendKind.MEMORY:
        from .memory import MemoryStore

        return DaoFamily(MemoryStore())
    from .docstore import DocStore

    return DaoFamily(DocStore(Path(config.location)))
