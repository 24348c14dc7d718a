"""Embedded persistent backend: one JSON collection file per entity kind.

Layout under the store root::

    types.json  objects.json  predicates.json  propositions.json
    actions.json  LOCK

Each collection file is a single canonical JSON document
``{"schema": 1, "docs": {<key>: <doc>, ...}}`` — UTF-8, sorted keys,
minimal separators, one trailing LF. Documents reference nested entities
by name (see :mod:`kantkb.documents`), so every load rebuilds entities
through the validating constructors.

Every mutation is committed with write-temp-then-atomic-rename before the
call returns: a process killed between operations reopens to the state
after the last completed one. (Files are not fsynced; the durability
target is process crash, not power loss.)

A LOCK file holding the owner pid serializes access: a second open fails
with ``BackendUnavailable`` while the owner is alive, and a lock left by
a dead process is reclaimed.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import weakref
from pathlib import Path

from . import documents
from .backend import StorageBackend
from .errors import BackendUnavailable, KantKbError, StorageFailure
from .memory import MemoryStore
from .model import Entity, EntityKind, PddlProposition, entity_key

SCHEMA_VERSION = 1

_FILENAMES = {
    EntityKind.TYPE: "types.json",
    EntityKind.OBJECT: "objects.json",
    EntityKind.PREDICATE: "predicates.json",
    EntityKind.PROPOSITION: "propositions.json",
    EntityKind.ACTION: "actions.json",
}

# Decode order matters: entities are resolved against already-loaded kinds.
_LOAD_ORDER = (
    EntityKind.TYPE,
    EntityKind.OBJECT,
    EntityKind.PREDICATE,
    EntityKind.PROPOSITION,
    EntityKind.ACTION,
)


def _release_lock(lock_path: Path) -> None:
    try:
        lock_path.unlink()
    except OSError:
        pass


class DocStore(StorageBackend):
    """File-backed knowledge base mirroring a MemoryStore index."""

    def __init__(self, location: str | os.PathLike):
        self.root = Path(location)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise BackendUnavailable(f"cannot create store at {self.root}: {exc}") from exc
        self._lock_path = self.root / "LOCK"
        self._acquire_lock()
        self._finalizer = weakref.finalize(self, _release_lock, self._lock_path)
        self._mutex = threading.RLock()
        self._closed = False
        self._index = MemoryStore()
        try:
            self._load()
        except BackendUnavailable:
            self.close()
            raise

    # -- lifecycle -------------------------------------------------------

    def _acquire_lock(self) -> None:
        for attempt in range(2):
            try:
                fd = os.open(self._lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            except FileExistsError:
                if attempt == 0 and self._lock_is_stale():
                    _release_lock(self._lock_path)
                    continue
                raise BackendUnavailable(
                    f"store at {self.root} is locked by another family "
                    f"({self._lock_path})"
                ) from None
            except OSError as exc:
                raise BackendUnavailable(f"cannot lock store: {exc}") from exc
            with os.fdopen(fd, "w") as fh:
                fh.write(f"{os.getpid()}\n")
            return
        raise BackendUnavailable(f"store at {self.root} is locked")

    def _lock_is_stale(self) -> bool:
        try:
            pid = int(self._lock_path.read_text().strip())
        except (OSError, ValueError):
            return False
        try:
            os.kill(pid, 0)
        except ProcessLookupError:
            return True
        except PermissionError:
            return False
        return False

    def close(self) -> None:
        self._closed = True
        self._finalizer()

    def _guard_open(self) -> None:
        if self._closed:
            raise StorageFailure(f"store at {self.root} has been closed")

    # -- persistence -----------------------------------------------------

    def _load(self) -> None:
        decoded: dict[EntityKind, dict[str, Entity]] = {}
        fresh: list[EntityKind] = []
        for kind in _LOAD_ORDER:
            path = self.root / _FILENAMES[kind]
            if not path.exists():
                decoded[kind] = {}
                fresh.append(kind)
                continue
            decoded[kind] = self._load_collection(kind, path, decoded)
        self._index._replace_tables(decoded)
        # Initialize missing collection files so the directory is a
        # complete store from the first open on.
        for kind in fresh:
            self._persist_kind(kind)

    def _load_collection(
        self, kind: EntityKind, path: Path, decoded: dict[EntityKind, dict[str, Entity]]
    ) -> dict[str, Entity]:
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise BackendUnavailable(f"cannot read {path}: {exc}") from exc
        if not isinstance(payload, dict) or payload.get("schema") != SCHEMA_VERSION:
            raise BackendUnavailable(
                f"{path}: unknown schema version {payload.get('schema')!r}"
                if isinstance(payload, dict)
                else f"{path}: not a collection document"
            )
        docs = payload.get("docs")
        if not isinstance(docs, dict):
            raise BackendUnavailable(f"{path}: missing docs table")
        out: dict[str, Entity] = {}
        for key, doc in docs.items():
            try:
                entity = self._decode(kind, doc, decoded)
                if documents.entity_to_doc(entity) != doc or key != entity_key(entity):
                    raise ValueError("document does not round-trip")
            except (KantKbError, KeyError, TypeError, ValueError) as exc:
                raise BackendUnavailable(f"{path}: corrupt document {key!r}: {exc}") from exc
            out[key] = entity
        return out

    @staticmethod
    def _decode(kind, doc, decoded):
        if kind is EntityKind.TYPE:
            return documents.type_from_doc(doc)
        if kind is EntityKind.OBJECT:
            return documents.object_from_doc(doc, decoded[EntityKind.TYPE])
        if kind is EntityKind.PREDICATE:
            return documents.predicate_from_doc(doc, decoded[EntityKind.TYPE])
        if kind is EntityKind.PROPOSITION:
            return documents.proposition_from_doc(
                doc, decoded[EntityKind.PREDICATE], decoded[EntityKind.OBJECT]
            )
        return documents.action_from_doc(
            doc, decoded[EntityKind.TYPE], decoded[EntityKind.PREDICATE]
        )

    def _persist_kind(self, kind: EntityKind) -> None:
        table = self._index._tables[kind]
        payload = {
            "schema": SCHEMA_VERSION,
            "docs": {key: documents.entity_to_doc(e) for key, e in table.items()},
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
        path = self.root / _FILENAMES[kind]
        fd, tmp_name = tempfile.mkstemp(
            dir=self.root, prefix=f".{_FILENAMES[kind]}.", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp_name, path)
        except OSError:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

    def _commit(self, kinds: set[EntityKind], rollback) -> None:
        try:
            for kind in kinds:
                self._persist_kind(kind)
        except OSError as exc:
            self._index._replace_tables(rollback)
            raise StorageFailure(f"cannot persist store at {self.root}: {exc}") from exc

    # -- contract operations ----------------------------------------------

    def get(self, kind: EntityKind, name: str) -> Entity | None:
        with self._mutex:
            self._guard_open()
            return self._index.get(kind, name)

    def get_all(self, kind: EntityKind) -> list[Entity]:
        with self._mutex:
            self._guard_open()
            return self._index.get_all(kind)

    def save(self, entity: Entity) -> bool:
        with self._mutex:
            self._guard_open()
            rollback = self._index._copy_tables()
            changed = self._index._save_with_changes(entity)
            self._commit(changed, rollback)
            return True

    def delete(self, entity: Entity) -> bool:
        with self._mutex:
            self._guard_open()
            rollback = self._index._copy_tables()
            removed, changed = self._index._delete_with_changes(entity)
            self._commit(changed, rollback)
            return removed

    def get_by_predicate(self, predicate_name: str) -> list[PddlProposition]:
        with self._mutex:
            self._guard_open()
            return self._index.get_by_predicate(predicate_name)

    def get_goals(self) -> list[PddlProposition]:
        with self._mutex:
            self._guard_open()
            return self._index.get_goals()

    def get_no_goals(self) -> list[PddlProposition]:
        with self._mutex:
            self._guard_open()
            return self._index.get_no_goals()

    def reset(self) -> bool:
        with self._mutex:
            self._guard_open()
            rollback = self._index._copy_tables()
            changed = self._index._reset_with_changes()
            self._commit(changed, rollback)
            return True

    def compact(self) -> None:
        """Rewrite every collection file in canonical minimal form.

        Writes are already canonical, so this is state-preserving and
        idempotent; it exists to repair files edited by hand.
        """
        with self._mutex:
            self._guard_open()
            try:
                for kind in EntityKind:
                    self._persist_kind(kind)
            except OSError as exc:
                raise StorageFailure(f"cannot compact store: {exc}") from exc
