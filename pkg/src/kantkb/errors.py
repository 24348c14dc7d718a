"""Exception types raised across the knowledge base toolkit.

Every error that callers are expected to branch on has its own class;
anything that went wrong inside the toolkit is a subclass of
:class:`KantKbError`, so ``except KantKbError`` catches the lot.
"""

from __future__ import annotations


class KantKbError(Exception):
    """Base class for all toolkit errors."""


# --- entity validation -----------------------------------------------------

class InvalidIdentifier(KantKbError):
    """A name does not match the identifier grammar (or is empty)."""

    def __init__(self, name: str, reason: str = "invalid identifier"):
        super().__init__(f"{reason}: {name!r}")
        self.name = name


class ArityMismatch(KantKbError):
    """A predicate was applied to the wrong number of objects."""

    def __init__(self, predicate: str, expected: int, got: int):
        super().__init__(
            f"predicate {predicate!r} takes {expected} argument(s), got {got}"
        )
        self.predicate = predicate
        self.expected = expected
        self.got = got


class TypeMismatch(KantKbError):
    """An object's type does not match the predicate's parameter type."""

    def __init__(self, position: int, expected: str, got: str):
        super().__init__(
            f"argument {position} must have type {expected!r}, got {got!r}"
        )
        self.position = position
        self.expected = expected
        self.got = got


class UnboundParameter(KantKbError):
    """A condition or effect references an object the action never declares."""

    def __init__(self, name: str, detail: str = ""):
        msg = f"parameter {name!r} is not declared by the action"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.name = name


class DuplicateParameter(KantKbError):
    """Two action parameters share the same name."""

    def __init__(self, name: str):
        super().__init__(f"duplicate parameter name {name!r}")
        self.name = name


class TimeAnnotationMismatch(KantKbError):
    """Timing present on a plain action, or missing on a durative one."""


class InvalidTimePlacement(KantKbError):
    """An `over all` annotation was used where only start/end are legal."""


# --- knowledge base --------------------------------------------------------

class ConflictingDefinition(KantKbError):
    """An entity with the same name but a different structure already exists."""


class DependentsExist(KantKbError):
    """Deletion refused because other stored knowledge still references the entity."""


class StorageFailure(KantKbError):
    """The backend failed to read or write committed state."""


class BackendUnavailable(KantKbError):
    """The backend could not be opened (bad location, corrupt store, held lock)."""


# --- PDDL text -------------------------------------------------------------

class ParseError(KantKbError):
    """PDDL text could not be parsed; carries the offending position."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class UnsupportedConstruct(KantKbError):
    """The text uses a PDDL feature outside the supported subset."""

    def __init__(self, name: str, line: int | None = None, column: int | None = None):
        at = f" at {line}:{column}" if line is not None else ""
        super().__init__(f"unsupported PDDL construct {name!r}{at}")
        self.name = name
        self.line = line
        self.column = column


# --- benchmark -------------------------------------------------------------

class EmptySamples(KantKbError):
    """Statistics were requested for an empty sample list."""
