"""Validated, immutable entities for a PDDL 2.1 knowledge base.

The model covers the subset needed for typed durative planning: types,
typed objects, predicates, grounded propositions (optionally flagged as
goals), timed condition/effect literals, and actions.

All entities are frozen dataclasses. Validation happens at construction,
so any instance you can get your hands on satisfies its invariants, and
"mutation" means building a new value (``dataclasses.replace`` works).
Structural equality is the dataclass ``==``; two entities are equal iff
every field matches, with list-valued fields compared in order.

Names are canonicalized to lowercase at construction: PDDL is
conventionally case-insensitive, and a single canonical spelling keeps
storage keys unambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union

from .errors import (
    ArityMismatch,
    DuplicateParameter,
    InvalidIdentifier,
    InvalidTimePlacement,
    TimeAnnotationMismatch,
    TypeMismatch,
    UnboundParameter,
)

_IDENTIFIER_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_\-]*\Z")


def canonical_name(name: str) -> str:
    """Validate ``name`` against the identifier grammar and lowercase it.

    Identifiers start with a letter and continue with letters, digits,
    ``_`` or ``-``. Raises :class:`InvalidIdentifier` otherwise.
    """
    if not isinstance(name, str) or not name:
        raise InvalidIdentifier(str(name), "empty or non-string name")
    if not _IDENTIFIER_RE.match(name):
        raise InvalidIdentifier(name)
    return name.lower()


class TimeSpecifier(Enum):
    """When a durative action's condition or effect applies."""

    AT_START = "at_start"
    AT_END = "at_end"
    OVER_ALL = "over_all"


class EntityKind(Enum):
    """The five storable entity kinds."""

    TYPE = "type"
    OBJECT = "object"
    PREDICATE = "predicate"
    PROPOSITION = "proposition"
    ACTION = "action"

    @classmethod
    def from_string(cls, text: str) -> "EntityKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(
                f"unknown entity kind {text!r}; expected one of "
                f"{', '.join(k.value for k in cls)}"
            ) from None


@dataclass(frozen=True)
class PddlType:
    """A named planning type, e.g. ``robot``."""

    name: str

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_name(self.name))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PddlObject:
    """A named world entity carrying exactly one type, e.g. ``rb1 : robot``."""

    type: PddlType
    name: str

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_name(self.name))

    def __str__(self) -> str:
        return f"{self.name} - {self.type.name}"


@dataclass(frozen=True)
class PddlPredicate:
    """A named relation over an ordered list of parameter types.

    Zero-ary predicates are legal: pass an empty parameter list.
    """

    name: str
    parameter_types: tuple[PddlType, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_name(self.name))
        object.__setattr__(self, "parameter_types", tuple(self.parameter_types))

    @property
    def arity(self) -> int:
        return len(self.parameter_types)

    def __str__(self) -> str:
        args = " ".join(t.name for t in self.parameter_types)
        return f"({self.name}{' ' + args if args else ''})"


def _check_grounding(predicate: PddlPredicate, objects: tuple[PddlObject, ...]) -> None:
    """Arity and positional type checks shared by propositions and literals."""
    if len(objects) != predicate.arity:
        raise ArityMismatch(predicate.name, predicate.arity, len(objects))
    for i, (obj, expected) in enumerate(zip(objects, predicate.parameter_types)):
        if obj.type.name != expected.name:
            raise TypeMismatch(i, expected.name, obj.type.name)


@dataclass(frozen=True)
class PddlProposition:
    """A predicate grounded over concrete objects, optionally a goal."""

    predicate: PddlPredicate
    objects: tuple[PddlObject, ...] = ()
    is_goal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        _check_grounding(self.predicate, self.objects)

    def __str__(self) -> str:
        parts = [self.predicate.name, *(o.name for o in self.objects)]
        text = f"({' '.join(parts)})"
        return f"{text} [goal]" if self.is_goal else text


@dataclass(frozen=True)
class PddlConditionEffect:
    """A condition or effect literal inside an action.

    ``objects`` reference the action's parameter placeholders. ``time``
    is one of AT_START / AT_END / OVER_ALL for durative actions and must
    be absent otherwise (enforced when the action is built).
    """

    predicate: PddlPredicate
    objects: tuple[PddlObject, ...] = ()
    time: TimeSpecifier | None = None
    is_negative: bool = False

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        _check_grounding(self.predicate, self.objects)
        if self.time is not None and not isinstance(self.time, TimeSpecifier):
            raise TypeError(f"time must be a TimeSpecifier, got {self.time!r}")


@dataclass(frozen=True)
class PddlAction:
    """A planning action with typed parameters and timed literals.

    Parameters are placeholder objects; every object referenced by a
    condition or effect must be declared as a parameter. For durative
    actions every literal carries a time annotation; for plain actions
    none may. ``duration`` is in abstract time units and is only emitted
    for durative actions.
    """

    name: str
    parameters: tuple[PddlObject, ...] = ()
    conditions: tuple[PddlConditionEffect, ...] = ()
    effects: tuple[PddlConditionEffect, ...] = ()
    durative: bool = True
    duration: int = 10

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_name(self.name))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "conditions", tuple(self.conditions))
        object.__setattr__(self, "effects", tuple(self.effects))
        if self.duration < 0:
            raise ValueError(f"duration must be non-negative, got {self.duration}")

        declared: dict[str, PddlObject] = {}
        for param in self.parameters:
            if param.name in declared:
                raise DuplicateParameter(param.name)
            declared[param.name] = param

        for literal in self.conditions + self.effects:
            for obj in literal.objects:
                bound = declared.get(obj.name)
                if bound is None:
                    raise UnboundParameter(obj.name)
                if bound.type.name != obj.type.name:
                    raise UnboundParameter(
                        obj.name,
                        f"declared with type {bound.type.name!r}, "
                        f"referenced with type {obj.type.name!r}",
                    )
            if self.durative and literal.time is None:
                raise TimeAnnotationMismatch(
                    f"durative action {self.name!r} has an untimed literal "
                    f"on {literal.predicate.name!r}"
                )
            if not self.durative and literal.time is not None:
                raise TimeAnnotationMismatch(
                    f"non-durative action {self.name!r} has a timed literal "
                    f"on {literal.predicate.name!r}"
                )
        for effect in self.effects:
            if effect.time is TimeSpecifier.OVER_ALL:
                raise InvalidTimePlacement(
                    f"effect on {effect.predicate.name!r} in action "
                    f"{self.name!r} cannot use 'over all'"
                )


Entity = Union[PddlType, PddlObject, PddlPredicate, PddlProposition, PddlAction]

_KIND_BY_CLASS = {
    PddlType: EntityKind.TYPE,
    PddlObject: EntityKind.OBJECT,
    PddlPredicate: EntityKind.PREDICATE,
    PddlProposition: EntityKind.PROPOSITION,
    PddlAction: EntityKind.ACTION,
}


def kind_of(entity: Entity) -> EntityKind:
    """Return the storage kind of ``entity``."""
    try:
        return _KIND_BY_CLASS[type(entity)]
    except KeyError:
        raise TypeError(f"not a storable entity: {entity!r}") from None


def proposition_key(predicate_name: str, object_names: Iterable[str]) -> str:
    """Composite storage key for a proposition: ``pred|obj1,obj2,...``."""
    return f"{predicate_name}|{','.join(object_names)}"


def entity_key(entity: Entity) -> str:
    """Canonical storage key: the name, or the composite key for propositions."""
    if isinstance(entity, PddlProposition):
        return proposition_key(entity.predicate.name, (o.name for o in entity.objects))
    return entity.name
