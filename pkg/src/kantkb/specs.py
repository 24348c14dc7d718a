"""Compact one-line entity specs: parsing and formatting.

The syntax used on the command line and in benchmark scenario scripts:

* type:        ``robot``
* object:      ``rb1:robot``
* predicate:   ``robot_at(robot,wp)`` (``raining()`` for 0-ary)
* proposition: ``robot_at(rb1,wp1)`` with an optional ``:goal`` suffix

Types, objects and predicates are self-contained. A proposition spec
only names its predicate and objects, so parsing one needs a resolver —
usually the knowledge base — to supply the full structures.
"""

from __future__ import annotations

import re

from .errors import KantKbError
from .model import (
    PddlAction,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
)

_CALL_RE = re.compile(r"(?P<name>[^():,]+)\((?P<args>[^()]*)\)(?P<goal>:goal)?\Z")


class SpecSyntaxError(KantKbError):
    """An entity spec string does not match the compact syntax."""


class UnknownEntity(KantKbError):
    """A spec references a name the resolver does not know."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"unknown {kind} {name!r}")
        self.kind = kind
        self.name = name


def split_spec_call(text: str, what: str, allow_goal: bool) -> tuple[str, list[str], bool]:
    match = _CALL_RE.match(text.strip())
    if not match or (match.group("goal") and not allow_goal):
        raise SpecSyntaxError(
            f"bad {what} spec {text!r}; expected name(arg1,arg2,...)"
            + ("[:goal]" if allow_goal else "")
        )
    args_text = match.group("args").strip()
    args = [a.strip() for a in args_text.split(",")] if args_text else []
    return match.group("name").strip(), args, bool(match.group("goal"))


def parse_type_spec(text: str) -> PddlType:
    return PddlType(text.strip())


def parse_object_spec(text: str) -> PddlObject:
    name, _, type_name = text.partition(":")
    if not type_name:
        raise SpecSyntaxError(f"bad object spec {text!r}; expected name:type")
    return PddlObject(PddlType(type_name.strip()), name.strip())


def parse_predicate_spec(text: str) -> PddlPredicate:
    name, args, _ = split_spec_call(text, "predicate", allow_goal=False)
    return PddlPredicate(name, tuple(PddlType(a) for a in args))


def parse_proposition_spec(text: str, family) -> PddlProposition:
    """Resolve ``pred(obj1,...)[:goal]`` against a DAO family's stored entities."""
    name, args, is_goal = split_spec_call(text, "proposition", allow_goal=True)
    predicate = family.get("predicate", name)
    if predicate is None:
        raise UnknownEntity("predicate", name)
    objects = []
    for arg in args:
        obj = family.get("object", arg)
        if obj is None:
            raise UnknownEntity("object", arg)
        objects.append(obj)
    return PddlProposition(predicate, tuple(objects), is_goal=is_goal)


def format_entity(entity) -> str:
    """Compact one-line rendering; actions render as their bare name."""
    if isinstance(entity, PddlType):
        return entity.name
    if isinstance(entity, PddlObject):
        return f"{entity.name}:{entity.type.name}"
    if isinstance(entity, PddlPredicate):
        return f"{entity.name}({','.join(t.name for t in entity.parameter_types)})"
    if isinstance(entity, PddlProposition):
        base = f"{entity.predicate.name}({','.join(o.name for o in entity.objects)})"
        return f"{base}:goal" if entity.is_goal else base
    if isinstance(entity, PddlAction):
        return entity.name
    raise TypeError(f"cannot format {entity!r}")
