"""Entity <-> JSON document codec.

This is the normalized document form used by the file-backed store,
by the CLI's ``--format json`` output, and by tests that compare
observable knowledge-base state. Nested entities are stored by name
and re-resolved on decode, so a decoded entity is always rebuilt
through the validating model constructors.

Document shapes (one collection per kind):

* type:        ``{"name": s}``
* object:      ``{"name": s, "type": s}``
* predicate:   ``{"name": s, "types": [s]}``
* proposition: ``{"predicate": s, "objects": [s], "is_goal": b}``
  keyed ``"<pred>|<obj1>,<obj2>,..."``
* action:      ``{"name": s, "durative": b, "duration": n,
  "parameters": [{"name": s, "type": s}], "conditions": [lit],
  "effects": [lit]}`` with
  lit = ``{"predicate": s, "objects": [s], "time": "at_start"|"at_end"|"over_all"|null,
  "negative": b}``
"""

from __future__ import annotations

from typing import Any, Mapping

from .model import (
    EntityKind,
    PddlAction,
    PddlConditionEffect,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    TimeSpecifier,
)

Doc = dict[str, Any]


def type_to_doc(entity: PddlType) -> Doc:
    return {"name": entity.name}


def object_to_doc(entity: PddlObject) -> Doc:
    return {"name": entity.name, "type": entity.type.name}


def predicate_to_doc(entity: PddlPredicate) -> Doc:
    return {"name": entity.name, "types": [t.name for t in entity.parameter_types]}


def proposition_to_doc(entity: PddlProposition) -> Doc:
    return {
        "predicate": entity.predicate.name,
        "objects": [o.name for o in entity.objects],
        "is_goal": entity.is_goal,
    }


def _literal_to_doc(literal: PddlConditionEffect) -> Doc:
    return {
        "predicate": literal.predicate.name,
        "objects": [o.name for o in literal.objects],
        "time": literal.time.value if literal.time is not None else None,
        "negative": literal.is_negative,
    }


def action_to_doc(entity: PddlAction) -> Doc:
    return {
        "name": entity.name,
        "durative": entity.durative,
        "duration": entity.duration,
        "parameters": [{"name": p.name, "type": p.type.name} for p in entity.parameters],
        "conditions": [_literal_to_doc(c) for c in entity.conditions],
        "effects": [_literal_to_doc(e) for e in entity.effects],
    }


def entity_to_doc(entity) -> Doc:
    return _ENCODERS[type(entity)](entity)


_ENCODERS = {
    PddlType: type_to_doc,
    PddlObject: object_to_doc,
    PddlPredicate: predicate_to_doc,
    PddlProposition: proposition_to_doc,
    PddlAction: action_to_doc,
}


# --- decoding --------------------------------------------------------------
#
# Decoders raise KeyError/TypeError/ValueError on malformed documents and
# model errors on structurally invalid ones; the store maps any of those
# to BackendUnavailable when it loads a corrupt file.

def type_from_doc(doc: Doc) -> PddlType:
    return PddlType(doc["name"])


def object_from_doc(doc: Doc, types: Mapping[str, PddlType]) -> PddlObject:
    return PddlObject(types[doc["type"]], doc["name"])


def predicate_from_doc(doc: Doc, types: Mapping[str, PddlType]) -> PddlPredicate:
    return PddlPredicate(doc["name"], tuple(types[t] for t in doc["types"]))


def proposition_from_doc(
    doc: Doc,
    predicates: Mapping[str, PddlPredicate],
    objects: Mapping[str, PddlObject],
) -> PddlProposition:
    return PddlProposition(
        predicates[doc["predicate"]],
        tuple(objects[o] for o in doc["objects"]),
        is_goal=bool(doc["is_goal"]),
    )


def action_from_doc(
    doc: Doc,
    types: Mapping[str, PddlType],
    predicates: Mapping[str, PddlPredicate],
) -> PddlAction:
    parameters = tuple(
        PddlObject(types[p["type"]], p["name"]) for p in doc["parameters"]
    )
    by_name = {p.name: p for p in parameters}

    def literal(lit: Doc) -> PddlConditionEffect:
        return PddlConditionEffect(
            predicates[lit["predicate"]],
            tuple(by_name[o] for o in lit["objects"]),
            time=TimeSpecifier(lit["time"]) if lit["time"] is not None else None,
            is_negative=bool(lit["negative"]),
        )

    return PddlAction(
        doc["name"],
        parameters,
        tuple(literal(c) for c in doc["conditions"]),
        tuple(literal(e) for e in doc["effects"]),
        durative=bool(doc["durative"]),
        duration=doc["duration"],
    )


def snapshot(family) -> dict[str, dict[str, Doc]]:
    """Observable state of a DAO family as plain documents, keyed per kind.

    Two families with equal snapshots are observably equivalent: the
    comparison covers all five kinds, and the goal flag on propositions
    is part of the document.
    """
    from .model import entity_key  # local import keeps module load cheap

    out: dict[str, dict[str, Doc]] = {}
    for kind in EntityKind:
        out[kind.value] = {
            entity_key(e): entity_to_doc(e) for e in family.get_all(kind)
        }
    return out
