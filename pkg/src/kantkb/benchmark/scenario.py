"""Benchmark scenarios: a declarative KB plus per-task operation scripts.

A manifest declares the knowledge a workload starts from (types,
predicates, objects, actions, initial propositions) and three scripts of
knowledge-base operations — the simulated robot tasks. Everything is
resolved and validated when the manifest is loaded, so running a script
is pure backend work and every run of it is identical.

The shipped default is a coffee-shop service scenario (one robot
checking tables, serving orders, guiding a person); it lives in
``data/coffee_shop.json`` and users can point the runner at their own
file with the same schema::

    {
      "schema": 1,
      "name": "...",
      "types": ["robot", ...],
      "predicates": {"robot_at": ["robot", "wp"], ...},
      "objects": {"rb1": "robot", ...},
      "actions": [<action documents, see kantkb.documents>],
      "init": ["robot_at(rb1,wp1)", "table_checked(t5):goal", ...],
      "tasks": {"check_tables": [<step>...],
                "serve_order": [...], "guide_person": [...]}
    }

A step is one string: ``save proposition robot_at(rb1,wp2)``,
``delete proposition robot_at(rb1,wp1)``, ``get object t3``,
``get_by_predicate robot_at``, ``get_goals``, ``get_no_goals`` or
``get_all proposition``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .. import documents
from ..model import (
    Entity,
    EntityKind,
    PddlAction,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
)
from ..specs import SpecSyntaxError, split_spec_call

TASK_SCRIPT_NAMES = ("check_tables", "serve_order", "guide_person")

MANIFEST_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Step:
    """One pre-resolved script operation."""

    op: str
    kind: EntityKind | None = None
    name: str | None = None
    entity: Entity | None = None

    def run(self, family) -> None:
        if self.op == "save":
            family.save(self.entity)
        elif self.op == "delete":
            family.delete(self.entity)
        elif self.op == "get":
            family.get(self.kind, self.name)
        elif self.op == "get_by_predicate":
            family.get_by_predicate(self.name)
        elif self.op == "get_goals":
            family.get_goals()
        elif self.op == "get_no_goals":
            family.get_no_goals()
        else:  # get_all
            family.get_all(self.kind)


@dataclass
class ScenarioManifest:
    """A validated scenario: initial knowledge plus three task scripts."""

    name: str
    types: list[PddlType]
    predicates: list[PddlPredicate]
    objects: list[PddlObject]
    actions: list[PddlAction]
    init: list[PddlProposition]
    tasks: dict[str, list[Step]]

    def initial_entities(self) -> list[Entity]:
        """Everything the load task saves, in dependency order."""
        return [
            *self.types,
            *self.predicates,
            *self.objects,
            *self.actions,
            *self.init,
        ]

    def run_task(self, family, task: str) -> None:
        """Execute one task script against ``family``."""
        for step in self.tasks[task]:
            step.run(family)


def load_manifest(source: str | Path) -> ScenarioManifest:
    """Load and validate a manifest file."""
    text = Path(source).read_text(encoding="utf-8")
    return manifest_from_json_obj(json.loads(text))


def default_manifest() -> ScenarioManifest:
    """The packaged coffee-shop scenario."""
    text = (
        resources.files("kantkb").joinpath("data/coffee_shop.json").read_text("utf-8")
    )
    return manifest_from_json_obj(json.loads(text))


def manifest_from_json_obj(payload: dict) -> ScenarioManifest:
    if not isinstance(payload, dict) or payload.get("schema") != MANIFEST_SCHEMA_VERSION:
        raise ValueError("manifest: unknown schema version")

    types = {name: PddlType(name) for name in payload.get("types", [])}
    predicates = {
        name: PddlPredicate(name, tuple(types[t] for t in args))
        for name, args in payload.get("predicates", {}).items()
    }
    objects = {
        name: PddlObject(types[t], name)
        for name, t in payload.get("objects", {}).items()
    }
    actions = [
        documents.action_from_doc(doc, types, predicates)
        for doc in payload.get("actions", [])
    ]

    def proposition(spec: str) -> PddlProposition:
        name, args, is_goal = split_spec_call(spec, "proposition", allow_goal=True)
        if name not in predicates:
            raise ValueError(f"manifest: undeclared predicate {name!r} in {spec!r}")
        missing = [a for a in args if a not in objects]
        if missing:
            raise ValueError(f"manifest: undeclared object {missing[0]!r} in {spec!r}")
        return PddlProposition(
            predicates[name], tuple(objects[a] for a in args), is_goal=is_goal
        )

    init = [proposition(spec) for spec in payload.get("init", [])]

    def step(text: str) -> Step:
        parts = text.split(None, 2)
        op = parts[0] if parts else ""
        try:
            if op in ("save", "delete") and len(parts) == 3:
                kind = EntityKind.from_string(parts[1])
                return Step(op, kind=kind, entity=_script_entity(kind, parts[2]))
            if op == "get" and len(parts) == 3:
                kind = EntityKind.from_string(parts[1])
                if kind is EntityKind.PROPOSITION:
                    raise ValueError("use get_by_predicate for propositions")
                return Step(op, kind=kind, name=parts[2])
            if op == "get_by_predicate" and len(parts) == 2:
                if parts[1] not in predicates:
                    raise ValueError(f"undeclared predicate {parts[1]!r}")
                return Step(op, name=parts[1])
            if op in ("get_goals", "get_no_goals") and len(parts) == 1:
                return Step(op)
            if op == "get_all" and len(parts) == 2:
                return Step(op, kind=EntityKind.from_string(parts[1]))
        except (KeyError, SpecSyntaxError, ValueError) as exc:
            raise ValueError(f"manifest: bad step {text!r}: {exc}") from exc
        raise ValueError(f"manifest: bad step {text!r}")

    def _script_entity(kind: EntityKind, spec: str) -> Entity:
        if kind is EntityKind.PROPOSITION:
            return proposition(spec)
        table = {
            EntityKind.TYPE: types,
            EntityKind.OBJECT: objects,
            EntityKind.PREDICATE: predicates,
        }.get(kind)
        if table is None or spec not in table:
            raise ValueError(f"undeclared {kind.value} {spec!r}")
        return table[spec]

    tasks_payload = payload.get("tasks", {})
    missing = [t for t in TASK_SCRIPT_NAMES if t not in tasks_payload]
    if missing:
        raise ValueError(f"manifest: missing task script(s): {', '.join(missing)}")
    tasks = {
        task: [step(s) for s in tasks_payload[task]] for task in TASK_SCRIPT_NAMES
    }

    return ScenarioManifest(
        name=payload.get("name", "scenario"),
        types=list(types.values()),
        predicates=list(predicates.values()),
        objects=list(objects.values()),
        actions=actions,
        init=init,
        tasks=tasks,
    )
