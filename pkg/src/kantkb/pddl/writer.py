"""Canonical PDDL emission from a DAO family.

Output is a pure function of the knowledge base's observable state:
every KB-level collection is emitted in a fixed sort order, while the
order of an action's parameters, conditions and effects is preserved
(it is part of the action's identity). Two observably-equal stores
therefore emit byte-identical text.

The canonical form (documented in the README and relied on by golden
tests): UTF-8, LF newlines, two-space indentation, lowercase keywords,
predicate variables named positionally ``?a0 ?a1 ...``, and consecutive
same-type names grouped as ``n1 n2 - t``.
"""

from __future__ import annotations

from ..dao import DaoFamily
from ..model import (
    EntityKind,
    PddlAction,
    PddlConditionEffect,
    PddlPredicate,
    PddlProposition,
    TimeSpecifier,
    canonical_name,
)

_TIME_TEXT = {
    TimeSpecifier.AT_START: "at start",
    TimeSpecifier.AT_END: "at end",
    TimeSpecifier.OVER_ALL: "over all",
}


def generate_domain(family: DaoFamily, domain_name: str) -> str:
    """Emit the domain file for the family's current types/predicates/actions."""
    name = canonical_name(domain_name)
    types = sorted(family.get_all(EntityKind.TYPE), key=lambda t: t.name)
    predicates = sorted(family.get_all(EntityKind.PREDICATE), key=lambda p: p.name)
    actions = sorted(family.get_all(EntityKind.ACTION), key=lambda a: a.name)

    requirements = ":typing :durative-actions" if any(
        a.durative for a in actions
    ) else ":typing"

    lines = [f"(define (domain {name})", f"  (:requirements {requirements})"]
    if types:
        lines.append(f"  (:types {' '.join(t.name for t in types)})")
    else:
        lines.append("  (:types)")
    if predicates:
        lines.append("  (:predicates")
        lines.extend(f"    {_predicate_decl(p)}" for p in predicates)
        lines.append("  )")
    else:
        lines.append("  (:predicates)")
    for action in actions:
        lines.extend(_action_lines(action))
    lines.append(")")
    return "\n".join(lines) + "\n"


def generate_problem(family: DaoFamily, problem_name: str, domain_name: str) -> str:
    """Emit the problem file: objects, non-goal init, and the goal conjunction."""
    pname = canonical_name(problem_name)
    dname = canonical_name(domain_name)
    objects = sorted(family.get_all(EntityKind.OBJECT), key=lambda o: o.name)
    init = sorted(family.get_no_goals(), key=_proposition_sort_key)
    goals = sorted(family.get_goals(), key=_proposition_sort_key)

    lines = [f"(define (problem {pname})", f"  (:domain {dname})"]
    if objects:
        lines.append("  (:objects")
        lines.extend(
            f"    {run}" for run in _grouped_runs(
                [o.name for o in objects], [o.type.name for o in objects]
            )
        )
        lines.append("  )")
    else:
        lines.append("  (:objects)")
    if init:
        lines.append("  (:init")
        lines.extend(f"    {_grounded(p)}" for p in init)
        lines.append("  )")
    else:
        lines.append("  (:init)")
    if goals:
        lines.append("  (:goal (and")
        lines.extend(f"    {_grounded(p)}" for p in goals)
        lines.append("  ))")
    else:
        lines.append("  (:goal (and))")
    lines.append(")")
    return "\n".join(lines) + "\n"


# -- pieces ------------------------------------------------------------------

def _grouped_runs(names: list[str], type_names: list[str]) -> list[str]:
    """One ``n1 n2 - t`` group per consecutive same-type run."""
    runs: list[str] = []
    start = 0
    for i in range(1, len(names) + 1):
        if i == len(names) or type_names[i] != type_names[start]:
            runs.append(f"{' '.join(names[start:i])} - {type_names[start]}")
            start = i
    return runs


def _typed_inline(names: list[str], type_names: list[str]) -> str:
    return " ".join(_grouped_runs(names, type_names))


def _predicate_decl(predicate: PddlPredicate) -> str:
    if not predicate.parameter_types:
        return f"({predicate.name})"
    variables = [f"?a{i}" for i in range(predicate.arity)]
    typed = _typed_inline(variables, [t.name for t in predicate.parameter_types])
    return f"({predicate.name} {typed})"


def _literal(literal: PddlConditionEffect) -> str:
    args = "".join(f" ?{o.name}" for o in literal.objects)
    text = f"({literal.predicate.name}{args})"
    return f"(not {text})" if literal.is_negative else text


def _timed_literal(literal: PddlConditionEffect) -> str:
    return f"({_TIME_TEXT[literal.time]} {_literal(literal)})"


def _grounded(proposition: PddlProposition) -> str:
    args = "".join(f" {o.name}" for o in proposition.objects)
    return f"({proposition.predicate.name}{args})"


def _proposition_sort_key(p: PddlProposition):
    return (p.predicate.name, tuple(o.name for o in p.objects))


def _and_block(key: str, items: list[str]) -> list[str]:
    if not items:
        return [f"    {key} (and)"]
    return [f"    {key} (and", *(f"      {item}" for item in items), "    )"]


def action_text(action: PddlAction) -> str:
    """The action's canonical block alone, without surrounding indentation."""
    lines = _action_lines(action)
    return "\n".join(line[2:] if line.startswith("  ") else line for line in lines) + "\n"


def _action_lines(action: PddlAction) -> list[str]:
    keyword = ":durative-action" if action.durative else ":action"
    params = _typed_inline(
        [f"?{p.name}" for p in action.parameters],
        [p.type.name for p in action.parameters],
    )
    lines = [f"  ({keyword} {action.name}", f"    :parameters ({params})"]
    if action.durative:
        lines.append(f"    :duration (= ?duration {action.duration})")
        lines.extend(
            _and_block(":condition", [_timed_literal(c) for c in action.conditions])
        )
        lines.extend(
            _and_block(":effect", [_timed_literal(e) for e in action.effects])
        )
    else:
        lines.extend(
            _and_block(":precondition", [_literal(c) for c in action.conditions])
        )
        lines.extend(_and_block(":effect", [_literal(e) for e in action.effects]))
    lines.append("  )")
    return lines
