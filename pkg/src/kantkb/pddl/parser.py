"""PDDL parsing back into model entities.

The grammar covers exactly what the writer emits — typing plus durative
actions — with the usual textual slack: arbitrary whitespace, any
letter case, and ``;`` comments. Anything outside that subset raises
``UnsupportedConstruct``; malformed text raises ``ParseError`` carrying
the offending line and column (both 1-based).

Keywords are only treated as keywords where the grammar puts them, so
predicates named ``not``, ``at`` or ``and`` survive a round trip: a
negation is recognized by ``not`` followed by a parenthesized literal,
and timed literals only exist inside durative action bodies, where every
literal must be timed anyway.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from ..errors import KantKbError, ParseError, UnsupportedConstruct
from ..model import (
    Entity,
    PddlAction,
    PddlConditionEffect,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    TimeSpecifier,
    proposition_key,
)

_INT_RE = re.compile(r"[0-9]+\Z")

_SUPPORTED_REQUIREMENTS = {":typing", ":durative-actions"}


@dataclass
class ParsedDomain:
    """Entities recovered from one domain file."""

    name: str
    types: list[PddlType] = field(default_factory=list)
    predicates: list[PddlPredicate] = field(default_factory=list)
    actions: list[PddlAction] = field(default_factory=list)

    def entities(self) -> Iterator[Entity]:
        yield from self.types
        yield from self.predicates
        yield from self.actions


@dataclass
class ParsedProblem:
    """Entities recovered from one problem file (goals flagged)."""

    name: str
    domain_name: str
    objects: list[PddlObject] = field(default_factory=list)
    propositions: list[PddlProposition] = field(default_factory=list)

    def entities(self) -> Iterator[Entity]:
        yield from self.objects
        yield from self.propositions


# -- s-expression layer -------------------------------------------------------

@dataclass
class _Atom:
    text: str
    line: int
    col: int


@dataclass
class _SList:
    items: list
    line: int
    col: int


def _tokenize(text: str):
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, ch, line, col
            col += 1
            i += 1
        else:
            start, start_col = i, col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield "atom", text[start:i].lower(), line, start_col


def _read_tree(text: str) -> _SList:
    """Read exactly one s-expression; anything after it is an error."""
    stack: list[_SList] = []
    root: _SList | None = None
    last_line, last_col = 1, 1
    for kind, tok, line, col in _tokenize(text):
        last_line, last_col = line, col
        if root is not None:
            raise ParseError(line, col, "unexpected text after the closing ')'")
        if kind == "(":
            node = _SList([], line, col)
            if stack:
                stack[-1].items.append(node)
            stack.append(node)
        elif kind == ")":
            if not stack:
                raise ParseError(line, col, "unmatched ')'")
            node = stack.pop()
            if not stack:
                root = node
        else:
            if not stack:
                raise ParseError(line, col, f"expected '(' before {tok!r}")
            stack[-1].items.append(_Atom(tok, line, col))
    if stack:
        raise ParseError(stack[-1].line, stack[-1].col, "unclosed '('")
    if root is None:
        raise ParseError(last_line, last_col, "empty input")
    return root


def _expect_atom(node, what: str) -> _Atom:
    if not isinstance(node, _Atom):
        raise ParseError(node.line, node.col, f"expected {what}, found a list")
    return node


def _expect_list(node, what: str) -> _SList:
    if not isinstance(node, _SList):
        raise ParseError(node.line, node.col, f"expected {what}, found {node.text!r}")
    return node


def _name_pos(node) -> tuple[int, int]:
    return node.line, node.col


# -- shared small parsers ------------------------------------------------------

def _build(ctor, pos, *args, **kwargs):
    """Run a model constructor, converting validation errors to located ones."""
    try:
        return ctor(*args, **kwargs)
    except KantKbError as exc:
        raise ParseError(pos[0], pos[1], str(exc)) from exc


def _parse_typed_names(
    items: list, types: Mapping[str, PddlType], variables: bool, what: str
) -> list[tuple[str, PddlType, tuple[int, int]]]:
    """Parse ``n1 n2 - t ...`` groups into (name, type, position) triples."""
    out: list[tuple[str, PddlType, tuple[int, int]]] = []
    pending: list[_Atom] = []
    i = 0
    while i < len(items):
        atom = _expect_atom(items[i], f"a {what} name")
        if atom.text == "-":
            if not pending:
                raise ParseError(atom.line, atom.col, f"'-' without preceding {what} names")
            if i + 1 >= len(items):
                raise ParseError(atom.line, atom.col, "'-' without a type")
            type_atom = _expect_atom(items[i + 1], "a type name")
            declared = types.get(type_atom.text)
            if declared is None:
                raise ParseError(type_atom.line, type_atom.col, f"unknown type {type_atom.text!r}")
            for name_atom in pending:
                out.append((name_atom.text, declared, _name_pos(name_atom)))
            pending = []
            i += 2
            continue
        if variables:
            if not atom.text.startswith("?") or len(atom.text) < 2:
                raise ParseError(atom.line, atom.col, f"expected a '?'-variable, found {atom.text!r}")
            pending.append(_Atom(atom.text[1:], atom.line, atom.col))
        else:
            if atom.text.startswith("?"):
                raise ParseError(atom.line, atom.col, f"expected a name, found variable {atom.text!r}")
            pending.append(atom)
        i += 1
    if pending:
        last = pending[-1]
        raise ParseError(last.line, last.col, f"{what} {last.text!r} is missing a type")
    return out


# -- domain --------------------------------------------------------------------

def parse_domain(text: str) -> ParsedDomain:
    """Parse a domain file into validated model entities."""
    tree = _read_tree(text)
    name_atom = _header(tree, "domain")
    domain = ParsedDomain(name=name_atom.text)

    blocks = _collect_blocks(
        tree.items[2:],
        known={":requirements", ":types", ":predicates", ":action", ":durative-action"},
        repeatable={":action", ":durative-action"},
    )

    if ":requirements" in blocks:
        for flag in blocks[":requirements"][0][1]:
            atom = _expect_atom(flag, "a requirement flag")
            if atom.text not in _SUPPORTED_REQUIREMENTS:
                raise UnsupportedConstruct(atom.text.lstrip(":"), atom.line, atom.col)

    types: dict[str, PddlType] = {}
    if ":types" in blocks:
        for node in blocks[":types"][0][1]:
            atom = _expect_atom(node, "a type name")
            if atom.text == "-":
                raise UnsupportedConstruct("type-hierarchy", atom.line, atom.col)
            types[atom.text] = _build(PddlType, _name_pos(atom), atom.text)
    domain.types = list(types.values())

    predicates: dict[str, PddlPredicate] = {}
    if ":predicates" in blocks:
        for node in blocks[":predicates"][0][1]:
            decl = _expect_list(node, "a predicate declaration")
            if not decl.items:
                raise ParseError(decl.line, decl.col, "empty predicate declaration")
            pname = _expect_atom(decl.items[0], "a predicate name")
            triples = _parse_typed_names(decl.items[1:], types, variables=True, what="parameter")
            seen = set()
            for var, _, pos in triples:
                if var in seen:
                    raise ParseError(pos[0], pos[1], f"duplicate parameter {var!r}")
                seen.add(var)
            if pname.text in predicates:
                raise ParseError(pname.line, pname.col, f"duplicate predicate {pname.text!r}")
            predicates[pname.text] = _build(
                PddlPredicate, _name_pos(pname), pname.text, tuple(t for _, t, _ in triples)
            )
    domain.predicates = list(predicates.values())

    actions: dict[str, PddlAction] = {}
    for head in (":durative-action", ":action"):
        for pos, items in blocks.get(head, []):
            action = _parse_action_body(head, pos, items, types, predicates)
            if action.name in actions:
                raise ParseError(pos[0], pos[1], f"duplicate action {action.name!r}")
            actions[action.name] = action
    domain.actions = sorted(actions.values(), key=lambda a: a.name)
    return domain


def _header(tree: _SList, kind: str) -> _Atom:
    if not tree.items:
        raise ParseError(tree.line, tree.col, "empty form, expected (define ...)")
    head = _expect_atom(tree.items[0], "'define'")
    if head.text != "define":
        raise ParseError(head.line, head.col, f"expected 'define', found {head.text!r}")
    if len(tree.items) < 2:
        raise ParseError(tree.line, tree.col, f"missing ({kind} <name>)")
    decl = _expect_list(tree.items[1], f"({kind} <name>)")
    if (
        len(decl.items) != 2
        or not isinstance(decl.items[0], _Atom)
        or decl.items[0].text != kind
    ):
        raise ParseError(decl.line, decl.col, f"expected ({kind} <name>)")
    name = _expect_atom(decl.items[1], f"a {kind} name")
    _build(PddlType, _name_pos(name), name.text)  # reuse identifier validation
    return name


def _collect_blocks(nodes: list, known: set[str], repeatable: set[str]):
    blocks: dict[str, list[tuple[tuple[int, int], list]]] = {}
    for node in nodes:
        block = _expect_list(node, "a (:keyword ...) block")
        if not block.items:
            raise ParseError(block.line, block.col, "empty block")
        head = _expect_atom(block.items[0], "a block keyword")
        if not head.text.startswith(":"):
            raise ParseError(head.line, head.col, f"expected a ':keyword', found {head.text!r}")
        if head.text not in known:
            raise UnsupportedConstruct(head.text.lstrip(":"), head.line, head.col)
        if head.text in blocks and head.text not in repeatable:
            raise ParseError(head.line, head.col, f"duplicate {head.text} block")
        blocks.setdefault(head.text, []).append(((head.line, head.col), block.items[1:]))
    return blocks


def _parse_action_body(
    head: str,
    pos: tuple[int, int],
    items: list,
    types: Mapping[str, PddlType],
    predicates: Mapping[str, PddlPredicate],
) -> PddlAction:
    durative = head == ":durative-action"
    if not items:
        raise ParseError(pos[0], pos[1], f"{head} is missing its name")
    name = _expect_atom(items[0], "an action name")

    allowed = (
        {":parameters", ":duration", ":condition", ":effect"}
        if durative
        else {":parameters", ":precondition", ":effect"}
    )
    sections: dict[str, _SList] = {}
    i = 1
    while i < len(items):
        key = _expect_atom(items[i], "an action section keyword")
        if key.text not in allowed:
            raise ParseError(
                key.line, key.col,
                f"unexpected {key.text!r} in {head} (allowed: {', '.join(sorted(allowed))})",
            )
        if key.text in sections:
            raise ParseError(key.line, key.col, f"duplicate {key.text} section")
        if i + 1 >= len(items):
            raise ParseError(key.line, key.col, f"{key.text} is missing its body")
        sections[key.text] = _expect_list(items[i + 1], f"the {key.text} body")
        i += 2

    parameters: list[PddlObject] = []
    if ":parameters" in sections:
        body = sections[":parameters"]
        triples = _parse_typed_names(body.items, types, variables=True, what="parameter")
        parameters = [
            _build(PddlObject, p, t, n) for n, t, p in triples
        ]
    by_name = {p.name: p for p in parameters}

    duration = 10
    if durative:
        if ":duration" not in sections:
            raise ParseError(pos[0], pos[1], f"durative action {name.text!r} is missing :duration")
        duration = _parse_duration(sections[":duration"])

    condition_key = ":condition" if durative else ":precondition"
    conditions = _parse_literal_block(
        sections.get(condition_key), durative, by_name, predicates
    )
    effects = _parse_literal_block(
        sections.get(":effect"), durative, by_name, predicates
    )
    return _build(
        PddlAction,
        _name_pos(name),
        name.text,
        tuple(parameters),
        tuple(conditions),
        tuple(effects),
        durative=durative,
        duration=duration,
    )


def _parse_duration(body: _SList) -> int:
    items = body.items
    if (
        len(items) != 3
        or not isinstance(items[0], _Atom)
        or items[0].text != "="
        or not isinstance(items[1], _Atom)
        or items[1].text != "?duration"
    ):
        raise ParseError(body.line, body.col, "expected (= ?duration <integer>)")
    value = _expect_atom(items[2], "an integer duration")
    if not _INT_RE.match(value.text):
        raise ParseError(value.line, value.col, f"expected an integer duration, found {value.text!r}")
    return int(value.text)


def _parse_literal_block(
    body: _SList | None,
    durative: bool,
    parameters: Mapping[str, PddlObject],
    predicates: Mapping[str, PddlPredicate],
) -> list[PddlConditionEffect]:
    if body is None:
        return []
    if (
        not body.items
        or not isinstance(body.items[0], _Atom)
        or body.items[0].text != "and"
    ):
        raise ParseError(body.line, body.col, "expected an (and ...) conjunction")
    out = []
    for node in body.items[1:]:
        tree = _expect_list(node, "a literal")
        out.append(_parse_action_literal(tree, durative, parameters, predicates))
    return out


def _timed_shape(tree: _SList) -> tuple[TimeSpecifier, _SList] | None:
    """Recognize (at start L) / (at end L) / (over all L); None otherwise."""
    if len(tree.items) != 3 or not isinstance(tree.items[0], _Atom):
        return None
    head, when, inner = tree.items
    if not isinstance(when, _Atom) or not isinstance(inner, _SList):
        return None
    if head.text == "at" and when.text in ("start", "end"):
        return (
            TimeSpecifier.AT_START if when.text == "start" else TimeSpecifier.AT_END,
            inner,
        )
    if head.text == "over" and when.text == "all":
        return TimeSpecifier.OVER_ALL, inner
    return None


def _parse_action_literal(
    tree: _SList,
    durative: bool,
    parameters: Mapping[str, PddlObject],
    predicates: Mapping[str, PddlPredicate],
) -> PddlConditionEffect:
    timed = _timed_shape(tree)
    if durative:
        if timed is None:
            raise ParseError(
                tree.line, tree.col,
                "durative literals must be (at start ...), (at end ...) or (over all ...)",
            )
        time, inner = timed
        negative, pred, objs = _parse_literal_core(inner, parameters, predicates)
        return _build(
            PddlConditionEffect, (inner.line, inner.col),
            pred, objs, time=time, is_negative=negative,
        )
    if timed is not None:
        raise ParseError(tree.line, tree.col, "timed literal in a non-durative action")
    negative, pred, objs = _parse_literal_core(tree, parameters, predicates)
    return _build(
        PddlConditionEffect, (tree.line, tree.col), pred, objs, is_negative=negative
    )


def _parse_literal_core(
    tree: _SList,
    parameters: Mapping[str, PddlObject],
    predicates: Mapping[str, PddlPredicate],
) -> tuple[bool, PddlPredicate, tuple[PddlObject, ...]]:
    """Parse ``(pred ?a ?b)`` or ``(not (pred ?a ?b))`` over action parameters."""
    if not tree.items:
        raise ParseError(tree.line, tree.col, "empty literal")
    head = _expect_atom(tree.items[0], "a predicate name")
    if head.text == "not" and len(tree.items) == 2 and isinstance(tree.items[1], _SList):
        inner = tree.items[1]
        negative, pred, objs = _parse_literal_core(inner, parameters, predicates)
        if negative:
            raise ParseError(inner.line, inner.col, "nested negation is not supported")
        return True, pred, objs
    predicate = predicates.get(head.text)
    if predicate is None:
        raise ParseError(head.line, head.col, f"unknown predicate {head.text!r}")
    objs = []
    for node in tree.items[1:]:
        atom = _expect_atom(node, "a parameter variable")
        if not atom.text.startswith("?") or len(atom.text) < 2:
            raise ParseError(atom.line, atom.col, f"expected a '?'-variable, found {atom.text!r}")
        param = parameters.get(atom.text[1:])
        if param is None:
            raise ParseError(atom.line, atom.col, f"unknown parameter {atom.text!r}")
        objs.append(param)
    return False, predicate, tuple(objs)


def parse_action(
    text: str,
    types: Mapping[str, PddlType],
    predicates: Mapping[str, PddlPredicate],
) -> PddlAction:
    """Parse a single ``(:action ...)`` / ``(:durative-action ...)`` form.

    Types and predicates are resolved against the given context (usually
    the current knowledge base) instead of a surrounding domain file.
    """
    tree = _read_tree(text)
    if not tree.items:
        raise ParseError(tree.line, tree.col, "empty form")
    head = _expect_atom(tree.items[0], "':action' or ':durative-action'")
    if head.text not in (":action", ":durative-action"):
        raise ParseError(
            head.line, head.col, f"expected ':action' or ':durative-action', found {head.text!r}"
        )
    return _parse_action_body(
        head.text, (head.line, head.col), tree.items[1:], types, predicates
    )


# -- problem -------------------------------------------------------------------

def parse_problem(text: str, domain: ParsedDomain) -> ParsedProblem:
    """Parse a problem file, resolving names against ``domain``'s entities."""
    tree = _read_tree(text)
    name_atom = _header(tree, "problem")

    blocks = _collect_blocks(
        tree.items[2:],
        known={":domain", ":objects", ":init", ":goal"},
        repeatable=set(),
    )

    if ":domain" not in blocks:
        raise ParseError(tree.line, tree.col, "problem is missing its (:domain ...) block")
    dpos, ditems = blocks[":domain"][0]
    if len(ditems) != 1:
        raise ParseError(dpos[0], dpos[1], "expected (:domain <name>)")
    domain_atom = _expect_atom(ditems[0], "a domain name")
    if domain_atom.text != domain.name:
        raise ParseError(
            domain_atom.line, domain_atom.col,
            f"problem is for domain {domain_atom.text!r}, entities are for {domain.name!r}",
        )

    types = {t.name: t for t in domain.types}
    predicates = {p.name: p for p in domain.predicates}
    problem = ParsedProblem(name=name_atom.text, domain_name=domain_atom.text)

    objects: dict[str, PddlObject] = {}
    if ":objects" in blocks:
        for oname, otype, pos in _parse_typed_names(
            blocks[":objects"][0][1], types, variables=False, what="object"
        ):
            if oname in objects:
                raise ParseError(pos[0], pos[1], f"duplicate object {oname!r}")
            objects[oname] = _build(PddlObject, pos, otype, oname)
    problem.objects = list(objects.values())

    seen_keys: set[str] = set()
    propositions: list[PddlProposition] = []
    if ":init" in blocks:
        for node in blocks[":init"][0][1]:
            propositions.append(
                _parse_grounded(node, predicates, objects, seen_keys, is_goal=False)
            )
    if ":goal" in blocks:
        gpos, gitems = blocks[":goal"][0]
        if len(gitems) != 1:
            raise ParseError(gpos[0], gpos[1], "expected (:goal (and ...))")
        conj = _expect_list(gitems[0], "an (and ...) conjunction")
        if not conj.items or not isinstance(conj.items[0], _Atom) or conj.items[0].text != "and":
            raise ParseError(conj.line, conj.col, "expected an (and ...) conjunction")
        for node in conj.items[1:]:
            propositions.append(
                _parse_grounded(node, predicates, objects, seen_keys, is_goal=True)
            )
    problem.propositions = propositions
    return problem


def _parse_grounded(
    node,
    predicates: Mapping[str, PddlPredicate],
    objects: Mapping[str, PddlObject],
    seen_keys: set[str],
    is_goal: bool,
) -> PddlProposition:
    tree = _expect_list(node, "a grounded proposition")
    if not tree.items:
        raise ParseError(tree.line, tree.col, "empty proposition")
    head = _expect_atom(tree.items[0], "a predicate name")
    if head.text == "not" and len(tree.items) == 2 and isinstance(tree.items[1], _SList):
        raise UnsupportedConstruct("negated-proposition", tree.line, tree.col)
    predicate = predicates.get(head.text)
    if predicate is None:
        raise ParseError(head.line, head.col, f"unknown predicate {head.text!r}")
    objs = []
    for item in tree.items[1:]:
        atom = _expect_atom(item, "an object name")
        obj = objects.get(atom.text)
        if obj is None:
            raise ParseError(atom.line, atom.col, f"unknown object {atom.text!r}")
        objs.append(obj)
    proposition = _build(
        PddlProposition, (tree.line, tree.col), predicate, tuple(objs), is_goal=is_goal
    )
    key = proposition_key(predicate.name, (o.name for o in objs))
    if key in seen_keys:
        raise ParseError(tree.line, tree.col, f"duplicate proposition {key!r}")
    seen_keys.add(key)
    return proposition
