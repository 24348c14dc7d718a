"""Command-line front door: inspect/mutate the KB, dump/load PDDL, benchmark.

Exit codes: 0 success, 1 domain errors (validation, conflicts, storage),
2 not-found on get/delete, 64 usage errors. Data goes to stdout,
diagnostics to stderr.

Backend selection: ``--backend``/``--path`` flags, else the
``KANTKB_BACKEND``/``KANTKB_PATH`` environment variables, else a
docstore at ``./kb``. ``bench run`` is the exception: it always uses a
scratch directory unless ``--location`` is given, because the workload
resets the store every iteration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import documents, specs
from .benchmark import default_manifest, emit_report, load_manifest, run_benchmark
from .dao import BackendConfig, BackendKind, DaoFamily, create_dao_family
from .errors import KantKbError
from .model import EntityKind, PddlAction, entity_key
from .pddl import generate_domain, generate_problem, load_into_kb, parse_action, parse_domain, parse_problem
from .pddl.writer import action_text

EX_OK = 0
EX_ERROR = 1
EX_NOT_FOUND = 2
EX_USAGE = 64

ENV_BACKEND = "KANTKB_BACKEND"
ENV_PATH = "KANTKB_PATH"
DEFAULT_PATH = "kb"

_KINDS = ["type", "object", "predicate", "proposition", "action"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's 2
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--backend", choices=["memory", "docstore"], default=None,
        help=f"storage backend (default: ${ENV_BACKEND} or docstore)",
    )
    common.add_argument(
        "--path", default=None,
        help=f"docstore directory (default: ${ENV_PATH} or ./{DEFAULT_PATH})",
    )

    parser = _Parser(prog="kantkb", description="PDDL knowledge base toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    kb = groups.add_parser("kb", help="inspect and mutate the knowledge base")
    kb_cmds = kb.add_subparsers(dest="command", required=True)

    p = kb_cmds.add_parser("save", parents=[common], help="save an entity")
    p.add_argument("kind", choices=_KINDS)
    p.add_argument("spec", help="entity spec, e.g. robot, rb1:robot, robot_at(robot,wp), robot_at(rb1,wp1):goal")
    p.set_defaults(handler=_kb_save)

    p = kb_cmds.add_parser("get", parents=[common], help="look up one entity")
    p.add_argument("kind", choices=_KINDS)
    p.add_argument("spec", help="entity name (propositions: full spec)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=_kb_get)

    p = kb_cmds.add_parser("delete", parents=[common], help="delete an entity")
    p.add_argument("kind", choices=_KINDS)
    p.add_argument("spec")
    p.set_defaults(handler=_kb_delete)

    p = kb_cmds.add_parser("list", parents=[common], help="list all entities of a kind")
    p.add_argument("kind", choices=_KINDS)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(handler=_kb_list)

    p = kb_cmds.add_parser("reset", parents=[common], help="delete all knowledge")
    p.set_defaults(handler=_kb_reset)

    pddl = groups.add_parser("pddl", help="dump or load PDDL files")
    pddl_cmds = pddl.add_subparsers(dest="command", required=True)

    p = pddl_cmds.add_parser("dump-domain", parents=[common], help="emit the domain file")
    p.add_argument("--name", default="kb", help="domain name (default: kb)")
    p.set_defaults(handler=_pddl_dump_domain)

    p = pddl_cmds.add_parser("dump-problem", parents=[common], help="emit the problem file")
    p.add_argument("--name", default="kb_problem", help="problem name (default: kb_problem)")
    p.add_argument("--domain-name", default="kb", help="domain the problem refers to (default: kb)")
    p.set_defaults(handler=_pddl_dump_problem)

    p = pddl_cmds.add_parser("load", parents=[common], help="parse PDDL files into the KB")
    p.add_argument("domain", help="domain file")
    p.add_argument("problem", help="problem file")
    p.set_defaults(handler=_pddl_load)

    bench = groups.add_parser("bench", help="run knowledge-manipulation benchmarks")
    bench_cmds = bench.add_subparsers(dest="command", required=True)

    p = bench_cmds.add_parser("run", help="time the five-task workload")
    p.add_argument("--backend", choices=["memory", "docstore"], default="memory")
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--manifest", default=None, help="scenario manifest file (default: packaged coffee shop)")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--location", default=None, help="docstore directory (default: scratch dir)")
    p.set_defaults(handler=_bench_run)

    return parser


# -- plumbing ----------------------------------------------------------------

def _resolve_config(args) -> BackendConfig:
    backend = args.backend or os.environ.get(ENV_BACKEND) or "docstore"
    kind = BackendKind.from_string(backend)
    if kind is BackendKind.MEMORY:
        return BackendConfig(kind)
    path = args.path or os.environ.get(ENV_PATH) or DEFAULT_PATH
    return BackendConfig(kind, location=path)


def _open_family(args) -> DaoFamily:
    return create_dao_family(_resolve_config(args))


def _entity_text(entity) -> str:
    if isinstance(entity, PddlAction):
        return action_text(entity)
    return specs.format_entity(entity) + "\n"


def _entity_json(entity) -> str:
    return json.dumps(documents.entity_to_doc(entity), indent=2, sort_keys=True) + "\n"


def _lookup_proposition(family: DaoFamily, spec_text: str):
    """Resolve a proposition spec against stored state; None when absent."""
    name, args, _ = specs.split_spec_call(spec_text, "proposition", allow_goal=True)
    wanted = (name.lower(), tuple(a.lower() for a in args))
    for prop in family.get_by_predicate(name):
        if (prop.predicate.name, tuple(o.name for o in prop.objects)) == wanted:
            return prop
    return None


# -- kb ----------------------------------------------------------------------

def _kb_save(args) -> int:
    with _open_family(args) as family:
        kind = EntityKind.from_string(args.kind)
        if kind is EntityKind.PROPOSITION:
            entity = specs.parse_proposition_spec(args.spec, family)
        elif kind is EntityKind.ACTION:
            types = {t.name: t for t in family.get_all(EntityKind.TYPE)}
            predicates = {p.name: p for p in family.get_all(EntityKind.PREDICATE)}
            entity = parse_action(args.spec, types, predicates)
        elif kind is EntityKind.TYPE:
            entity = specs.parse_type_spec(args.spec)
        elif kind is EntityKind.OBJECT:
            entity = specs.parse_object_spec(args.spec)
        else:
            entity = specs.parse_predicate_spec(args.spec)
        family.save(entity)
    return EX_OK


def _kb_get(args) -> int:
    with _open_family(args) as family:
        kind = EntityKind.from_string(args.kind)
        if kind is EntityKind.PROPOSITION:
            entity = _lookup_proposition(family, args.spec)
        else:
            entity = family.get(kind, args.spec)
        if entity is None:
            return EX_NOT_FOUND
        sys.stdout.write(
            _entity_json(entity) if args.format == "json" else _entity_text(entity)
        )
    return EX_OK


def _kb_delete(args) -> int:
    with _open_family(args) as family:
        kind = EntityKind.from_string(args.kind)
        if kind is EntityKind.PROPOSITION:
            entity = _lookup_proposition(family, args.spec)
        else:
            entity = family.get(kind, args.spec)
        if entity is None or not family.delete(entity):
            return EX_NOT_FOUND
    return EX_OK


def _kb_list(args) -> int:
    with _open_family(args) as family:
        entities = sorted(
            family.get_all(EntityKind.from_string(args.kind)), key=entity_key
        )
        if args.format == "json":
            docs = [documents.entity_to_doc(e) for e in entities]
            sys.stdout.write(json.dumps(docs, indent=2, sort_keys=True) + "\n")
        else:
            for entity in entities:
                sys.stdout.write(specs.format_entity(entity) + "\n")
    return EX_OK


def _kb_reset(args) -> int:
    with _open_family(args) as family:
        family.reset()
    return EX_OK


# -- pddl ----------------------------------------------------------------------

def _pddl_dump_domain(args) -> int:
    with _open_family(args) as family:
        sys.stdout.write(generate_domain(family, args.name))
    return EX_OK


def _pddl_dump_problem(args) -> int:
    with _open_family(args) as family:
        sys.stdout.write(generate_problem(family, args.name, args.domain_name))
    return EX_OK


def _pddl_load(args) -> int:
    try:
        domain_text = Path(args.domain).read_text(encoding="utf-8")
        problem_text = Path(args.problem).read_text(encoding="utf-8")
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_ERROR
    domain = parse_domain(domain_text)
    problem = parse_problem(problem_text, domain)
    with _open_family(args) as family:
        counts = load_into_kb([*domain.entities(), *problem.entities()], family)
    sys.stdout.write(
        " ".join(
            f"{key}={counts[key]}"
            for key in ("types", "predicates", "objects", "actions", "propositions")
        )
        + "\n"
    )
    return EX_OK


# -- bench ----------------------------------------------------------------------

def _bench_run(args) -> int:
    if args.iterations < 1:
        raise _UsageError("bench run: --iterations must be >= 1")
    if args.warmup < 0:
        raise _UsageError("bench run: --warmup must be >= 0")
    manifest = load_manifest(args.manifest) if args.manifest else default_manifest()

    scratch: tempfile.TemporaryDirectory | None = None
    if args.backend == "docstore":
        location = args.location
        if location is None:
            scratch = tempfile.TemporaryDirectory(prefix="kantkb-bench-")
            location = scratch.name
        config = BackendConfig(BackendKind.DOCSTORE, location=location)
    else:
        config = BackendConfig(BackendKind.MEMORY)

    try:
        results = run_benchmark(config, manifest, args.iterations, warmup=args.warmup)
    except KantKbError as exc:
        partial = getattr(exc, "partial_results", None)
        sys.stderr.write(f"error: benchmark aborted: {exc}\n")
        if partial is not None and partial.iterations > 0:
            sys.stderr.write(f"partial results ({partial.iterations} completed iterations):\n")
            sys.stderr.write(emit_report(partial, args.format))
        return EX_ERROR
    finally:
        if scratch is not None:
            scratch.cleanup()
    sys.stdout.write(emit_report(results, args.format))
    return EX_OK


# -- entry ----------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        return args.handler(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except specs.SpecSyntaxError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EX_USAGE
    except (KantKbError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_ERROR


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
