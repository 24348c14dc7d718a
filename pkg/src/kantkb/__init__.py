"""Knowledge management for PDDL 2.1 planning.

Build validated planning entities, keep them in a knowledge base behind
interchangeable storage backends, round-trip the whole store through
PDDL domain/problem text, and benchmark knowledge-manipulation
workloads. See the README for a tour.
"""

from .dao import BackendConfig, BackendKind, DaoFamily, create_dao_family
from .errors import (
    ArityMismatch,
    BackendUnavailable,
    ConflictingDefinition,
    DependentsExist,
    DuplicateParameter,
    EmptySamples,
    InvalidIdentifier,
    InvalidTimePlacement,
    KantKbError,
    ParseError,
    StorageFailure,
    TimeAnnotationMismatch,
    TypeMismatch,
    UnboundParameter,
    UnsupportedConstruct,
)
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
from .pddl import (
    ParsedDomain,
    ParsedProblem,
    generate_domain,
    generate_problem,
    load_into_kb,
    parse_domain,
    parse_problem,
)

__all__ = [
    "ArityMismatch",
    "BackendConfig",
    "BackendKind",
    "BackendUnavailable",
    "ConflictingDefinition",
    "DaoFamily",
    "DependentsExist",
    "DuplicateParameter",
    "EmptySamples",
    "EntityKind",
    "InvalidIdentifier",
    "InvalidTimePlacement",
    "KantKbError",
    "ParseError",
    "ParsedDomain",
    "ParsedProblem",
    "PddlAction",
    "PddlConditionEffect",
    "PddlObject",
    "PddlPredicate",
    "PddlProposition",
    "PddlType",
    "StorageFailure",
    "TimeAnnotationMismatch",
    "TimeSpecifier",
    "TypeMismatch",
    "UnboundParameter",
    "UnsupportedConstruct",
    "create_dao_family",
    "generate_domain",
    "generate_problem",
    "load_into_kb",
    "parse_domain",
    "parse_problem",
]

__version__ = "0.1.0"
