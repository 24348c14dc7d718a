"""PDDL 2.1 text: canonical emission, parsing, and loading into a KB."""

from .loader import load_into_kb
from .parser import (
    ParsedDomain,
    ParsedProblem,
    parse_action,
    parse_domain,
    parse_problem,
)
from .writer import generate_domain, generate_problem

__all__ = [
    "ParsedDomain",
    "ParsedProblem",
    "generate_domain",
    "generate_problem",
    "load_into_kb",
    "parse_action",
    "parse_domain",
    "parse_problem",
]
