"""Exact parameterized MaxSAT: kernel, reduction rules, branching rules, oracle."""

from .formula import Formula, Instance, satisfied_count
from .oracle import brute_maxsat
from .solver import Outcome, Solver, decide, maximize, solve

__all__ = [
    "Formula",
    "Instance",
    "Outcome",
    "Solver",
    "brute_maxsat",
    "decide",
    "maximize",
    "satisfied_count",
    "solve",
]
