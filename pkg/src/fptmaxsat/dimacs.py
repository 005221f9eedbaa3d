"""DIMACS CNF reading and writing."""

from __future__ import annotations

import warnings
from typing import List, Optional, Tuple

from .formula import Formula


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__("line %d: %s" % (line, msg))
        self.line = line


class HeaderMismatch(UserWarning):
    pass


def parse_dimacs_header(text: str) -> Tuple[Formula, Optional[int]]:
    """Parse ``text``; returns the formula and the declared variable count.

    Comment lines start with ``c``; a line starting with ``%`` ends the
    input.  Clauses may span lines and are terminated by ``0``.  Repeated
    literals inside a clause collapse.  Header counts that disagree with
    the body only raise a :class:`HeaderMismatch` warning.
    """
    header = None
    clauses: List[List[int]] = []
    cur: List[int] = []
    maxvar = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise ParseError(lineno, "second header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(lineno, "non-integer header count") from None
            if min(header) < 0:
                raise ParseError(lineno, "negative header count")
            continue
        if header is None:
            raise ParseError(lineno, "clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(lineno, "bad token %r" % tok) from None
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
                maxvar = max(maxvar, abs(lit))
    if cur:
        clauses.append(cur)  # tolerate a missing final 0
    if header is None:
        raise ParseError(0, "missing 'p cnf' header")
    nvars, ncl = header
    if ncl != len(clauses):
        warnings.warn("header declares %d clauses, found %d" % (ncl, len(clauses)), HeaderMismatch)
    if maxvar > nvars:
        warnings.warn("header declares %d variables, found id %d" % (nvars, maxvar), HeaderMismatch)
    return Formula(clauses), nvars


def parse_dimacs(text: str) -> Formula:
    return parse_dimacs_header(text)[0]


def emit_dimacs(f: Formula, nvars: Optional[int] = None, comments=()) -> str:
    n = max([nvars or 0] + list(f.variables()))
    out = ["c %s" % c for c in comments]
    out.append("p cnf %d %d" % (n, f.m))
    for c in f:
        out.append(" ".join(map(str, c)) + " 0")
    return "\n".join(out) + "\n"
