"""Replayable log of reduction steps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .formula import Clause, Formula, assign


@dataclass
class TraceEntry:
    rule: str  # "R1".."R7", or "K" for the kernel big-clause rule
    dk: int
    before: Formula = field(repr=False)
    k_before: int
    removed: Tuple[int, ...] = ()
    added: Tuple[Clause, ...] = ()
    added_ids: Tuple[int, ...] = ()
    pivot: Optional[int] = None  # variable eliminated by the step
    literal: Optional[int] = None  # literal made true (R2 only)
    bindings: Dict[str, object] = field(default_factory=dict)

    def to_line(self) -> str:
        parts = [self.rule]
        if self.literal is not None:
            parts.append("lit=%d" % self.literal)
        elif self.pivot is not None:
            parts.append("var=%d" % self.pivot)
        for name, val in self.bindings.items():
            parts.append("%s=%s" % (name, _fmt(val)))
        if self.removed:
            parts.append("del=" + ",".join(map(str, self.removed)))
        if self.added_ids:
            parts.append("add=" + ",".join(map(str, self.added_ids)))
        parts.append("dk=%d" % self.dk)
        return " ".join(parts)


def _fmt(val) -> str:
    if isinstance(val, (list, tuple)):
        return ",".join(map(str, val)) if val else "-"
    return str(val)


Trace = List[TraceEntry]


def replay_forward(f: Formula, k: int, trace: Trace):
    """Re-apply ``trace`` to ``f``; returns the resulting ``(formula, k)``."""
    for e in trace:
        if e.literal is not None:
            f, _ = assign(f, e.literal, 1)
        else:
            f, _ = f.replace(e.removed, e.added)
        k -= e.dk
    return f, k


def dump(trace: Trace) -> str:
    return "".join(e.to_line() + "\n" for e in trace)
