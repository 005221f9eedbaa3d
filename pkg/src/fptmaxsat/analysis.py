"""Branching vectors, their complexity, and auditing of search records."""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Sequence

TOL = 1e-9
AUDIT_LIMIT = 1.32472 + 1e-4


def branching_root(d: Sequence[int]) -> float:
    """The root >= 1 of x^dmax - sum_i x^(dmax - d_i).

    Bisects on [1, r+1] using 1 - sum_i x^(-d_i), which is increasing for
    x > 0 and has the same root.  Runs until the bracket stops shrinking,
    far below the 1e-9 absolute tolerance.
    """
    d = list(d)
    if not d:
        raise ValueError("empty branching vector")
    if any(int(x) != x or x < 1 for x in d):
        raise ValueError("branch decreases must be positive integers: %r" % (d,))
    lo, hi = 1.0, float(len(d) + 1)

    def g(x):
        return 1.0 - sum(x ** (-di) for di in d)

    if g(lo) >= 0:
        return 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def char_poly(d: Sequence[int], x: float) -> float:
    dmax = max(d)
    return x ** dmax - sum(x ** (dmax - di) for di in d)


def is_inferior(t1: Sequence[int], t2: Sequence[int]) -> bool:
    """True when t1 branches strictly worse than t2."""
    return branching_root(t1) > branching_root(t2) + TOL


@dataclass
class AuditRecord:
    rule: str
    k: int
    vector: List[int]  # effective decrease per branch, after the child's reductions
    immediate: List[int] = field(default_factory=list)
    bindings: Dict[str, object] = field(default_factory=dict)
    note: str = ""  # e.g. "b2-fallback" when a lookahead relied on B2

    @property
    def rho(self) -> float:
        return branching_root(self.vector)


@dataclass
class AuditReport:
    histogram: Dict[str, Dict[str, int]]
    violations: List[dict]
    b2_attributed: List[dict]
    b2_vectors: Dict[str, int]
    nodes: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = ["rule  vector                 rho      count"]
        for rule in sorted(self.histogram, key=_rule_order):
            for vec, cnt in sorted(self.histogram[rule].items(), key=lambda kv: -kv[1]):
                rho = branching_root([int(x) for x in vec.split(",")])
                lines.append("%-5s %-22s %.5f %6d" % (rule, "(" + vec + ")", rho, cnt))
        lines.append("violations: %d" % len(self.violations))
        for v in self.violations:
            lines.append("  %s k=%d vector=%s rho=%.5f" % (v["rule"], v["k"], v["vector"], v["rho"]))
        if self.b2_attributed:
            lines.append("b2-attributed exceedances: %d" % len(self.b2_attributed))
        return "\n".join(lines)

    @property
    def ok(self) -> bool:
        return not self.violations


def _rule_order(rule: str):
    return (rule[0], int(rule[1:]) if rule[1:].isdigit() else 0)


def audit_trace(records: Iterable[AuditRecord], limit: float = AUDIT_LIMIT) -> AuditReport:
    """Histogram realized vectors per rule and flag nodes worse than (3,2).

    B2 nodes are reported but never flagged.  A node whose lookahead
    relied on a B2 branching worse than (6,1) is listed separately.
    """
    hist: Dict[str, Counter] = defaultdict(Counter)
    violations, attributed = [], []
    b2 = Counter()
    total = 0
    for r in records:
        total += 1
        key = ",".join(map(str, r.vector))
        hist[r.rule][key] += 1
        if r.rule == "B2":
            b2[key] += 1
            continue
        rho = r.rho
        if rho > limit:
            item = {"rule": r.rule, "k": r.k, "vector": list(r.vector), "rho": rho, "note": r.note}
            (attributed if r.note == "b2-fallback" else violations).append(item)
    return AuditReport(
        histogram={rule: dict(c) for rule, c in hist.items()},
        violations=violations,
        b2_attributed=attributed,
        b2_vectors=dict(b2),
        nodes=total,
    )


# constants quoted for the individual rules
RULE_VECTORS = {
    "(3,2)": (3, 2),
    "(5,1)": (5, 1),
    "(6,1)": (6, 1),
    "(4,2)": (4, 2),
    "(3,3)": (3, 3),
    "(8,4,2)": (8, 4, 2),
    "(6,5,2)": (6, 5, 2),
    "(5,4,3)": (5, 4, 3),
    "(10,5,6,10,5,6)": (10, 5, 6, 10, 5, 6),
}


def growth_factor(ks: Sequence[int], nodes: Sequence[int]) -> float:
    """Least-squares slope of log(nodes) against k, exponentiated."""
    import math

    xs = list(ks)
    ys = [math.log(max(1, n)) for n in nodes]
    if len(xs) < 2:
        raise ValueError("need at least two points")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return math.exp(sxy / sxx)
