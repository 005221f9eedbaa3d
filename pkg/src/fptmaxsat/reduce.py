"""Reduction rules R1-R7, the ordered fixpoint loop, and certificate lifting.

Each ``rruleN(inst)`` returns ``None`` when the rule does not apply, or
``(new_instance, trace_entry)``.  Matches are searched by ascending
variable id (positive literal first) and then by ascending clause id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .formula import (
    Assignment,
    Formula,
    Instance,
    assign,
    complete,
    is_i1,
    is_tautology,
    satisfied_count,
)
from .trace import Trace, TraceEntry


def _literals(f: Formula):
    for v in f.variables():
        yield v
        yield -v


def _resolvent(*parts):
    out = set()
    for p in parts:
        out.update(p)
    return out


def _replace(inst: Instance, rule: str, dk: int, remove, add, **kw):
    f = inst.formula
    g, new_ids = f.replace(remove, add)
    added = tuple(g.clause(i) for i in new_ids)
    entry = TraceEntry(
        rule, dk, f, inst.k, removed=tuple(remove), added=added, added_ids=tuple(new_ids), **kw
    )
    return Instance(g, inst.k - dk), entry


def rrule1(inst: Instance):
    """Drop a tautology, or a complementary pair of unit clauses; k-1."""
    f = inst.formula
    for cid, c in f.items():
        if is_tautology(c):
            return _replace(inst, "R1", 1, [cid], [], bindings={"C": cid})
    for v in f.variables():
        pos = [cid for cid in f.occurrences(v) if len(f.clause(cid)) == 1]
        if not pos:
            continue
        negs = [cid for cid in f.occurrences(-v) if len(f.clause(cid)) == 1]
        if negs:
            return _replace(inst, "R1", 1, [pos[0], negs[0]], [], pivot=v, bindings={"x": v})
    return None


def rrule2(inst: Instance):
    """An (i,j)-literal z with at least j unit clauses (z): set z = 1; k-i."""
    f = inst.formula
    for z in _literals(f):
        i = f.count(z)
        if i and f.unit_count(z) >= f.count(-z):
            g, sat = assign(f, z, 1)
            entry = TraceEntry("R2", sat, f, inst.k, pivot=abs(z), literal=z)
            return Instance(g, inst.k - sat), entry
    return None


def rrule3(inst: Instance):
    """Resolve a 2-variable: (xC1)(~xC2) -> (C1C2); k-1."""
    f = inst.formula
    for x in f.variables():
        if f.count(x) == 1 and f.count(-x) == 1:
            (p,) = f.occurrences(x)
            (q,) = f.occurrences(-x)
            if p == q:
                continue
            res = _resolvent(f.clause(p), f.clause(q)) - {x, -x}
            return _replace(inst, "R3", 1, [p, q], [res], pivot=x, bindings={"x": x})
    return None


def _21_clauses(f: Formula, z: int):
    """The clauses (zC1), (zC2), (~zC3) of a (2,1)-literal, if distinct."""
    if f.count(z) != 2 or f.count(-z) != 1:
        return None
    p1, p2 = f.occurrences(z)
    (q,) = f.occurrences(-z)
    if q in (p1, p2):
        return None
    return p1, p2, q


def rrule4(inst: Instance):
    """(zy)(zC2)(~zC3) -> (yC3)(~y C2 C3) for a (2,1)-literal z; k-1."""
    f = inst.formula
    for z in _literals(f):
        cl = _21_clauses(f, z)
        if cl is None:
            continue
        p1, p2, q = cl
        for a, b in ((p1, p2), (p2, p1)):
            if len(f.clause(a)) == 2:
                (y,) = [l for l in f.clause(a) if l != z]
                c2 = set(f.clause(b)) - {z}
                c3 = set(f.clause(q)) - {-z}
                add = [c3 | {y}, c3 | c2 | {-y}]
                return _replace(
                    inst, "R4", 1, [a, b, q], add, pivot=abs(z),
                    bindings={"z": z, "y": y, "zy": a, "zC2": b, "~zC3": q},
                )
    return None


def rrule5(inst: Instance):
    """(zC1)(zC2)(~zC3) -> (C1C3)(C2C3) when C1C2C3 holds some y and ~y; k-1."""
    f = inst.formula
    for z in _literals(f):
        cl = _21_clauses(f, z)
        if cl is None:
            continue
        p1, p2, q = cl
        c1 = set(f.clause(p1)) - {z}
        c2 = set(f.clause(p2)) - {z}
        c3 = set(f.clause(q)) - {-z}
        if is_tautology(c1 | c2 | c3):
            return _replace(
                inst, "R5", 1, [p1, p2, q], [c1 | c3, c2 | c3], pivot=abs(z),
                bindings={"z": z, "zC1": p1, "zC2": p2, "~zC3": q},
            )
    return None


def rrule6(inst: Instance):
    """(i,1)-literal z with (~z y C), y an (j,1)-literal: resolve on z; k-1."""
    f = inst.formula
    for z in _literals(f):
        if not is_i1(f, z):
            continue
        (q,) = f.occurrences(-z)
        pos = f.occurrences(z)
        if q in pos:
            continue
        nclause = f.clause(q)
        ys = [y for y in nclause if y != -z and is_i1(f, y)]
        if not ys:
            continue
        rest = set(nclause) - {-z}
        add = [rest | (set(f.clause(p)) - {z}) for p in pos]
        return _replace(
            inst, "R6", 1, list(pos) + [q], add, pivot=abs(z),
            bindings={"z": z, "y": ys[0], "zC": list(pos), "~zyC": q},
        )
    return None


def rrule7(inst: Instance):
    """Resolve a (2,2)-variable whose four clauses each hold an (i,1)-literal; k unchanged."""
    f = inst.formula
    for x in f.variables():
        if f.count(x) != 2 or f.count(-x) != 2:
            continue
        p1, p2 = f.occurrences(x)
        n1, n2 = f.occurrences(-x)
        if len({p1, p2, n1, n2}) < 4:
            continue
        ys = []
        for cid, piv in ((p1, x), (p2, x), (n1, -x), (n2, -x)):
            cand = [y for y in f.clause(cid) if abs(y) != x and is_i1(f, y)]
            if not cand:
                break
            ys.append(cand[0])
        else:
            c = {cid: set(f.clause(cid)) - {x, -x} for cid in (p1, p2, n1, n2)}
            add = [c[p1] | c[n1], c[p2] | c[n1], c[p1] | c[n2], c[p2] | c[n2]]
            return _replace(
                inst, "R7", 0, [p1, p2, n1, n2], add, pivot=x,
                bindings={"z": x, "y": ys, "C": [p1, p2, n1, n2]},
            )
    return None


RULES: List[Callable] = [rrule1, rrule2, rrule3, rrule4, rrule5, rrule6, rrule7]


def step(inst: Instance):
    """Apply the first applicable rule, or return ``None``."""
    for rule in RULES:
        out = rule(inst)
        if out is not None:
            return out
    return None


def is_irreducible(inst: Instance) -> bool:
    return all(rule(inst) is None for rule in RULES)


@dataclass
class Reduction:
    instance: Instance
    trace: Trace = field(default_factory=list)
    certificate: Optional[Assignment] = None  # kernel declared Yes mid-loop

    @property
    def solved(self) -> bool:
        return self.certificate is not None


def apply_rrules(inst: Instance, size_factor: Optional[int] = 4, stop_at_zero: bool = True) -> Reduction:
    """Apply R1-R7 in order until none applies.

    Stops early once k <= 0 unless ``stop_at_zero`` is false.  Whenever the
    formula grows beyond ``size_factor * k**2`` (k > 0) the kernel is run;
    it may settle the instance.  ``size_factor=None`` never runs it.
    """
    from .kernel import kernelize

    trace: Trace = []
    while inst.k > 0 or not stop_at_zero:
        if size_factor is not None and inst.k > 0 and inst.formula.size > size_factor * inst.k * inst.k:
            ko = kernelize(inst)
            if ko.solved:
                sigma = reverse_replay(trace, ko.certificate)
                return Reduction(inst, trace, certificate=sigma)
            trace.extend(ko.trace)
            inst = ko.instance
            if inst.k <= 0:
                break
        out = step(inst)
        if out is None:
            break
        inst, entry = out
        trace.append(entry)
    return Reduction(inst, trace)


def _best_value(f: Formula, sigma: Assignment, v: int) -> int:
    sigma[v] = 0
    c0 = satisfied_count(f, sigma)
    sigma[v] = 1
    c1 = satisfied_count(f, sigma)
    return 1 if c1 > c0 else 0


def reverse_replay(trace: Trace, sigma: Assignment) -> Assignment:
    """Lift an assignment of the reduced formula back to the original one.

    Walks the trace backwards.  Variables that disappeared get 0, the
    eliminated pivot gets whichever value satisfies more clauses, R2's
    literal is made true, and kernel removals are undone by a single flip.
    """
    from .kernel import lift_big_clause

    sigma = dict(sigma)
    for e in reversed(trace):
        before = e.before
        if e.rule == "K":
            sigma = lift_big_clause(e, sigma)
            continue
        sigma = complete(sigma, before.variables())
        if e.literal is not None:
            sigma[abs(e.literal)] = 1 if e.literal > 0 else 0
        elif e.pivot is not None:
            sigma[e.pivot] = _best_value(before, sigma, e.pivot)
    return sigma
