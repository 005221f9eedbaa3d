"""Branching rules B1-B14 and their dispatcher.

Each ``bruleN(inst)`` returns ``None`` or a :class:`BranchingStep`.  A
branch is a list of literals forced true; its child is the raw result of
those assignments, with ``dk`` the number of clauses they satisfy.  The
solver re-reduces every child, which is where the follow-up reductions
named by the individual rules happen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .analysis import branching_root
from .formula import (
    Formula,
    Instance,
    assign_literals,
    consistent,
    is_22,
    is_evened,
    is_i1,
    is_singleton,
    is_skewed,
)


class PatternError(RuntimeError):
    """A rule produced an impossible branching (a matching bug)."""


@dataclass
class Branch:
    literals: tuple
    instance: Instance
    dk: int


@dataclass
class BranchingStep:
    rule: str
    branches: List[Branch]
    bindings: Dict[str, object] = field(default_factory=dict)

    @property
    def vector(self) -> List[int]:
        return [b.dk for b in self.branches]


def make_step(inst: Instance, rule: str, forced: Sequence[Sequence[int]], **bindings) -> BranchingStep:
    branches = []
    for lits in forced:
        lits = tuple(dict.fromkeys(lits))
        if not consistent(lits):
            raise PatternError("%s forces a literal and its negation: %r" % (rule, lits))
        g, sat = assign_literals(inst.formula, lits)
        branches.append(Branch(lits, Instance(g, inst.k - sat), sat))
    return BranchingStep(rule, branches, bindings)


def _rest(f: Formula, cid: int, *drop: int):
    return [l for l in f.clause(cid) if l not in drop]


def _neg(lits):
    return [-l for l in lits]


# -- B1, B2 ----------------------------------------------------------------


def brule1(inst: Instance):
    """Branch on a 6+-variable or a (3,2)-literal."""
    f = inst.formula
    for v in f.variables():
        i, j = f.count(v), f.count(-v)
        if i + j >= 6 or (i, j) in ((3, 2), (2, 3)):
            z = v if i >= j else -v
            return make_step(inst, "B1", [[z], [-z]], x=v, z=z)
    return None


def _three_variable_literals(f: Formula):
    for v in f.variables():
        if f.degree(v) == 3:
            i = f.count(v)
            if i in (1, 2):
                yield v, (v if i == 2 else -v)


def b2_plain(inst: Instance):
    """Branch z=1 / z=0 on the (2,1)-literal of the first 3-variable."""
    for v, z in _three_variable_literals(inst.formula):
        return make_step(inst, "B2", [[z], [-z]], x=v, z=z, strategy="plain")
    return None


def _b2_candidates(inst: Instance, v: int, z: int):
    f = inst.formula
    (q,) = f.occurrences(-z)
    d = _rest(f, q, -z)
    if d:
        # some D literal true with z = 0: flipping z to 1 loses nothing
        yield [[z], [-z] + _neg(d)], "force-D"
        return
    yield [[z], [-z]], "plain"
    # z = 1 with a true literal in C1 or C2: flipping z to 0 loses at most one clause
    c = []
    for cid in f.occurrences(z):
        c.extend(l for l in f.clause(cid) if l != z)
    forced = [z] + _neg(c)
    if consistent(forced):
        yield [forced, [-z]], "force-C"


def b2_forcing(inst: Instance):
    """Best immediate vector among forcing branchings on 3-variables.

    When the negative clause (-z D) is non-unit, use z=1 | z=0,D=0.
    When it is unit, use the better of z=1 | z=0 and z=1,C1C2=0 | z=0.
    """
    best = None
    for v, z in _three_variable_literals(inst.formula):
        for forced, name in _b2_candidates(inst, v, z):
            step = make_step(inst, "B2", forced, x=v, z=z, strategy=name)
            rho = branching_root(step.vector)
            if best is None or rho < best[0] - 1e-12:
                best = (rho, step)
    return None if best is None else best[1]


B2_STRATEGIES: Dict[str, Callable] = {"plain": b2_plain, "forcing": b2_forcing}


# -- (i,1)-literals ----------------------------------------------------------


def _literals(f: Formula):
    for v in f.variables():
        yield v
        yield -v


def brule3(inst: Instance):
    """(i,1)-literal z with a non-unit clause (-z y1..yh): z=1 | z=0, y's=0."""
    f = inst.formula
    for z in _literals(f):
        if is_i1(f, z):
            (q,) = f.occurrences(-z)
            ys = _rest(f, q, -z)
            if ys:
                return make_step(inst, "B3", [[z], [-z] + _neg(ys)], z=z, y=ys, clause=q)
    return None


def brule4(inst: Instance):
    """(i,1)-literal z in a 2-clause (zy): z=1 | z=0, y=1."""
    f = inst.formula
    for z in _literals(f):
        if is_i1(f, z):
            for cid in f.occurrences(z):
                if len(f.clause(cid)) == 2:
                    (y,) = _rest(f, cid, z)
                    return make_step(inst, "B4", [[z], [-z, y]], z=z, y=y, clause=cid)
    return None


# -- (2,2)-literals ----------------------------------------------------------


def _22_literals(f: Formula):
    for v in f.variables():
        if is_22(f, v):
            yield v
            yield -v


def brule5(inst: Instance):
    """(2,2)-literal z whose two clauses share a 4-variable: branch on z."""
    f = inst.formula
    for z in _22_literals(f):
        p1, p2 = f.occurrences(z)
        vs1 = {abs(l) for l in _rest(f, p1, z)}
        vs2 = {abs(l) for l in _rest(f, p2, z)}
        for y in sorted(vs1 & vs2):
            if f.degree(y) == 4:
                return make_step(inst, "B5", [[z], [-z]], z=z, y=y, clauses=[p1, p2])
    return None


def brule6(inst: Instance):
    """Two clauses both holding a (2,2)-literal z and a literal y: y=0 | y=1."""
    f = inst.formula
    for z in _22_literals(f):
        p1, p2 = f.occurrences(z)
        common = sorted(set(_rest(f, p1, z)) & set(_rest(f, p2, z)), key=lambda l: (abs(l), l < 0))
        if common:
            y = common[0]
            return make_step(inst, "B6", [[-y], [y]], z=z, y=y, clauses=[p1, p2])
    return None


def brule7(inst: Instance):
    """(2,2)-literal z with a unit clause (-z): z=1, C1C2=0 | z=0."""
    f = inst.formula
    for z in _22_literals(f):
        if any(len(f.clause(cid)) == 1 for cid in f.occurrences(-z)):
            p1, p2 = f.occurrences(z)
            c = _rest(f, p1, z) + _rest(f, p2, z)
            return make_step(inst, "B7", [[z] + _neg(c), [-z]], z=z, clauses=[p1, p2])
    return None


def brule8(inst: Instance):
    """Clauses of a (2,2)-literal z: one holds an (i,1)-literal, the other a
    (2,2)-literal y2: y2=1 | y2=0."""
    f = inst.formula
    for z in _22_literals(f):
        p1, p2 = f.occurrences(z)
        for a, b in ((p1, p2), (p2, p1)):
            if not any(is_i1(f, l) for l in _rest(f, a, z)):
                continue
            y2s = [l for l in _rest(f, b, z) if is_22(f, l)]
            if y2s:
                y2 = y2s[0]
                y1 = next(l for l in _rest(f, a, z) if is_i1(f, l))
                return make_step(inst, "B8", [[y2], [-y2]], z=z, y1=y1, y2=y2, clauses=[a, b])
    return None


def brule9(inst: Instance):
    """Evened (2,2)-literal z in a 2-clause: branch on a literal y != z, -z
    from a clause of -z."""
    f = inst.formula
    for z in _22_literals(f):
        if not is_evened(f, abs(z)):
            continue
        if not any(len(f.clause(cid)) == 2 for cid in f.occurrences(z)):
            continue
        for cid in f.occurrences(-z):
            ys = [l for l in f.clause(cid) if abs(l) != abs(z)]
            if ys:
                y = ys[0]
                return make_step(inst, "B9", [[y], [-y]], z=z, y=y, clause=cid)
    return None


def brule10(inst: Instance):
    """2-clause (zy) with z a (2,2)-literal, (-zC1)(-zC2):
    y=1 | y=0,z=1 | y=z=0, C1C2=0."""
    f = inst.formula
    for cid, c in f.items():
        if len(c) != 2:
            continue
        for z in c:
            if not is_22(f, z):
                continue
            (y,) = [l for l in c if l != z]
            n1, n2 = f.occurrences(-z)
            cs = _rest(f, n1, -z) + _rest(f, n2, -z)
            forced = [[y], [-y, z], [-y, -z] + _neg(cs)]
            return make_step(inst, "B10", forced, z=z, y=y, clause=cid, clauses=[n1, n2])
    return None


def brule11(inst: Instance):
    """Clause (z y C1) of (2,2)-literals, y skewed, other z-clause (zC2):
    z=0 | z=1, yC1=0 | z=1, C2=0."""
    f = inst.formula
    for cid, c in f.items():
        lits22 = [l for l in c if is_22(f, l)]
        if len(lits22) < 2:
            continue
        for z in lits22:
            for y in lits22:
                if y == z or not is_skewed(f, abs(y)):
                    continue
                other = [q for q in f.occurrences(z) if q != cid]
                if len(other) != 1:
                    continue
                q = other[0]
                c1 = [l for l in c if l not in (z, y)]
                c2 = _rest(f, q, z)
                forced = [[-z], [z, -y] + _neg(c1), [z] + _neg(c2)]
                return make_step(inst, "B11", forced, z=z, y=y, clause=cid, other=q)
    return None


def brule12(inst: Instance):
    """(2,2)-literal z with (z y1 C1), (z y2 C2) and a third clause
    (y1 -y2 C3): branch on z."""
    f = inst.formula
    for z in _22_literals(f):
        p1, p2 = f.occurrences(z)
        for a, b in ((p1, p2), (p2, p1)):
            for y1 in _rest(f, a, z):
                for y2 in _rest(f, b, z):
                    if abs(y1) == abs(y2):
                        continue
                    third = [r for r in f.occurrences(y1) if r not in (p1, p2) and -y2 in f.clause(r)]
                    if third:
                        return make_step(
                            inst, "B12", [[z], [-z]], z=z, y1=y1, y2=y2, clauses=[a, b, third[0]]
                        )
    return None


def _two_clause_partner(f: Formula, y: int, cid: int, z: int):
    """For a (2,2)-literal y in clause ``cid``, its other clause if it avoids z."""
    if not is_22(f, y):
        return None
    other = [r for r in f.occurrences(y) if r != cid]
    if len(other) != 1:
        return None
    r = other[0]
    if z in f.clause(r) or -z in f.clause(r):
        return None
    return r


def brule13(inst: Instance):
    """(z y1 C1), (-z y2 C2), (y1 D1), (y2 D2) with (2,2)-literals:
    z=1,y1=0 | z=y1=1,D1=0 | z=0,y2=0 | z=0,y2=1,D2=0."""
    f = inst.formula
    for z in _22_literals(f):
        for p in f.occurrences(z):
            for y1 in _rest(f, p, z):
                r1 = _two_clause_partner(f, y1, p, z)
                if r1 is None:
                    continue
                for q in f.occurrences(-z):
                    for y2 in _rest(f, q, -z):
                        if y2 == y1:
                            continue
                        r2 = _two_clause_partner(f, y2, q, z)
                        if r2 is None:
                            continue
                        d1 = _rest(f, r1, y1)
                        d2 = _rest(f, r2, y2)
                        forced = [
                            [z, -y1],
                            [z, y1] + _neg(d1),
                            [-z, -y2],
                            [-z, y2] + _neg(d2),
                        ]
                        return make_step(
                            inst, "B13", forced, z=z, y1=y1, y2=y2, clauses=[p, q, r1, r2]
                        )
    return None


def brule14(inst: Instance):
    """3-clause (z1 z2 z3) of (i,1)-literals: z1=1 | z1=0,z2=1 | z1=z2=0,z3=1."""
    f = inst.formula
    for cid, c in f.items():
        if len(c) == 3 and all(is_i1(f, l) for l in c):
            z1, z2, z3 = c
            forced = [[z1], [-z1, z2], [-z1, -z2, z3]]
            return make_step(inst, "B14", forced, z=list(c), clause=cid)
    return None


BRULES = [
    ("B1", brule1),
    ("B2", None),
    ("B3", brule3),
    ("B4", brule4),
    ("B5", brule5),
    ("B6", brule6),
    ("B7", brule7),
    ("B8", brule8),
    ("B9", brule9),
    ("B10", brule10),
    ("B11", brule11),
    ("B12", brule12),
    ("B13", brule13),
    ("B14", brule14),
]


def dispatch(inst: Instance, b2=b2_forcing) -> Optional[BranchingStep]:
    """The first applicable branching rule, in order."""
    for name, rule in BRULES:
        step = (b2 if name == "B2" else rule)(inst)
        if step is not None:
            return step
    return None


def rule_by_name(name: str, b2=b2_forcing) -> Callable:
    for n, rule in BRULES:
        if n == name:
            return b2 if n == "B2" else rule
    raise KeyError(name)


# -- structural scanners -------------------------------------------------------


def ladder_violations(f: Formula, after: str) -> List[str]:
    """Structural facts that must hold once the given rule (and all before it)
    no longer applies to an irreducible formula."""
    bad = []
    order = [n for n, _ in BRULES]
    level = order.index(after) + 1
    for v in f.variables():
        i, j = f.count(v), f.count(-v)
        if level >= 2 and (i, j) not in ((4, 1), (1, 4), (3, 1), (1, 3), (2, 2)):
            bad.append("variable %d is (%d,%d)" % (v, i, j))
        if level >= 3:
            for z in (v, -v):
                if is_i1(f, z) and not is_singleton(f, z):
                    bad.append("(i,1)-literal %d is not a singleton" % z)
        if level >= 13 and (i, j) == (2, 2):
            bad.append("(2,2)-variable %d remains" % v)
    if level >= 14:
        for cid, c in f.items():
            if 1 < len(c) < 4:
                bad.append("clause %d has size %d" % (cid, len(c)))
    return bad
