"""CNF formulas as immutable clause multisets with a literal occurrence index.

Literals are nonzero ints in the DIMACS convention: ``v`` is the positive
literal of variable ``v`` and ``-v`` its negation.  A clause is stored as a
sorted tuple of distinct literals under a stable integer id; duplicate
clauses are separate members with separate ids.  Empty clauses are never
stored (they cannot be satisfied, so dropping them changes no answer).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

Clause = Tuple[int, ...]
Assignment = Dict[int, int]


def var(lit: int) -> int:
    return abs(lit)


def lit_key(lit: int):
    """Sort key: by variable, positive literal first."""
    return (abs(lit), lit < 0)


def make_clause(lits: Iterable[int]) -> Clause:
    s = set(lits)
    if 0 in s:
        raise ValueError("0 is not a literal")
    return tuple(sorted(s, key=lit_key))


def is_tautology(lits: Iterable[int]) -> bool:
    s = set(lits)
    return any(-l in s for l in s)


def lit_value(lit: int, sigma: Mapping[int, int]) -> Optional[int]:
    """Truth value of ``lit`` under a (possibly partial) assignment."""
    v = sigma.get(abs(lit))
    if v is None:
        return None
    return v if lit > 0 else 1 - v


class Formula:
    """An immutable multiset of clauses.

    Every operation that changes the formula returns a new object, so a
    formula can be shared freely between search branches.
    """

    __slots__ = ("_clauses", "_occ", "_next_id", "_cache")

    def __init__(self, clauses: Iterable[Iterable[int]] = ()):
        cl: Dict[int, Clause] = {}
        occ: Dict[int, frozenset] = {}
        nid = 0
        buckets: Dict[int, list] = {}
        for lits in clauses:
            c = make_clause(lits)
            if not c:
                continue
            cl[nid] = c
            for l in c:
                buckets.setdefault(l, []).append(nid)
            nid += 1
        for l, ids in buckets.items():
            occ[l] = frozenset(ids)
        self._clauses = cl
        self._occ = occ
        self._next_id = nid
        self._cache = {}

    @classmethod
    def _make(cls, clauses, occ, next_id) -> "Formula":
        f = cls.__new__(cls)
        f._clauses = clauses
        f._occ = occ
        f._next_id = next_id
        f._cache = {}
        return f

    @classmethod
    def from_map(cls, clauses: Mapping[int, Iterable[int]]) -> "Formula":
        """Build a formula with explicit clause ids."""
        cl = {}
        for cid in sorted(clauses):
            c = make_clause(clauses[cid])
            if c:
                cl[cid] = c
        occ: Dict[int, set] = {}
        for cid, c in cl.items():
            for l in c:
                occ.setdefault(l, set()).add(cid)
        nid = max(clauses, default=-1) + 1
        return cls._make(cl, {l: frozenset(s) for l, s in occ.items()}, nid)

    # -- queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._clauses)

    @property
    def n(self) -> int:
        return len(self.variables())

    @property
    def size(self) -> int:
        return sum(len(c) for c in self._clauses.values())

    def __len__(self) -> int:
        return len(self._clauses)

    def __bool__(self) -> bool:
        return bool(self._clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self._clauses.values())

    def items(self):
        return self._clauses.items()

    def ids(self):
        return self._clauses.keys()

    def clause(self, cid: int) -> Clause:
        return self._clauses[cid]

    def as_map(self) -> Dict[int, Clause]:
        return dict(self._clauses)

    def occurrences(self, lit: int) -> Tuple[int, ...]:
        """Ids of clauses containing ``lit``, ascending."""
        key = ("occ", lit)
        r = self._cache.get(key)
        if r is None:
            r = tuple(sorted(self._occ.get(lit, ())))
            self._cache[key] = r
        return r

    def count(self, lit: int) -> int:
        return len(self._occ.get(lit, ()))

    def degree(self, v: int) -> int:
        return self.count(v) + self.count(-v)

    def variables(self) -> Tuple[int, ...]:
        r = self._cache.get("vars")
        if r is None:
            r = tuple(sorted({abs(l) for l, s in self._occ.items() if s}))
            self._cache["vars"] = r
        return r

    def unit_count(self, lit: int) -> int:
        return sum(1 for cid in self._occ.get(lit, ()) if len(self._clauses[cid]) == 1)

    def canonical(self) -> Tuple[Clause, ...]:
        return tuple(sorted(self._clauses.values(), key=lambda c: (len(c), [lit_key(l) for l in c])))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return "Formula(%r)" % (list(self._clauses.values()),)

    def to_lists(self):
        return [list(c) for c in self._clauses.values()]

    # -- rebuilding --------------------------------------------------------

    def replace(self, remove: Iterable[int] = (), add: Iterable[Iterable[int]] = ()):
        """Remove clauses by id and append new ones.

        Returns ``(formula, new_ids)``; empty added clauses are dropped and
        get no id.
        """
        cl = dict(self._clauses)
        occ = dict(self._occ)
        touched: Dict[int, set] = {}

        def bucket(l):
            s = touched.get(l)
            if s is None:
                s = set(occ.get(l, ()))
                touched[l] = s
            return s

        for cid in remove:
            c = cl.pop(cid)
            for l in c:
                bucket(l).discard(cid)
        nid = self._next_id
        new_ids = []
        for lits in add:
            c = make_clause(lits)
            if not c:
                continue
            cl[nid] = c
            for l in c:
                bucket(l).add(nid)
            new_ids.append(nid)
            nid += 1
        for l, s in touched.items():
            if s:
                occ[l] = frozenset(s)
            else:
                occ.pop(l, None)
        return Formula._make(cl, occ, nid), new_ids

    def rebuild_index(self) -> Dict[int, frozenset]:
        occ: Dict[int, set] = {}
        for cid, c in self._clauses.items():
            for l in c:
                occ.setdefault(l, set()).add(cid)
        return {l: frozenset(s) for l, s in occ.items()}

    def index_consistent(self) -> bool:
        live = {l: s for l, s in self._occ.items() if s}
        return live == self.rebuild_index()


@dataclass(frozen=True)
class Instance:
    formula: Formula
    k: int


def assign(f: Formula, lit: int, value: int = 1) -> Tuple[Formula, int]:
    """Set literal ``lit`` to ``value``.

    Clauses made true are removed and counted; the false literal is deleted
    from the remaining clauses, keeping their ids.  Clauses left empty are
    dropped.
    """
    true_lit = lit if value else -lit
    false_lit = -true_lit
    sat_ids = f.occurrences(true_lit)
    shrink_ids = f.occurrences(false_lit)
    cl = dict(f._clauses)
    occ = dict(f._occ)
    touched: Dict[int, set] = {}

    def bucket(l):
        s = touched.get(l)
        if s is None:
            s = set(occ.get(l, ()))
            touched[l] = s
        return s

    for cid in sat_ids:
        for l in cl.pop(cid):
            bucket(l).discard(cid)
    for cid in shrink_ids:
        c = cl.get(cid)
        if c is None:
            continue  # a tautology, already removed as satisfied
        bucket(false_lit).discard(cid)
        rest = tuple(l for l in c if l != false_lit)
        if rest:
            cl[cid] = rest
        else:
            del cl[cid]
    for l, s in touched.items():
        if s:
            occ[l] = frozenset(s)
        else:
            occ.pop(l, None)
    return Formula._make(cl, occ, f._next_id), len(sat_ids)


def assign_literals(f: Formula, lits: Sequence[int]) -> Tuple[Formula, int]:
    """Make every literal in ``lits`` true, in order."""
    total = 0
    for l in lits:
        f, s = assign(f, l, 1)
        total += s
    return f, total


def consistent(lits: Iterable[int]) -> bool:
    s = set(lits)
    return not any(-l in s for l in s)


def clause_satisfied(c: Iterable[int], sigma: Mapping[int, int]) -> bool:
    return any(lit_value(l, sigma) == 1 for l in c)


def satisfied_count(f: Formula, sigma: Mapping[int, int]) -> int:
    """Number of clauses with a true literal; ``sigma`` must be total on ``f``."""
    missing = [v for v in f.variables() if v not in sigma]
    if missing:
        raise ValueError("assignment is partial: missing variables %s" % missing[:5])
    return sum(1 for c in f if clause_satisfied(c, sigma))


def complete(sigma: Mapping[int, int], variables: Iterable[int], default: int = 0) -> Assignment:
    out = dict(sigma)
    for v in variables:
        out.setdefault(v, default)
    return out


# -- structural classification -------------------------------------------


@dataclass(frozen=True)
class VariableProfile:
    variable: int
    i: int
    j: int
    kind: str

    @property
    def degree(self) -> int:
        return self.i + self.j


def is_i1(f: Formula, lit: int) -> bool:
    """``lit`` occurs at least once and its negation exactly once."""
    return f.count(lit) >= 1 and f.count(-lit) == 1


def is_singleton(f: Formula, lit: int) -> bool:
    if not is_i1(f, lit):
        return False
    (cid,) = f.occurrences(-lit)
    return len(f.clause(cid)) == 1


def is_22(f: Formula, lit: int) -> bool:
    return f.count(lit) == 2 and f.count(-lit) == 2


def _others(f: Formula, lit: int):
    for cid in f.occurrences(lit):
        for l in f.clause(cid):
            if l != lit:
                yield l


def is_evened(f: Formula, v: int) -> bool:
    if not is_22(f, v):
        return False
    return all(is_22(f, l) for z in (v, -v) for l in _others(f, z))


def is_skewed(f: Formula, v: int) -> bool:
    if not is_22(f, v):
        return False
    for z in (v, -v):
        if all(is_singleton(f, l) for l in _others(f, z)) and all(
            is_22(f, l) for l in _others(f, -z)
        ):
            return True
    return False


def profile(f: Formula, v: int) -> VariableProfile:
    if v <= 0:
        raise ValueError("variables are positive integers")
    i, j = f.count(v), f.count(-v)
    if i + j == 0:
        raise KeyError("variable %d does not occur" % v)
    if i == 0 or j == 0:
        kind = "pure"
    elif i + j >= 6:
        kind = "high-degree"
    elif i == 2 and j == 2:
        if is_evened(f, v):
            kind = "(2,2)-evened"
        elif is_skewed(f, v):
            kind = "(2,2)-skewed"
        else:
            kind = "(2,2)-other"
    elif j == 1 or i == 1:
        single = (j == 1 and is_singleton(f, v)) or (i == 1 and is_singleton(f, -v))
        kind = "(i,1)-singleton" if single else "(i,1)-nonsingleton"
    else:
        kind = "other"
    return VariableProfile(v, i, j, kind)


def normalize_simplified(f: Formula):
    """Return ``(normalized, flipped)`` if ``f`` is simplified, else ``None``.

    Simplified means: every variable is a (3,1)- or (4,1)-singleton whose
    majority literal occurs only in non-unit clauses, and every non-unit
    clause has at least four literals.  ``normalized`` renames polarities
    so each variable's majority literal is positive; ``flipped`` lists the
    variables whose polarity was exchanged.
    """
    for c in f:
        if 1 < len(c) < 4:
            return None
    flipped = []
    for v in f.variables():
        i, j = f.count(v), f.count(-v)
        if j == 1 and i in (3, 4):
            z = v
        elif i == 1 and j in (3, 4):
            z = -v
            flipped.append(v)
        else:
            return None
        if not is_singleton(f, z):
            return None
        if any(len(f.clause(cid)) == 1 for cid in f.occurrences(z)):
            return None
    if not flipped:
        return f, frozenset()
    fl = set(flipped)
    remapped = {cid: [(-l if abs(l) in fl else l) for l in c] for cid, c in f.items()}
    return Formula.from_map(remapped), frozenset(fl)


def is_simplified(f: Formula) -> bool:
    return normalize_simplified(f) is not None


def unflip(sigma: Mapping[int, int], flipped: Iterable[int]) -> Assignment:
    out = dict(sigma)
    for v in flipped:
        if v in out:
            out[v] = 1 - out[v]
    return out
