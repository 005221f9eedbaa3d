"""Exact minimum set cover for the small instances left by simplified formulas."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Tuple

BRUTE_LIMIT = 20


@dataclass(frozen=True)
class SetCoverInstance:
    universe: FrozenSet[int]
    sets: Tuple[Tuple[int, FrozenSet[int]], ...]  # (owner id, elements)

    @classmethod
    def build(cls, universe, sets) -> "SetCoverInstance":
        return cls(frozenset(universe), tuple((o, frozenset(s)) for o, s in sets))

    def covers(self, owners) -> bool:
        chosen = set(owners)
        got = set()
        for o, s in self.sets:
            if o in chosen:
                got |= s
        return self.universe <= got

    def coverable(self) -> bool:
        got = set()
        for _, s in self.sets:
            got |= s
        return self.universe <= got


@dataclass
class CoverStats:
    nodes: int = 0
    forced: int = 0
    dominated: int = 0


def _reduce(universe, sets, chosen, stats):
    """Apply unique-element and subset rules to a fixpoint."""
    while True:
        sets = [(o, s & universe) for o, s in sets]
        sets = [(o, s) for o, s in sets if s]
        if not universe:
            return universe, [], chosen
        # element covered by exactly one set -> that set is forced
        owner_of = {}
        multi = set()
        for o, s in sets:
            for e in s:
                if e in owner_of:
                    multi.add(e)
                else:
                    owner_of[e] = o
        missing = [e for e in universe if e not in owner_of]
        if missing:
            raise ValueError("element %r cannot be covered" % missing[0])
        unique = sorted(owner_of[e] for e in universe if e not in multi)
        if unique:
            o = unique[0]
            s = next(s for oo, s in sets if oo == o)
            stats.forced += 1
            chosen = chosen + (o,)
            universe = universe - s
            sets = [(oo, ss) for oo, ss in sets if oo != o]
            continue
        # a set inside another set is never needed
        drop = None
        for a in range(len(sets)):
            oa, sa = sets[a]
            for b in range(len(sets)):
                if a == b:
                    continue
                ob, sb = sets[b]
                if sa < sb or (sa == sb and oa > ob):
                    drop = a
                    break
            if drop is not None:
                break
        if drop is None:
            return universe, sets, chosen
        stats.dominated += 1
        sets = sets[:drop] + sets[drop + 1:]


def min_set_cover(inst: SetCoverInstance, stats: CoverStats | None = None) -> FrozenSet[int]:
    """Owner ids of a minimum-cardinality cover.

    Reduces to a fixpoint, then branches on a largest set (lowest owner id
    on ties): take it, or discard it.  Among equal-size covers the
    take-branch wins.
    """
    if stats is None:
        stats = CoverStats()
    if not inst.coverable():
        raise ValueError("universe is not covered by the union of the sets")
    best: List = [None]

    def search(universe, sets, chosen):
        stats.nodes += 1
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        universe, sets, chosen = _reduce(universe, sets, chosen, stats)
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        if not universe:
            best[0] = chosen
            return
        # at least one more set per ceil(|U| / largest) elements
        largest = max(len(s) for _, s in sets)
        if best[0] is not None and len(chosen) + -(-len(universe) // largest) >= len(best[0]):
            return
        o, s = min(sets, key=lambda t: (-len(t[1]), t[0]))
        rest = [(oo, ss) for oo, ss in sets if oo != o]
        search(universe - s, rest, chosen + (o,))
        try:
            search(universe, rest, chosen)
        except ValueError:
            pass  # discarding o leaves an element uncovered

    search(inst.universe, list(inst.sets), ())
    return frozenset(best[0])


def brute_min_cover(inst: SetCoverInstance) -> FrozenSet[int]:
    """Smallest cover by exhaustive search, lexicographically first by owner."""
    if len(inst.sets) > BRUTE_LIMIT:
        raise ValueError("brute force limited to %d sets" % BRUTE_LIMIT)
    if not inst.coverable():
        raise ValueError("universe is not covered by the union of the sets")
    owners = sorted(o for o, _ in inst.sets)
    for r in range(len(owners) + 1):
        for combo in combinations(owners, r):
            if inst.covers(combo):
                return frozenset(combo)
    raise AssertionError("unreachable")
