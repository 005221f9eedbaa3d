"""Random instance families for tests and benchmarks.

All generators take a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Iterator, List, Sequence, Tuple

from .formula import Formula, Instance

MIXED_PROFILES = [(4, 1), (3, 1), (2, 2), (2, 2), (2, 2), (3, 1), (4, 1), (2, 1), (3, 2), (1, 1)]


def random_cnf(rng: random.Random, n: int, m: int, max_size: int = 5, dup_p: float = 0.1) -> Formula:
    """Uniform clauses of size 1..max_size; some clauses repeat earlier ones."""
    clauses: List[List[int]] = []
    for _ in range(m):
        if clauses and rng.random() < dup_p:
            clauses.append(list(rng.choice(clauses)))
            continue
        size = rng.randint(1, max_size)
        clauses.append([rng.choice((1, -1)) * rng.randint(1, n) for _ in range(size)])
    return Formula(clauses)


def _pack(rng: random.Random, slots: List[int], sizes: Sequence[int]) -> List[List[int]]:
    """Cut a literal multiset into clauses without repeating a variable."""
    pool = list(slots)
    rng.shuffle(pool)
    out = []
    while pool:
        size = rng.choice(sizes)
        c, rest = [], []
        for l in pool:
            if len(c) < size and all(abs(x) != abs(l) for x in c):
                c.append(l)
            else:
                rest.append(l)
        out.append(c)
        pool = rest
    return out


def profiled_cnf(rng: random.Random, n: int, unit_p: float = 0.5, profiles=MIXED_PROFILES,
                 sizes=(2, 2, 3, 3, 4, 4, 5)) -> Formula:
    """Variables with prescribed (i,j) occurrence counts.

    A lone occurrence is placed in a unit clause with probability
    ``unit_p``, which makes its opposite literal a singleton.
    """
    slots, units = [], []
    for v in range(1, n + 1):
        i, j = rng.choice(profiles)
        if rng.random() < 0.5:
            i, j = j, i
        pos, neg = [v] * i, [-v] * j
        if j == 1 and i > 1 and rng.random() < unit_p:
            units.append([-v])
            neg = []
        elif i == 1 and j > 1 and rng.random() < unit_p:
            units.append([v])
            pos = []
        slots += pos + neg
    return Formula(_pack(rng, slots, sizes) + units)


def late_cnf(rng: random.Random, n22: int, nsing: int, sizes=(2, 3, 3, 4)) -> Formula:
    """(2,2)-variables mixed with (3,1)/(4,1)-singletons and their unit clauses.

    This is the shape left once the early branching rules stop applying.
    """
    n = n22 + nsing
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    slots, units = [], []
    for v in perm[:n22]:
        slots += [v, v, -v, -v]
    for v in perm[n22:]:
        z = v if rng.random() < 0.5 else -v
        slots += [z] * rng.choice((3, 4))
        units.append([-z])
    return Formula(_pack(rng, slots, sizes) + units)


def simplified_cnf(rng: random.Random, n: int, flip_p: float = 0.0, sizes=(4, 4, 5, 6)) -> Formula:
    """A simplified formula: (3,1)/(4,1)-singletons, non-unit clauses of size >= 4.

    Retries until the packing yields no short clause.  ``flip_p`` renames
    polarities at random.
    """
    if n < 4:
        raise ValueError("need at least four variables")
    while True:
        slots = []
        for v in range(1, n + 1):
            slots += [v] * rng.choice((3, 4))
        clauses = _pack(rng, slots, sizes)
        if all(len(c) >= 4 for c in clauses):
            break
    clauses += [[-v] for v in range(1, n + 1)]
    flips = {v for v in range(1, n + 1) if rng.random() < flip_p}
    return Formula([[-l if abs(l) in flips else l for l in c] for c in clauses])


def mixed_instances(rng: random.Random) -> Iterator[Formula]:
    """An endless stream cycling through the families above."""
    while True:
        yield random_cnf(rng, rng.randint(1, 10), rng.randint(1, 20))
        yield profiled_cnf(rng, rng.randint(4, 12), unit_p=rng.random())
        yield late_cnf(rng, rng.randint(2, 8), rng.randint(0, 6))
        yield late_cnf(rng, rng.randint(1, 4), rng.randint(3, 8), sizes=(3, 3, 4))
        yield late_cnf(rng, rng.randint(2, 5), rng.randint(3, 7), sizes=(2, 3, 3))


def upper_half_k(rng: random.Random, f: Formula) -> int:
    """A parameter above the majority bound, where the kernel cannot answer."""
    return rng.randint((f.m + 1) // 2, max(f.m, 1))


def instance_stream(rng: random.Random) -> Iterator[Instance]:
    for f in mixed_instances(rng):
        yield Instance(f, upper_half_k(rng, f))


def kernel_instance(rng: random.Random) -> Instance:
    """Few clauses (m < 2k), some of size >= k: the big-clause rule fires."""
    k = rng.randint(2, 6)
    f = random_cnf(rng, rng.randint(3, 12), rng.randint(k, 2 * k - 1), max_size=k + 2, dup_p=0.05)
    return Instance(f, k)


def hard_instance(rng: random.Random, k: int, tries: int = 2000) -> Tuple[Formula, int]:
    """A No-instance with optimum exactly k-1.

    Balanced (4,4)-variables packed into 2-clauses leave the reduction
    rules little to do, and answering No forces the whole tree to be
    explored.
    """
    from .solver import maximize

    for _ in range(tries):
        n = max(2, round(k / 3.5) + rng.randint(-1, 1))
        f = profiled_cnf(rng, n, unit_p=0, profiles=[(4, 4), (3, 3)], sizes=(2, 2, 3))
        if maximize(f)[0] == k - 1:
            return f, k
    raise RuntimeError("no formula with optimum %d found" % (k - 1))
