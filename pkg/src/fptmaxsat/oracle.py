"""Exhaustive maxsat, the ground truth for every property test."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .formula import Assignment, Formula

MAX_VARS = 26
_CHUNK_BITS = 18


@lru_cache(maxsize=32)
def _bit_table(nbits: int) -> np.ndarray:
    # row a holds the binary digits of a, most significant first
    idx = np.arange(1 << nbits, dtype=np.int64)
    shifts = np.arange(nbits - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(bool)


def brute_maxsat(f: Formula) -> tuple[int, Assignment]:
    """Maximum number of simultaneously satisfiable clauses, by enumeration.

    Assignments are enumerated in lexicographic order over the sorted
    variables (first variable most significant, 0 before 1); the witness is
    the first maximizer in that order.
    """
    variables = f.variables()
    n = len(variables)
    if n > MAX_VARS:
        raise ValueError("brute force limited to %d variables, got %d" % (MAX_VARS, n))
    if n == 0:
        return 0, {}
    col = {v: i for i, v in enumerate(variables)}
    clauses = [[(col[abs(l)], l > 0) for l in c] for c in f]

    low = min(n, _CHUNK_BITS)
    high = n - low
    table = _bit_table(low)
    best, best_idx = -1, 0
    for hi in range(1 << high):
        hi_bits = [(hi >> (high - 1 - b)) & 1 for b in range(high)]
        counts = np.zeros(1 << low, dtype=np.int32)
        for c in clauses:
            sat = np.zeros(1 << low, dtype=bool)
            const = False
            for i, pos in c:
                if i < high:
                    if bool(hi_bits[i]) == pos:
                        const = True
                        break
                else:
                    column = table[:, i - high]
                    sat |= column if pos else ~column
            if const:
                counts += 1
            else:
                counts += sat
        j = int(np.argmax(counts))
        if counts[j] > best:
            best = int(counts[j])
            best_idx = (hi << low) | j
    sigma = {v: (best_idx >> (n - 1 - i)) & 1 for i, v in enumerate(variables)}
    return best, sigma


def maxsat_value(f: Formula) -> int:
    return brute_maxsat(f)[0]


def brute_decide(f: Formula, k: int) -> bool:
    return k <= 0 or brute_maxsat(f)[0] >= k
