"""Kernelization: at most 2k-1 clauses, each of size at most k-1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .formula import Assignment, Formula, Instance, clause_satisfied, complete, lit_value, satisfied_count
from .trace import Trace, TraceEntry


def _false_prob(c, sigma, p_true: Fraction) -> Fraction:
    """Probability that clause ``c`` ends up false when every unassigned
    variable is set to 1 independently with probability ``p_true``."""
    free = []
    for l in c:
        val = lit_value(l, sigma)
        if val == 1:
            return Fraction(0)
        if val is None:
            free.append(l)
    seen = set(free)
    if any(-l in seen for l in seen):
        return Fraction(0)
    prob = Fraction(1)
    for l in seen:
        prob *= (1 - p_true) if l > 0 else p_true
    return prob


def conditional_expectation(f: Formula, sigma, p_true: Fraction) -> Fraction:
    return sum((1 - _false_prob(c, sigma, p_true) for c in f), Fraction(0))


def derandomize(f: Formula, p_true: Fraction) -> Assignment:
    """Method of conditional expectations over ascending variables (ties -> 0)."""
    sigma: Assignment = {}
    for v in f.variables():
        touching = [f.clause(cid) for cid in sorted(set(f.occurrences(v)) | set(f.occurrences(-v)))]
        sigma[v] = 0
        e0 = sum((1 - _false_prob(c, sigma, p_true) for c in touching), Fraction(0))
        sigma[v] = 1
        e1 = sum((1 - _false_prob(c, sigma, p_true) for c in touching), Fraction(0))
        sigma[v] = 1 if e1 > e0 else 0
    return sigma


def majority_witness(f: Formula) -> Assignment:
    """A total assignment satisfying at least ceil(m/2) clauses."""
    return derandomize(f, Fraction(1, 2))


@dataclass
class KernelOutcome:
    instance: Optional[Instance] = None
    trace: Trace = field(default_factory=list)
    certificate: Optional[Assignment] = None  # set when solved outright

    @property
    def solved(self) -> bool:
        return self.certificate is not None


def kernelize(inst: Instance) -> KernelOutcome:
    f, k = inst.formula, inst.k
    trace: Trace = []
    while True:
        if f.m >= 2 * k:
            sigma = majority_witness(f)
            return KernelOutcome(certificate=lift_trace(trace, sigma))
        big = next((cid for cid, c in f.items() if len(c) >= k), None)
        if big is None:
            return KernelOutcome(instance=Instance(f, k), trace=trace)
        g, _ = f.replace([big])
        trace.append(TraceEntry("K", 1, f, k, removed=(big,), bindings={"size": len(f.clause(big))}))
        f, k = g, k - 1


def kernel_bound_holds(inst: Instance) -> bool:
    f, k = inst.formula, inst.k
    return f.m < 2 * k and all(len(c) <= k - 1 for c in f) and f.size <= 2 * k * (k - 1)


def lift_big_clause(entry: TraceEntry, sigma: Assignment) -> Assignment:
    """Turn an assignment for F minus C satisfying k-1 clauses into one
    satisfying k clauses of F.

    If C is unsatisfied, at most k-1 satisfied clauses each pin down the
    variable of their only true literal; C has at least k variables, so
    one of them is free to flip.
    """
    f, k = entry.before, entry.k_before
    (cid,) = entry.removed
    big = f.clause(cid)
    sigma = complete(sigma, f.variables())
    rest = [c for i, c in f.items() if i != cid]
    sat = [c for c in rest if clause_satisfied(c, sigma)]
    if len(sat) < k - 1:
        raise ValueError("assignment satisfies %d < k-1 = %d clauses" % (len(sat), k - 1))
    if clause_satisfied(big, sigma) or len(sat) >= k:
        return sigma
    pinned = set()
    for c in sat:
        true_lits = [l for l in c if lit_value(l, sigma) == 1]
        if len(true_lits) == 1:
            pinned.add(abs(true_lits[0]))
    for l in big:
        if abs(l) not in pinned:
            out = dict(sigma)
            out[abs(l)] = 1 if l > 0 else 0
            return out
    raise ValueError("no free variable in the removed clause")  # excluded by |C| >= k


def lift_trace(trace: Trace, sigma: Assignment) -> Assignment:
    """Lift through kernel entries only (see ``reduce.reverse_replay``)."""
    from .reduce import reverse_replay

    return reverse_replay(trace, sigma)


def check_certificate(f: Formula, sigma: Assignment, k: int) -> bool:
    return satisfied_count(f, sigma) >= k
