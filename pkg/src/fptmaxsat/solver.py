"""The search driver: reduce, settle small or simplified instances, else branch."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .analysis import AuditRecord, branching_root
from .branch import BranchingStep, b2_forcing, dispatch
from .formula import Assignment, Formula, Instance, complete, is_simplified, satisfied_count
from .kernel import kernelize
from .reduce import apply_rrules, reverse_replay
from .simplified import solve_simplified

RHO_61 = branching_root((6, 1))
RULE_NAMES = ["R%d" % i for i in range(1, 8)] + ["K"] + ["B%d" % i for i in range(1, 15)]
LEAF_KINDS = ["k<=1", "kernel", "simplified-threshold", "simplified-setcover"]


class VerificationError(RuntimeError):
    """A Yes certificate failed to satisfy k clauses of the input."""


@dataclass
class Outcome:
    yes: bool
    certificate: Optional[Assignment] = None

    def __bool__(self) -> bool:
        return self.yes


@dataclass
class SolverStats:
    nodes: int = 0
    max_depth: int = 0
    rules: Counter = field(default_factory=Counter)
    leaves: Counter = field(default_factory=Counter)

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "max_depth": self.max_depth,
            "rules": {r: self.rules[r] for r in RULE_NAMES},
            "leaves": {l: self.leaves[l] for l in LEAF_KINDS},
        }


@dataclass
class _Node:
    kind: str  # "yes", "no", "simplified", "branch"
    instance: Instance  # after reduction
    trace: list
    certificate: Optional[Assignment] = None  # on the reduced formula, for settled nodes
    leaf: str = ""
    step: Optional[BranchingStep] = None
    children: Optional[List["_Node"]] = None
    vector: Optional[List[int]] = None  # effective decreases
    measured_k: Optional[int] = None  # k after a full reduction phase, for the audit

    @property
    def eff_k(self) -> int:
        return self.instance.k if self.measured_k is None else self.measured_k


class Solver:
    """Decides ``maxsat(F) >= k``.

    ``b2`` picks the 3-variable strategy; ``on_branch(instance, step)`` is
    called at every expanded branching node; ``tracer`` receives one text
    line per reduction or branching event.
    """

    def __init__(
        self,
        b2=b2_forcing,
        on_branch: Optional[Callable] = None,
        tracer: Optional[Callable[[str], None]] = None,
        audit: bool = True,
        verify: bool = True,
    ):
        self.b2 = b2
        self.on_branch = on_branch
        self.tracer = tracer
        self.audit = audit
        self.verify = verify
        self.stats = SolverStats()
        self.records: List[AuditRecord] = []

    # -- public ------------------------------------------------------------

    def solve(self, inst: Instance) -> Outcome:
        f = inst.formula
        if inst.k <= 0:
            return Outcome(True, complete({}, f.variables()))
        ko = kernelize(inst)
        self._log_trace(ko.trace, 0)
        if ko.solved:
            self.stats.leaves["kernel"] += 1
            sigma = ko.certificate
        else:
            sigma = self._search(self._prepare(ko.instance, 0), 0)
            if sigma is not None:
                sigma = reverse_replay(ko.trace, complete(sigma, ko.instance.formula.variables()))
        if sigma is None:
            return Outcome(False)
        sigma = complete(sigma, f.variables())
        if self.verify and satisfied_count(f, sigma) < inst.k:
            raise VerificationError("certificate satisfies %d < %d clauses" % (satisfied_count(f, sigma), inst.k))
        return Outcome(True, sigma)

    # -- internals ---------------------------------------------------------

    def _log_trace(self, trace, depth):
        for e in trace:
            self.stats.rules[e.rule] += 1
            if self.tracer:
                self.tracer("%d %s" % (depth, e.to_line()))

    def _settled(self, inst: Instance, trace) -> _Node:
        node = _Node("yes", inst, trace, {}, "k<=1")
        if self.audit:
            # finish the reduction phase so the audit sees the full decrease
            node.measured_k = apply_rrules(inst, stop_at_zero=False).instance.k
        return node

    def _prepare(self, inst: Instance, depth: int) -> _Node:
        """Reduce ``inst`` and classify the result."""
        if inst.k <= 0:
            return self._settled(inst, [])
        red = apply_rrules(inst)
        self._log_trace(red.trace, depth)
        if red.solved:
            node = _Node("yes", red.instance, red.trace, red.certificate, "kernel")
            if self.audit:
                # the kernel cut the reduction phase short; measure it without the kernel
                node.measured_k = apply_rrules(inst, size_factor=None, stop_at_zero=False).instance.k
            return node
        cur = red.instance
        f, k = cur.formula, cur.k
        if k <= 0:
            return self._settled(cur, red.trace)
        if k == 1:
            if f.m == 0:
                return _Node("no", cur, red.trace, leaf="k<=1")
            lit = next(iter(f))[0]
            return _Node("yes", cur, red.trace, {abs(lit): int(lit > 0)}, "k<=1")
        if is_simplified(f):
            return _Node("simplified", cur, red.trace)
        return _Node("branch", cur, red.trace)

    def _lift(self, node: _Node, sigma: Assignment) -> Assignment:
        sigma = complete(sigma, node.instance.formula.variables())
        if node.kind == "yes" and node.leaf == "kernel":
            return sigma  # apply_rrules already lifted it
        return reverse_replay(node.trace, sigma)

    def _expand(self, node: _Node, depth: int) -> None:
        if node.children is not None:
            return
        step = dispatch(node.instance, self.b2)
        if step is None:
            raise RuntimeError("irreducible, non-simplified instance with no applicable branching rule")
        node.step = step
        node.children = [self._prepare(b.instance, depth + 1) for b in step.branches]
        k = node.instance.k
        node.vector = [k - c.eff_k for c in node.children]
        if min(node.vector) < 1:
            raise RuntimeError("%s produced a child without parameter decrease" % step.rule)

    def _record(self, node: _Node, depth: int) -> None:
        step = node.step
        vector = list(node.vector)
        note = ""
        if step.rule == "B13":
            cumulative = []
            for i, (d, child) in enumerate(zip(node.vector, node.children)):
                if i in (0, 2) and child.kind == "branch":
                    self._expand(child, depth + 1)
                    cumulative.extend(d + g for g in child.vector)
                    if child.step.rule == "B2" and branching_root(child.vector) > RHO_61 + 1e-9:
                        note = "b2-fallback"
                else:
                    cumulative.append(d)
            vector = cumulative
        self.records.append(
            AuditRecord(step.rule, node.instance.k, vector, step.vector, dict(step.bindings), note)
        )

    def _search(self, node: _Node, depth: int) -> Optional[Assignment]:
        """Certificate on ``node``'s input formula, or None."""
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if node.kind == "yes":
            self.stats.leaves[node.leaf] += 1
            return self._lift(node, node.certificate)
        if node.kind == "no":
            self.stats.leaves[node.leaf] += 1
            return None
        if node.kind == "simplified":
            res = solve_simplified(node.instance.formula, node.instance.k)
            self.stats.leaves["simplified-" + res.route] += 1
            return self._lift(node, res.certificate) if res.yes else None
        self._expand(node, depth)
        step = node.step
        self.stats.rules[step.rule] += 1
        if self.audit:
            self._record(node, depth)
        if self.on_branch:
            self.on_branch(node.instance, step)
        if self.tracer:
            self.tracer("%d %s dk=%s eff=%s" % (
                depth, step.rule, ",".join(map(str, step.vector)), ",".join(map(str, node.vector))))
        result = None
        for branch, child in zip(step.branches, node.children):
            sigma = self._search(child, depth + 1)
            if sigma is not None:
                sigma = complete(sigma, branch.instance.formula.variables())
                for l in branch.literals:
                    sigma[abs(l)] = int(l > 0)
                result = self._lift(node, sigma)
                break
        node.children = None  # release the subtree
        return result


def solve(inst: Instance, **kw) -> Outcome:
    return Solver(**kw).solve(inst)


def decide(f: Formula, k: int, **kw) -> bool:
    return Solver(**kw).solve(Instance(f, k)).yes


def maximize(f: Formula, solver_factory: Callable[[], Solver] = Solver):
    """Largest k with a Yes answer, by binary search over [ceil(m/2), m].

    Returns ``(k, certificate)``.
    """
    lo, hi = (f.m + 1) // 2, f.m
    best = solver_factory().solve(Instance(f, lo))
    if not best.yes:
        raise VerificationError("majority bound violated")
    while lo < hi:
        mid = (lo + hi + 1) // 2
        out = solver_factory().solve(Instance(f, mid))
        if out.yes:
            lo, best = mid, out
        else:
            hi = mid - 1
    return lo, best.certificate
