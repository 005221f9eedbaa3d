"""Firing collection shared by the unit tests and the acceptance suite."""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List

from fptmaxsat.branch import BRULES, BranchingStep, PatternError, b2_forcing, dispatch
from fptmaxsat.formula import Formula, Instance, is_simplified
from fptmaxsat.generators import instance_stream, kernel_instance
from fptmaxsat.oracle import maxsat_value
from fptmaxsat.reduce import apply_rrules
from fptmaxsat.setcover import SetCoverInstance
from fptmaxsat.trace import replay_forward

R_RULES = ["R%d" % i for i in range(1, 8)] + ["K"]
B_RULES = ["B%d" % i for i in range(1, 15)]


@dataclass
class RFiring:
    rule: str
    before: Formula
    after: Formula
    dk: int


@dataclass
class BFiring:
    instance: Instance
    step: BranchingStep
    ordered: bool  # chosen by the dispatcher, not just matched


def rrule_firings(seed: int, per_rule: int, max_vars: int = 14, max_draws: int = 200000) -> Dict[str, List[RFiring]]:
    from fptmaxsat.kernel import kernelize

    rng = random.Random(seed)
    out: Dict[str, List[RFiring]] = defaultdict(list)
    for draw, inst in enumerate(instance_stream(rng)):
        if draw >= max_draws or all(len(out[r]) >= per_rule for r in R_RULES):
            break
        trace = apply_rrules(inst).trace
        if len(out["K"]) < per_rule:
            # big-clause removals from both a dedicated family and low-k mixed formulas
            low = Instance(inst.formula, rng.randint(1, inst.formula.m // 2 + 1))
            trace = trace + kernelize(kernel_instance(rng)).trace + kernelize(low).trace
        for e in trace:
            if e.before.n > max_vars or len(out[e.rule]) >= per_rule:
                continue
            after, _ = replay_forward(e.before, e.k_before, [e])
            out[e.rule].append(RFiring(e.rule, e.before, after, e.dk))
    return out


def _matches(inst: Instance):
    chosen = dispatch(inst)
    for name, rule in BRULES:
        try:
            step = (rule or b2_forcing)(inst)
        except PatternError:
            continue  # matched outside the rule's place in the order
        if step is not None:
            yield BFiring(inst, step, chosen is not None and chosen.rule == name)


def brule_firings(seed: int, per_rule: int, max_vars: int = 14, max_draws: int = 200000) -> Dict[str, List[BFiring]]:
    """Rule matches on irreducible, non-simplified instances."""
    rng = random.Random(seed)
    out: Dict[str, List[BFiring]] = defaultdict(list)
    for draw, inst in enumerate(instance_stream(rng)):
        if draw >= max_draws or all(len(out[r]) >= per_rule for r in B_RULES):
            break
        red = apply_rrules(inst)
        cur = red.instance
        if red.solved or cur.k <= 1 or cur.formula.n > max_vars or is_simplified(cur.formula):
            continue
        for fr in _matches(cur):
            if len(out[fr.step.rule]) < per_rule:
                out[fr.step.rule].append(fr)
    return out


def check_rfiring(fr: RFiring) -> bool:
    return maxsat_value(fr.before) - maxsat_value(fr.after) == fr.dk


def check_bfiring(fr: BFiring) -> bool:
    """maxsat(F) = max over branches of maxsat(F_i) + d_i."""
    best = max(maxsat_value(b.instance.formula) + b.dk for b in fr.step.branches)
    return best == maxsat_value(fr.instance.formula)


def random_cover_instance(rng: random.Random, max_universe: int = 12, max_sets: int = 20, max_size: int = 4) -> SetCoverInstance:
    u = list(range(rng.randint(1, max_universe)))
    sets = []
    for o in range(rng.randint(1, max_sets)):
        sets.append((o, rng.sample(u, rng.randint(1, min(max_size, len(u))))))
    covered = set().union(*(s for _, s in sets))
    for e in u:  # patch uncovered elements into a random set
        if e not in covered:
            o, s = rng.choice(sets)
            s.append(e)
    return SetCoverInstance.build(u, sets)
