"""Endgame for simplified instances: derandomized assignment or set cover.

A simplified formula (after polarity normalization) has one unit clause
``(-x)`` per variable and all other clauses made of at least four positive
literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .formula import Assignment, Formula, normalize_simplified, unflip
from .kernel import conditional_expectation, derandomize
from .setcover import CoverStats, SetCoverInstance, min_set_cover


@dataclass(frozen=True)
class DerandomizerConfig:
    p: Fraction = Fraction(1795, 10000)
    coeff: Fraction = Fraction(1829, 1000)

    def __post_init__(self):
        p, c = Fraction(self.p), Fraction(self.coeff)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeff", c)
        if not 0 < p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if c * (1 - (1 - p) ** 4) < 1:
            raise ValueError("coeff * (1 - (1-p)^4) must be at least 1")


DEFAULT = DerandomizerConfig()


def _require_normalized(f: Formula) -> None:
    res = normalize_simplified(f)
    if res is None:
        raise ValueError("formula is not simplified")
    if res[1]:
        raise ValueError("formula is simplified but not polarity-normalized")


def threshold_check(f: Formula, k: int, cfg: DerandomizerConfig = DEFAULT) -> bool:
    """m + n/2 >= coeff * k, compared exactly."""
    _require_normalized(f)
    return Fraction(2 * f.m + f.n, 2) >= cfg.coeff * k


def expected_satisfied(f: Formula, sigma: Optional[Assignment] = None, p=DEFAULT.p) -> Fraction:
    """Expected satisfied clauses when unassigned variables are 1 with probability p."""
    return conditional_expectation(f, dict(sigma or {}), Fraction(p))


def derandomized_assignment(f: Formula, k: int, cfg: DerandomizerConfig = DEFAULT) -> Assignment:
    if not threshold_check(f, k, cfg):
        raise ValueError("m + n/2 < %s k; no guarantee" % cfg.coeff)
    return derandomize(f, cfg.p)


def to_set_cover(f: Formula) -> SetCoverInstance:
    """Elements are non-unit clause ids; variable x owns the clauses holding x."""
    _require_normalized(f)
    universe = [cid for cid, c in f.items() if len(c) > 1]
    sets = [(v, [cid for cid in f.occurrences(v)]) for v in f.variables()]
    return SetCoverInstance.build(universe, sets)


def cover_to_assignment(f: Formula, cover: Iterable[int]) -> Assignment:
    inst = to_set_cover(f)
    cover = set(cover)
    if not inst.covers(cover):
        raise ValueError("not a set cover")
    return {v: int(v in cover) for v in f.variables()}


@dataclass
class SimplifiedResult:
    yes: bool
    certificate: Optional[Assignment]
    route: str  # "threshold" or "setcover"
    t_min: Optional[int] = None
    exponent: Fraction = Fraction(0)  # 0.6(m-n) + 0.9n
    cover_nodes: int = 0


def solve_simplified(f: Formula, k: int, cfg: DerandomizerConfig = DEFAULT) -> SimplifiedResult:
    """Decide (f, k) for a simplified formula of either polarity."""
    res = normalize_simplified(f)
    if res is None:
        raise ValueError("formula is not simplified")
    g, flipped = res
    m, n = g.m, g.n
    exponent = Fraction(6, 10) * (m - n) + Fraction(9, 10) * n
    if threshold_check(g, k, cfg):
        sigma = unflip(derandomized_assignment(g, k, cfg), flipped)
        return SimplifiedResult(True, sigma, "threshold", exponent=exponent)
    stats = CoverStats()
    cover = min_set_cover(to_set_cover(g), stats)
    t_min = len(cover)
    sigma = unflip(cover_to_assignment(g, cover), flipped)
    yes = m - t_min >= k
    return SimplifiedResult(yes, sigma if yes else None, "setcover", t_min, exponent, stats.nodes)
