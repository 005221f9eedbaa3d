"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (``REPORT`` for the
growth smoke test) outside pytest's capture, so the lines show up in a
plain ``pytest -v`` log.
"""

import random
from collections import Counter
from fractions import Fraction

import pytest

from fptmaxsat.analysis import audit_trace, branching_root, growth_factor
from fptmaxsat.formula import Instance, normalize_simplified, satisfied_count, unflip
from fptmaxsat.generators import hard_instance, instance_stream, kernel_instance, random_cnf, simplified_cnf
from fptmaxsat.kernel import kernel_bound_holds, kernelize
from fptmaxsat.oracle import brute_maxsat
from fptmaxsat.setcover import brute_min_cover, min_set_cover
from fptmaxsat.simplified import derandomized_assignment, threshold_check, to_set_cover
from fptmaxsat.solver import Solver
from helpers import B_RULES, R_RULES, brule_firings, check_bfiring, check_rfiring, random_cover_instance, rrule_firings

PER_RULE = 500


@pytest.fixture
def verdict(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print("\n[criterion %s] %s: %s" % (num, "PASS" if ok else "FAIL", detail))
        assert ok, detail

    return emit


def _corpus(seed=2024, count=2000):
    """n <= 12, m <= 24, clause sizes 1-5, ~10% repeated clauses."""
    rng = random.Random(seed)
    return [random_cnf(rng, rng.randint(1, 12), rng.randint(1, 24), max_size=5, dup_p=0.1) for _ in range(count)]


@pytest.fixture(scope="module")
def sweep():
    solver = Solver()
    corpus = _corpus()
    mismatches, bad_certs, solves = [], [], 0
    for f in corpus:
        best, _ = brute_maxsat(f)
        for k in range(0, f.m + 1):
            out = solver.solve(Instance(f, k))
            solves += 1
            if out.yes != (best >= k):
                mismatches.append((f.to_lists(), k, best))
            elif out.yes and satisfied_count(f, {v: out.certificate.get(v, 0) for v in f.variables()}) < k:
                bad_certs.append((f.to_lists(), k))
    return {"corpus": corpus, "solver": solver, "solves": solves,
            "mismatches": mismatches, "bad_certs": bad_certs}


def test_oracle_equivalence(sweep, verdict):
    dups = sum(1 for f in sweep["corpus"] if len(set(f)) < f.m)
    ok = not sweep["mismatches"] and not sweep["bad_certs"] and len(sweep["corpus"]) >= 2000
    verdict(1, ok, "%d instances (%d with duplicate clauses), %d solves, %d mismatches, %d bad certificates"
            % (len(sweep["corpus"]), dups, sweep["solves"], len(sweep["mismatches"]), len(sweep["bad_certs"])))


def test_rule_safety(verdict):
    rf = rrule_firings(0, PER_RULE)
    bf = brule_firings(0, PER_RULE)
    parts, ok = [], True
    for rule in R_RULES:
        n = len(rf[rule])
        good = sum(map(check_rfiring, rf[rule]))
        ok &= n >= PER_RULE and good == n
        parts.append("%s %d/%d" % (rule, good, n))
    for rule in B_RULES:
        n = len(bf[rule])
        good = sum(map(check_bfiring, bf[rule]))
        ordered = sum(fr.ordered for fr in bf[rule])
        ok &= n >= PER_RULE and good == n
        parts.append("%s %d/%d (dispatch-chosen %d)" % (rule, good, n, ordered))
    verdict(2, ok, "; ".join(parts))


CONSTANTS = [((3, 2), 1.3248), ((6, 1), 1.2852), ((4, 2), 1.2721), ((3, 3), 1.2600),
             ((10, 5, 6, 10, 5, 6), 1.3204)]
IDENTITIES = [(5, 1), (8, 4, 2), (6, 5, 2), (5, 4, 3)]


def test_branching_constants(verdict):
    parts, ok = [], True
    for vec, printed in CONSTANTS:
        r = branching_root(vec)
        ok &= abs(r - printed) <= 5e-4
        parts.append("rho%s=%.6f" % (vec, r))
    base = branching_root((3, 2))
    for vec in IDENTITIES:
        r = branching_root(vec)
        ok &= abs(r - base) <= 1e-6
        parts.append("|rho%s-rho(3,2)|=%.1e" % (vec, abs(r - base)))
    verdict(3, ok, "; ".join(parts))


def test_branching_audit(sweep, verdict):
    records = list(sweep["solver"].records)
    extra = Solver()
    rng = random.Random(7)
    stream = instance_stream(rng)
    for _ in range(5000):
        extra.solve(next(stream))
    for k in range(10, 31):
        f, k = hard_instance(random.Random(k), k)
        extra.solve(Instance(f, k))
    records += extra.records
    report = audit_trace(records)
    rules = Counter(r.rule for r in records)
    b2 = ", ".join("(%s)x%d" % kv for kv in sorted(report.b2_vectors.items(), key=lambda kv: -kv[1]))
    detail = "%d branching nodes over %s; %d violations; B2 vectors: %s; B2-attributed exceedances: %d" % (
        len(records), dict(sorted(rules.items(), key=lambda kv: int(kv[0][1:]))),
        len(report.violations), b2 or "none", len(report.b2_attributed))
    verdict(4, report.ok, detail)


def test_derandomized_threshold(verdict):
    p = Fraction(1795, 10000)
    exact = Fraction(1829, 1000) * (1 - Fraction(8205, 10000) ** 4)
    rng = random.Random(5)
    tried = failures = 0
    while tried < 600:
        f = simplified_cnf(rng, rng.randint(4, 12), flip_p=0.3)
        g, flipped = normalize_simplified(f)
        top = int(Fraction(2 * g.m + g.n, 2) / Fraction(1829, 1000))
        for k in {top, rng.randint(1, top)}:
            assert threshold_check(g, k)
            sigma = unflip(derandomized_assignment(g, k), flipped)
            tried += 1
            failures += satisfied_count(f, sigma) < k
    ok = exact >= 1 and failures == 0 and p == 1 - Fraction(8205, 10000)
    verdict(5, ok, "1.829*(1-0.8205^4) = %s = %.8f; %d instances at or below threshold, %d failures"
            % (exact, float(exact), tried, failures))


def test_set_cover_endgame(verdict):
    rng = random.Random(6)
    cover_bad = 0
    for _ in range(1000):
        inst = random_cover_instance(rng)
        cover = min_set_cover(inst)
        cover_bad += not inst.covers(cover) or len(cover) != len(brute_min_cover(inst))
    maxsat_bad = checked = 0
    for _ in range(300):
        f = simplified_cnf(rng, rng.randint(4, 12), flip_p=0.3)
        g, _ = normalize_simplified(f)
        t_min = len(min_set_cover(to_set_cover(g)))
        maxsat_bad += f.m - t_min != brute_maxsat(f)[0]
        checked += 1
    verdict(6, cover_bad == 0 and maxsat_bad == 0,
            "1000 cover instances, %d disagreements; %d simplified formulas, %d with m - t_min != maxsat"
            % (cover_bad, checked, maxsat_bad))


def test_kernel_bound(sweep, verdict):
    inputs = [Instance(f, k) for f in sweep["corpus"] for k in range(1, f.m + 1)]
    rng = random.Random(8)
    inputs += [kernel_instance(rng) for _ in range(3000)]
    stream = instance_stream(rng)
    inputs += [next(stream) for _ in range(3000)]
    kernels = bad = bad_witness = 0
    for inst in inputs:
        out = kernelize(inst)
        if out.solved:
            f = inst.formula
            bad_witness += satisfied_count(f, {v: out.certificate.get(v, 0) for v in f.variables()}) < inst.k
            continue
        kernels += 1
        bad += not kernel_bound_holds(out.instance)
    verdict(7, bad == 0 and bad_witness == 0,
            "%d inputs, %d kernels, %d bound violations, %d bad majority witnesses"
            % (len(inputs), kernels, bad, bad_witness))


def test_growth_smoke(verdict):
    ks, nodes, b2, attributed = [], [], Counter(), 0
    for k in range(10, 31):
        rng = random.Random(k)
        total = 0
        for _ in range(5):
            f, k = hard_instance(rng, k)
            s = Solver()
            s.solve(Instance(f, k))
            total += s.stats.nodes
            rep = audit_trace(s.records)
            b2.update(rep.b2_vectors)
            attributed += len(rep.b2_attributed)
        ks.append(k)
        nodes.append(total / 5)
    factor = growth_factor(ks, nodes)
    detail = "REPORT fitted growth %.4f per unit k (target 1.3248, exact root %.6f); mean nodes k=10: %.1f, k=30: %.1f; " \
             "B2 vectors %s; B2-attributed exceedances %d" % (
                 factor, branching_root((3, 2)), nodes[0], nodes[-1], dict(b2) or "none", attributed)
    verdict(8, True, detail)
