import random

import pytest
from hypothesis import given, strategies as st

from fptmaxsat.formula import (
    Formula,
    assign,
    assign_literals,
    complete,
    is_simplified,
    normalize_simplified,
    profile,
    satisfied_count,
    unflip,
)
from fptmaxsat.generators import random_cnf, simplified_cnf
from fptmaxsat.oracle import brute_maxsat, maxsat_value
from strategies import formulas


def test_clauses_are_sorted_sets():
    f = Formula([[3, -1, 3, 2]])
    assert list(f) == [(-1, 2, 3)]
    assert f.size == 3


def test_empty_clause_dropped():
    f = Formula([[], [1]])
    assert f.m == 1


def test_duplicates_are_separate_members():
    f = Formula([[1, 2], [2, 1]])
    assert f.m == 2
    assert f.occurrences(1) == (0, 1)


def test_zero_literal_rejected():
    with pytest.raises(ValueError):
        Formula([[1, 0]])


def test_counts_and_size():
    f = Formula([[1, 2], [-1], [1, -2, 3]])
    assert (f.m, f.n, f.size) == (3, 3, 6)
    assert f.count(1) == 2 and f.count(-1) == 1
    assert f.degree(2) == 2


def test_profile_singleton():
    f = Formula([[1, 2], [-1]])
    p = profile(f, 1)
    assert (p.i, p.j, p.degree) == (1, 1, 2)
    assert p.kind == "(i,1)-singleton"


def test_profile_evened():
    # x=1; a..d = 2..5, each a (2,2)-variable
    f = Formula([[1, 2], [1, 3], [-1, 4], [-1, 5],
                 [2, -4], [3, -5], [4, -2], [5, -3], [-2, -3], [-4, -5]])
    assert profile(f, 1).kind == "(2,2)-evened"


def test_profile_skewed():
    # positive clauses of x hold singletons 2 and 3, negative ones hold (2,2)-literals
    f = Formula([[1, 2, 3], [1, 2, 3], [-2], [-3],
                 [-1, 4, 5], [-1, 4, 5], [-4, -5], [-4, -5]])
    p = profile(f, 1)
    assert p.kind == "(2,2)-skewed"


def test_profile_errors():
    f = Formula([[1]])
    with pytest.raises(KeyError):
        profile(f, 7)
    with pytest.raises(ValueError):
        profile(f, 0)


def test_profile_pure_and_high():
    f = Formula([[1, 2]] * 3 + [[1, -2]] * 3)
    assert profile(f, 1).kind == "pure"
    assert profile(f, 2).kind == "high-degree"


def _naive_counts(f, v):
    i = sum(1 for c in f for l in c if l == v)
    j = sum(1 for c in f for l in c if l == -v)
    return i, j


def test_profile_matches_rescan():
    rng = random.Random(3)
    for _ in range(1000):
        f = random_cnf(rng, rng.randint(1, 8), rng.randint(1, 15))
        for v in f.variables():
            p = profile(f, v)
            assert (p.i, p.j) == _naive_counts(f, v)


def test_assign_examples():
    g, sat = assign(Formula([[1, 2], [-1, 3], [4]]), 1, 1)
    assert sat == 1 and g == Formula([[3], [4]])
    g, sat = assign(Formula([[1], [-1]]), 1, 1)
    assert sat == 1 and g.m == 0


def test_assign_keeps_ids_of_shrunk_clauses():
    f = Formula([[1, 2], [-1, 3]])
    g, _ = assign(f, 1, 1)
    assert g.clause(1) == (3,)


def test_assign_sum_matches_direct_count():
    rng = random.Random(4)
    for _ in range(1000):
        f = random_cnf(rng, rng.randint(1, 8), rng.randint(1, 15))
        sigma = {v: rng.randint(0, 1) for v in f.variables()}
        g, total = f, 0
        for v, val in sigma.items():
            g, s = assign(g, v, val)
            total += s
        assert total == satisfied_count(f, sigma)
        assert g.m == 0
        assert g.index_consistent()


@given(formulas(), st.data())
def test_assign_order_independent(f, data):
    if f.n < 2:
        return
    a, b = data.draw(st.lists(st.sampled_from(f.variables()), min_size=2, max_size=2, unique=True))
    la = a * data.draw(st.sampled_from((1, -1)))
    lb = b * data.draw(st.sampled_from((1, -1)))
    g1, s1 = assign_literals(f, [la, lb])
    g2, s2 = assign_literals(f, [lb, la])
    assert g1 == g2 and s1 == s2


@given(formulas(), st.lists(st.integers(0, 20), max_size=4), st.lists(st.lists(st.integers(-9, 9).filter(bool), max_size=4), max_size=3))
def test_index_consistent_after_replace(f, remove, add):
    ids = [cid for cid in set(remove) if cid in f.ids()]
    g, new = f.replace(ids, add)
    assert g.index_consistent()
    assert g.m == f.m - len(ids) + len(new)
    assert all(len(c) >= 1 for c in g)


def test_satisfied_count_examples():
    f = Formula([[1, 2], [-1]])
    assert satisfied_count(f, {1: 1, 2: 0}) == 1
    g = Formula(f.to_lists() * 2)
    assert satisfied_count(g, {1: 1, 2: 0}) == 2


def test_satisfied_count_rejects_partial():
    with pytest.raises(ValueError):
        satisfied_count(Formula([[1, 2]]), {1: 1})


def test_satisfied_count_at_oracle_argmax():
    rng = random.Random(5)
    for _ in range(500):
        f = random_cnf(rng, rng.randint(1, 8), rng.randint(1, 15))
        best, sigma = brute_maxsat(f)
        assert satisfied_count(f, sigma) == best


def test_complete_fills_zero():
    assert complete({1: 1}, [1, 2, 3]) == {1: 1, 2: 0, 3: 0}


def test_simplified_detection():
    f = Formula([[1, 2, 3, 4]] * 3 + [[-1], [-2], [-3], [-4]])
    assert is_simplified(f)
    assert not is_simplified(Formula([[1, 2, 3]] * 3 + [[-1], [-2], [-3]]))
    # one (2,2)-variable breaks it
    assert not is_simplified(Formula([[1, 2, 3, 4]] * 2 + [[-1, 2, 3, 4]] * 2 + [[-2], [-3], [-4]]))


def test_simplified_normalization_flips_and_preserves_value():
    rng = random.Random(6)
    for _ in range(100):
        f = simplified_cnf(rng, rng.randint(4, 8), flip_p=0.5)
        g, flipped = normalize_simplified(f)
        assert all(l > 0 for c in g if len(c) > 1 for l in c)
        assert maxsat_value(f) == maxsat_value(g)
        _, sigma = brute_maxsat(g)
        assert satisfied_count(f, unflip(sigma, flipped)) == maxsat_value(f)


def test_unit_majority_literal_is_not_simplified():
    # 1 occurs three times but one occurrence is a unit clause
    f = Formula([[1, 2, 3, 4], [1, 2, 3, 4], [1], [-1], [-2], [-3], [-4], [2, 3, 4, 1]])
    assert not is_simplified(f)
