import random

import pytest

from fptmaxsat.setcover import BRUTE_LIMIT, CoverStats, SetCoverInstance, brute_min_cover, min_set_cover
from helpers import random_cover_instance


def test_single_set():
    assert min_set_cover(SetCoverInstance.build([1], [("a", [1])])) == {"a"}


def test_small_example():
    inst = SetCoverInstance.build([1, 2, 3, 4], [("a", [1, 2]), ("b", [3, 4]), ("c", [2, 3])])
    assert min_set_cover(inst) == {"a", "b"} == brute_min_cover(inst)


def test_empty_universe():
    assert min_set_cover(SetCoverInstance.build([], [("a", [])])) == frozenset()


def test_uncoverable():
    inst = SetCoverInstance.build([1, 2], [("a", [1])])
    with pytest.raises(ValueError):
        min_set_cover(inst)
    with pytest.raises(ValueError):
        brute_min_cover(inst)


def test_brute_guard():
    inst = SetCoverInstance.build([0], [(i, [0]) for i in range(BRUTE_LIMIT + 1)])
    with pytest.raises(ValueError):
        brute_min_cover(inst)


def test_matches_brute_force():
    rng = random.Random(0)
    for _ in range(400):
        inst = random_cover_instance(rng)
        stats = CoverStats()
        cover = min_set_cover(inst, stats)
        assert inst.covers(cover)
        assert len(cover) == len(brute_min_cover(inst))
        assert stats.nodes >= 1


def test_cover_is_irredundant_or_tied():
    rng = random.Random(1)
    for _ in range(200):
        inst = random_cover_instance(rng)
        cover = min_set_cover(inst)
        for o in cover:
            assert not inst.covers(cover - {o})
