import itertools

import pytest

from compairs import search
from compairs.errors import CapacityError
from compairs.family import comp_count, is_centered, Family
from compairs.graded import poset_index
from compairs.poset import ChainProduct
from compairs.subspace import SubspaceLattice

# minimum comp per size, frozen from a plain itertools enumeration of all subsets
BRUTE_MINIMA = {
    ChainProduct(2, 1): [0, 0, 0, 2, 5],
    ChainProduct(3, 1): [0, 0, 0, 0, 2, 4, 6, 12, 19],
    ChainProduct(4, 1): [0, 0, 0, 0, 0, 0, 0, 3, 6, 9, 12, 18, 24, 30, 36, 50, 65],
    ChainProduct(2, 2): [0, 0, 0, 0, 2, 4, 8, 12, 19, 27],
    SubspaceLattice(2, 2): [0, 0, 0, 0, 3, 7],
    SubspaceLattice(3, 2): [0, 0, 0, 0, 0, 4, 9],
    SubspaceLattice(2, 3): [0, 0, 0, 0, 0, 0, 0, 0, 3, 6, 9, 12, 15, 18, 21, 35, 50],
}


@pytest.mark.parametrize("P", list(BRUTE_MINIMA), ids=str)
def test_min_comp_by_size_frozen(P):
    best, wit = search.min_comp_by_size(P)
    assert best == BRUTE_MINIMA[P]
    idx = poset_index(P)
    for M, w in enumerate(wit):
        members = idx.members_of(w)
        assert len(members) == M
        assert comp_count(Family(P, frozenset(members)), "pairwise") == best[M]


@pytest.mark.parametrize("P", list(BRUTE_MINIMA), ids=str)
def test_min_comp_monotone(P):
    best, _ = search.min_comp_by_size(P)
    assert all(a <= b for a, b in zip(best, best[1:]))


@pytest.mark.parametrize("P", [ChainProduct(4, 1), SubspaceLattice(2, 3), ChainProduct(2, 3)], ids=str)
def test_worker_count_invariance(P):
    ref = search.min_comp_by_size(P, workers=1)
    for w in (2, 4, 8):
        assert search.min_comp_by_size(P, workers=w) == ref
    assert search.min_comp_by_size(P, shard_bits=2) == ref


def test_witness_tie_break_is_lexicographic():
    P = ChainProduct(2, 1)
    idx = poset_index(P)
    _, wit = search.min_comp_by_size(P)
    for M in range(P.size() + 1):
        best = min(comp_count(Family(P, frozenset(c)), "pairwise")
                   for c in itertools.combinations(idx.elements, M))
        first = next(c for c in itertools.combinations(idx.elements, M)
                     if comp_count(Family(P, frozenset(c)), "pairwise") == best)
        assert idx.members_of(wit[M]) == list(first)


def test_gray_checkpoints_vs_scratch():
    P = ChainProduct(4, 1)
    idx = poset_index(P)
    start = 0b1010_0110_0011_1001
    masks, comps = search.gray_checkpoints(P, start, 16, 6)
    assert len(masks) >= 10_000
    for g, (m, c) in enumerate(zip(masks, comps), 1):
        step = 6 * g
        assert m == start ^ step ^ (step >> 1)
        assert c == idx.comp_of_mask(m)


def test_exhaustive_examples():
    r = search.exhaustive_min_comp(ChainProduct(2, 1), 2)
    assert r.min_comp == 0 and r.centered_achieves
    r = search.exhaustive_min_comp(ChainProduct(3, 1), 5)
    assert r.min_comp == 4 and r.centered_min_comp == 4
    rep = search.verify_centeredness_property(SubspaceLattice(2, 3))
    assert rep.holds and len(rep.reports) == 17


def test_centeredness_chain_3x3_reported():
    rep = search.verify_centeredness_property(ChainProduct(2, 2))
    assert [r.min_comp for r in rep.reports] == BRUTE_MINIMA[ChainProduct(2, 2)]
    assert rep.holds == (not rep.gaps())


def brute_centered_min(P, M):
    elems = P.elements()
    vals = [comp_count(Family(P, frozenset(c)), "pairwise")
            for c in itertools.combinations(elems, M)
            if is_centered(Family(P, frozenset(c)))]
    return min(vals)


@pytest.mark.parametrize("P", [ChainProduct(2, 2), ChainProduct(3, 1), SubspaceLattice(2, 3),
                               ChainProduct(2, 3)], ids=str)
def test_centered_min_vs_brute(P):
    for M in range(P.size() + 1):
        value, fam = search.centered_min_comp(P, M)
        assert value == brute_centered_min(P, M)
        assert len(fam) == M and is_centered(fam)
        assert comp_count(fam, "pairwise") == value


@pytest.mark.parametrize("P", [ChainProduct(2, 2), ChainProduct(4, 1), ChainProduct(2, 5),
                               ChainProduct(3, 2)], ids=str)
def test_milp_matches_enumeration(P):
    for M in range(P.size() + 1):
        exact, _ = search.centered_min_comp(P, M)
        forced, fam = search.centered_min_comp(P, M, brute_limit=0)
        assert forced == exact == comp_count(fam)


def test_capacity_guard():
    with pytest.raises(CapacityError):
        search.min_comp_by_size(ChainProduct(6, 2))


def test_local_search_budget_zero_returns_centered():
    P = ChainProduct(2, 4)
    res = search.local_search_counterexample(P, 9, budget=0)
    value, fam = search.centered_min_comp(P, 9)
    assert res.found == fam and res.found_comp == value == res.centered_min


def test_local_search_never_beats_boolean():
    P = ChainProduct(4, 1)
    for M in range(P.size() + 1):
        res = search.local_search_counterexample(P, M, budget=2000, seed=M)
        assert not res.beats_centered
        assert comp_count(res.found) == res.found_comp and len(res.found) == M


def test_local_search_is_seeded():
    P = ChainProduct(2, 8)
    a = search.local_search_counterexample(P, 30, budget=5000, seed=4)
    b = search.local_search_counterexample(P, 30, budget=5000, seed=4)
    assert a.found == b.found and a.found_comp == b.found_comp


def test_lower_bounds_small():
    checks = search.check_lower_bounds(ChainProduct(3, 2))
    extra = [c for c in checks if c.name == "extra_elements"]
    assert extra[0].expected == 0 and extra[0].status == "pass"
    assert all(c.status == "pass" for c in extra)
    assert all(c.expected == 2 * (c.M - 7) for c in extra)
