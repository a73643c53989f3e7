import itertools
from math import comb

import pytest

from compairs import claims, constructions as cs
from compairs.errors import CapacityError, DomainError
from compairs.poset import ChainProduct, Relation, compare, layer_profile, neighbor_count, sigma

from conftest import below_or_equal, grid_elements


# -- symmetric chain decompositions --------------------------------------


def test_scd_boolean_square():
    s = cs.build_scd(ChainProduct(2, 1))
    assert sorted(len(c) for c in s.chains) == [1, 3]
    long = max(s.chains, key=len)
    assert long[0] == (0, 0) and long[-1] == (1, 1)
    assert [sum(x) for x in min(s.chains, key=len)] == [1]


@pytest.mark.parametrize("k", [1, 2, 5])
def test_scd_single_chain(k):
    s = cs.build_scd(ChainProduct(1, k))
    assert s.chains == [[(v,) for v in range(k + 1)]]


def test_scd_three_cube():
    s = cs.build_scd(ChainProduct(3, 2))
    assert len(s) == 7 == layer_profile(3, 2)[3]
    assert all(c.status == "pass" for c in cs.verify_scd(s))


@pytest.mark.parametrize("n,k", [(n, k) for k in range(1, 5) for n in range(1, 6) if (k + 1) ** n <= 3**6])
def test_scd_invariants(n, k):
    s = cs.build_scd(ChainProduct(n, k))
    assert all(c.status == "pass" for c in cs.verify_scd(s))


def test_scd_guard():
    with pytest.raises(CapacityError):
        cs.build_scd(ChainProduct(13, 2))


def test_pigeonhole():
    p = ChainProduct(3, 2)
    assert cs.verify_pigeonhole(p, trials=50, seed=1)[0].status == "pass"


# -- six middle layers minus a corner ------------------------------------


def test_sec3_family_n8():
    n = 8
    f = cs.build_family_sec3(n)
    assert len(f) == sigma(ChainProduct(n, 2), 6) - comb(n, 3) - 1 == 5154
    assert (0, 0) + (1,) * (n - 2) not in f
    assert (2, 2, 2) + (1,) * (n - 3) not in f
    assert (0, 2, 2, 2, 2) + (1,) * (n - 5) in f


def test_sec3_grid_matches_family():
    f = cs.build_family_sec3(7)
    g = cs.sec3_grid(7)
    assert {tuple(int(v) for v in x) for x in zip(*g.nonzero())} == set(f.members)


def test_sec3_too_small():
    with pytest.raises(DomainError):
        cs.build_family_sec3(5)


def brute_degree(a, members):
    return sum(1 for y in members if y != a and (below_or_equal(a, y) or below_or_equal(y, a)))


@pytest.mark.parametrize("n", [8, 9])
def test_sec3_degrees_vs_brute(n):
    f = cs.build_family_sec3(n)
    r = cs.compare_sec3(n)
    X = (0, 0) + (1,) * (n - 2)
    B = (0, 2, 2, 2, 2) + (1,) * (n - 5)
    assert r["comp_X"] == brute_degree(X, f.members)
    assert r["comp_B"] == brute_degree(B, f.members)
    assert r["size"] == len(f)


def test_sec3_frozen_degrees():
    # exact degrees into F; the strict inequality only appears from n = 11
    got = {n: (cs.compare_sec3(n)["comp_B"], cs.compare_sec3(n)["comp_X"]) for n in (8, 9, 10, 11)}
    assert got == {8: (322, 297), 9: (515, 491), 10: (800, 786), 11: (1210, 1220)}


# -- the swapped window family -------------------------------------------


def test_sec5_example():
    w, B, C = cs.build_family_sec5(4, 2, 2)
    assert sorted(B) == [1, 1, 1, 2] and sum(B) == 5 == w.hi
    assert C == (2, 2, 2, 0)
    assert compare(B, C) == Relation.INCOMPARABLE


def test_sec5_parity():
    with pytest.raises(DomainError):
        cs.build_family_sec5(4, 2, 3)


def test_sec5_single_layer():
    # j = 1: the window is one layer and the sum for B is empty
    r = cs.delta_sums_sec5(5, 1, 1)
    assert r["window"][0] == r["window"][1]
    assert r["deltaB"] == 0


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (4, 3), (6, 2), (3, 4), (5, 3)])
def test_sec5_coefficients_vs_enumeration(n, k):
    for j in range(1, n * k):
        if (n * k + j) % 2:
            continue
        try:
            r = cs.delta_sums_sec5(n, k, j)
        except DomainError:
            continue
        dB, dC, diff = cs.delta_sums_enumerated(n, k, j)
        assert (r["deltaB"], r["deltaC"]) == (dB, dC)
        assert r["comp_diff"] == diff


def test_sec5_j():
    assert cs.sec5_j(20, 2) == 10
    assert cs.sec5_j(50, 3) == 12
    assert cs.sec5_j(100, 4) == 14


def test_sec5_grid_n20():
    r = cs.delta_sums_sec5(20, 2, 10)
    assert r["deltaC"] < r["deltaB"]
    assert r["deltaB"] > comb(20, 9)


# -- neighbour-count claims ----------------------------------------------


def test_averagethird_n3():
    assert [claims.f_count(3, c) for c in range(2)] == [3, 3]
    assert layer_profile(3, 2)[4] == 6
    assert all(c.status != "fail" for c in claims.verify_averagethird(3))
    boundary = [c for c in claims.verify_averagethird(3) if c.claim_id == "averagethird.boundary"]
    assert boundary[0].actual == [1, 2]


def test_number_nbrs_all_twos():
    p = ChainProduct(3, 2)
    assert neighbor_count(p, (2, 2, 2), 5) == 3


@pytest.mark.parametrize("n", range(2, 7))
def test_number_nbrs(n):
    assert all(c.status != "fail" for c in claims.verify_number_nbrs(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_claimfuncond(n):
    assert all(c.status != "fail" for c in claims.verify_claimfuncond(n))


@pytest.mark.parametrize("n", range(2, 6))
def test_3compressclaim(n):
    checks = claims.verify_3compressclaim(n)
    assert all(c.status != "fail" for c in checks)


def test_3compressclaim_counts():
    info = {n: next(c.actual for c in claims.verify_3compressclaim(n) if c.status == "info")
            for n in (4, 5, 6)}
    assert info[4]["equal_twos_pairs"] == 0
    assert info[5]["equal_twos_pairs"] == 10
    assert info[6]["equal_twos_pairs"] == 60


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 5) for k in range(1, 5)])
def test_shadows(n, k):
    assert all(c.status != "fail" for c in claims.verify_shadowsn2(n, k))


def test_governing_delta_vs_brute():
    p = ChainProduct(3, 3)
    elems = grid_elements(3, 3)
    for A, B in itertools.product(elems, repeat=2):
        if A != B and below_or_equal(A, B) and (sum(A), sum(B)) != (0, 9):
            g = claims.governing_delta(p, A, B)
            if abs(2 * sum(A) - 9) <= abs(2 * sum(B) - 9):
                assert g == claims.brute_delta(p, B, sum(A))
            else:
                Ac = tuple(3 - v for v in A)
                assert g == claims.brute_delta(p, Ac, 9 - sum(B))
