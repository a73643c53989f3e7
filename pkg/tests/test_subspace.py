import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from compairs.errors import CapacityError, DomainError, UnsupportedError
from compairs.propq import boolean_classes, check_property_q
from compairs.subspace import (SubspaceLattice, check_property_q_subspace, check_rank_profile,
                               contains, enumerate_subspaces, gaussian, subspace_classes)


def span_sets(q, n):
    """All subspaces of F_q^n as frozensets of vectors, by closing generator sets."""
    vecs = list(itertools.product(range(q), repeat=n))
    out = set()
    for r in range(n + 1):
        for gens in itertools.combinations(vecs, r):
            pts = set()
            for coeffs in itertools.product(range(q), repeat=r):
                pts.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % q for i in range(n)))
            out.add(frozenset(pts))
    return out


def points(s):
    q, n = s.q, s.n
    return frozenset(
        tuple(sum(c * row[i] for c, row in zip(coeffs, s.basis)) % q for i in range(n))
        for coeffs in itertools.product(range(q), repeat=s.dim))


def test_gaussian_examples():
    assert gaussian(2, 1, 2) == 3
    assert gaussian(4, 2, 2) == 35
    for q in (2, 3, 7):
        assert gaussian(5, 0, q) == 1
    with pytest.raises(DomainError):
        gaussian(3, 4, 2)


@given(st.integers(1, 9), st.integers(2, 9), st.data())
def test_gaussian_exceeds_binomial(n, q, data):
    i = data.draw(st.integers(0, n))
    g = gaussian(n, i, q)
    assert g == gaussian(n, n - i, q)
    if 0 < i < n:
        assert g > comb(n, i)


@pytest.mark.parametrize("q,n,total", [(2, 2, 5), (2, 3, 16), (3, 2, 6)])
def test_enumeration_counts(q, n, total):
    subs = enumerate_subspaces(SubspaceLattice(q, n))
    assert len(subs) == total
    assert len(set(subs)) == total


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (5, 2)])
def test_enumeration_vs_spans(q, n):
    subs = enumerate_subspaces(SubspaceLattice(q, n))
    assert {points(s) for s in subs} == span_sets(q, n)
    for d in range(n + 1):
        assert sum(1 for s in subs if s.dim == d) == gaussian(n, d, q)


def test_contains_examples():
    lat = SubspaceLattice(2, 2)
    whole = lat.span([(1, 0), (0, 1)])
    zero = lat.span([])
    a = lat.span([(1, 0)])
    b = lat.span([(0, 1)])
    for t in enumerate_subspaces(lat):
        assert contains(whole, t)
        assert contains(zero, t) == (t.dim == 0)
    assert not contains(a, b)
    with pytest.raises(DomainError):
        contains(a, SubspaceLattice(2, 3).span([]))


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (2, 4)])
def test_containment_is_a_partial_order_matching_point_sets(q, n):
    subs = enumerate_subspaces(SubspaceLattice(q, n))
    pts = {s: points(s) for s in subs}
    for s, t in itertools.product(subs, repeat=2):
        assert contains(s, t) == (pts[t] <= pts[s])


def test_non_prime_q_unsupported():
    with pytest.raises(UnsupportedError):
        enumerate_subspaces(SubspaceLattice(4, 2))
    # counts still work for prime powers
    assert SubspaceLattice(4, 2).layer_sizes() == [1, 5, 1]


def test_capacity_guard():
    with pytest.raises(CapacityError):
        enumerate_subspaces(SubspaceLattice(2, 9))


def test_decode_roundtrip():
    lat = SubspaceLattice(3, 3)
    for s in enumerate_subspaces(lat):
        assert lat.decode(lat.encode(s)) == s
    with pytest.raises(DomainError):
        lat.decode("110/010")


@pytest.mark.parametrize("q,n", [(2, 3), (2, 1), (3, 4)])
def test_property_q_examples(q, n):
    assert check_property_q_subspace(SubspaceLattice(q, n)).holds


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (2, 4)])
def test_neighbour_classes_vs_enumeration(q, n):
    subs = enumerate_subspaces(SubspaceLattice(q, n))
    classes = {c.rank: c for c in subspace_classes(q, n)}
    for x in subs:
        for r in range(n + 1):
            want = sum(1 for y in subs if y.dim == r and (contains(x, y) or contains(y, x)))
            assert classes[x.dim].nbr(r) == want


def test_boolean_property_q():
    for n in range(1, 8):
        assert check_property_q(n, boolean_classes(n)).holds


def test_rank_profile_examples():
    rep = check_rank_profile(SubspaceLattice(2, 4))
    assert rep.profile == [1, 15, 35, 15, 1] and rep.ok
    assert rep.enumerated == rep.profile
    assert check_rank_profile(SubspaceLattice(2, 1)).profile == [1, 1]
    rep = check_rank_profile(SubspaceLattice(5, 3))
    assert rep.symmetric and rep.unimodal
