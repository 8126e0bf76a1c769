import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from bruhat_ds.bruhat import (Kind, NoMinimum, NotComparable, all_intervals, bruhat_edges_into,
                              bruhat_graph, bruhat_leq, distance, geodesics, interval, poset_min,
                              standard_hcd)
from bruhat_ds.perm import Permutation, compose, identity, inverse, length, longest
from conftest import P

e3, w0 = identity(3), longest(3)


def test_leq_examples():
    assert bruhat_leq(P(1, 2, 3), P(3, 2, 1))
    assert bruhat_leq(P(2, 1, 3), P(2, 3, 1))
    assert not bruhat_leq(P(1, 3, 2), P(2, 1, 3))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dominance_matches_reachability(n):
    g = bruhat_graph(n)
    for x in g.perms:
        ups = O.up_set(tuple(x))
        for y in g.perms:
            assert bruhat_leq(x, y) == (tuple(y) in ups) == g.leq(g.index[x], g.index[y])


def test_interval_examples():
    assert interval(e3, e3).elements == {e3}
    assert interval(P(1, 2), P(2, 1)).elements == {P(1, 2), P(2, 1)}
    assert len(interval(e3, w0)) == 6
    with pytest.raises(NotComparable):
        interval(P(1, 3, 2), P(2, 1, 3))


@pytest.mark.parametrize("n,count", [(3, 19), (4, 213)])
def test_interval_counts(n, count):
    ivs = list(all_intervals(n))
    assert len(ivs) == count == len(O.all_intervals(n))
    for iv in ivs:
        assert iv.elements == {Permutation(x) for x in O.interval(tuple(iv.u), tuple(iv.v))}


def test_sweep_order():
    ivs = list(all_intervals(4))
    keys = [(length(iv.v) - length(iv.u), iv.v, iv.u) for iv in ivs]
    assert keys == sorted(keys)


def test_edges_into():
    assert bruhat_edges_into(identity(3), set(interval(e3, w0))) == set()
    s1 = P(2, 1, 3)
    assert bruhat_edges_into(s1, {e3}) == {(e3, s1)}
    # t.p < p for t in (1 2), (2 3), (1 3)
    into = bruhat_edges_into(w0, set(interval(e3, w0)) - {w0})
    assert {x for x, _ in into} == {P(3, 1, 2), P(2, 3, 1), P(1, 2, 3)}


def test_distance_examples():
    assert distance(w0, w0) == 0
    assert distance(e3, P(2, 1, 3)) == 1
    assert distance(e3, P(3, 1, 2)) == 2
    with pytest.raises(NotComparable):
        distance(w0, e3)


def test_geodesic_examples():
    assert [g.vertices for g in geodesics(w0, w0)] == [(w0,)]
    s1 = P(2, 1, 3)
    assert [g.vertices for g in geodesics(e3, s1)] == [(e3, s1)]
    mids = {g.vertices[1] for g in geodesics(e3, P(3, 1, 2))}
    assert mids == {P(2, 1, 3), P(1, 3, 2)}


def test_geodesics_match_oracle_s4():
    g = bruhat_graph(4)
    u = g.perms[0]
    for p in g.perms:
        ours = {tuple(map(tuple, gam.vertices)) for gam in geodesics(u, p)}
        assert ours == set(O.geodesics(tuple(u), tuple(p)))


def test_poset_min_examples():
    assert poset_min({e3, P(2, 1, 3)}) == e3
    assert poset_min({w0, P(2, 3, 1)}) == P(2, 3, 1)
    with pytest.raises(NoMinimum):
        poset_min({P(2, 1, 3), P(1, 3, 2)})


def test_standard_hcd_examples():
    # position of 3 fixed as in w0: {[3,1,2],[3,2,1]}
    assert standard_hcd(e3, w0, Kind.ZN) == P(3, 1, 2)
    assert standard_hcd(e3, w0, Kind.Z1) == P(2, 3, 1)
    assert standard_hcd(e3, w0, Kind.ZUPN) == P(2, 3, 1)
    assert standard_hcd(e3, w0, Kind.ZUP1) == P(3, 1, 2)
    for k in Kind:
        assert standard_hcd(w0, w0, k) == w0


@pytest.mark.parametrize("n", [3, 4])
def test_standard_matches_generated_cosets(n):
    for iv in all_intervals(n):
        for k in Kind:
            assert tuple(standard_hcd(iv.u, iv.v, k)) == O.standard(tuple(iv.u), tuple(iv.v), k.value)


def test_geometry_invariants_s4(s4_intervals):
    swap = {Kind.ZN: Kind.ZUPN, Kind.ZUPN: Kind.ZN, Kind.Z1: Kind.ZUP1, Kind.ZUP1: Kind.Z1}
    for iv in s4_intervals:
        for p in iv:
            assert distance(iv.u, p) <= length(p) - length(iv.u)
        for gam in geodesics(iv.u, iv.v):
            ls = [length(x) for x in gam.vertices]
            assert ls == sorted(set(ls))
            assert all(bruhat_leq(iv.u, x) for x in gam.vertices)
        inv_iv = interval(inverse(iv.u), inverse(iv.v))
        for k in Kind:
            z = standard_hcd(iv.u, iv.v, k)
            assert z in iv and bruhat_leq(z, iv.v)
            assert standard_hcd(inv_iv.u, inv_iv.v, swap[k]) == inverse(z)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_leq_is_transitive_closure_s5(x, y):
    x, y = Permutation(x), Permutation(y)
    g = bruhat_graph(5)
    assert bruhat_leq(x, y) == g.leq(g.idx(x), g.idx(y))
    if bruhat_leq(x, y):
        assert length(x) <= length(y)
        assert bruhat_leq(compose(longest(5), y), compose(longest(5), x))
