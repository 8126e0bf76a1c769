import pytest
from hypothesis import given, settings, strategies as st

from bruhat_ds.bijection import (DPair, MalformedPair, _phi_core, block_partition, enumerate_D,
                                 enumerate_D_alpha, enumerate_D_slow, enumerate_Dbar,
                                 enumerate_Dbar_alpha, enumerate_Dbar_slow, phi, phi_alpha,
                                 phi_pair, psi, psi_pair, psi_via_conjugation, satisfies_D,
                                 verify_bijection)
from bruhat_ds.bruhat import Kind, all_intervals, bruhat_graph, interval, iter_bits, standard_hcd
from bruhat_ds.perm import Cycle, conjugate_w0, identity, longest
from bruhat_ds.shortcut import DSMultiset, ds_multiset
from conftest import P

e3, w0 = identity(3), longest(3)


def keys(pairs):
    return {(p.a, p.b) if hasattr(p, "a") else (p.bbar, p.abar) for p in pairs}


def test_enumerate_examples():
    pairs = enumerate_D(e3, w0)
    assert {str(p.A) for p in pairs} == {"(3,1)", "(3,2,1)"}
    assert all(satisfies_D(e3, w0, p.a, p.b) for p in pairs)
    assert len(pairs) == len(enumerate_Dbar(e3, w0))
    # u = v: only the head-only cycles survive
    for w in (e3, w0, P(2, 3, 1)):
        assert [(p.a, p.b) for p in enumerate_D(w, w)] == [((), ())]
        assert [(p.bbar, p.abar) for p in enumerate_Dbar(w, w)] == [((), ())]


@pytest.mark.parametrize("n", [3, 4])
def test_generator_matches_subset_filter(n):
    for iv in all_intervals(n):
        for head in {1, iv.v[-1]}:
            fast = enumerate_D(iv.u, iv.v) if head == 1 else enumerate_D_alpha(iv.u, iv.v)
            fastbar = enumerate_Dbar(iv.u, iv.v) if head == 1 else enumerate_Dbar_alpha(iv.u, iv.v)
            assert keys(fast) == keys(enumerate_D_slow(iv.u, iv.v, head))
            assert keys(fastbar) == keys(enumerate_Dbar_slow(iv.u, iv.v, head))


def test_pair_invariants_s4(s4_intervals):
    n = 4
    for iv in s4_intervals:
        for p in enumerate_D(iv.u, iv.v):
            assert not p.b or p.b[-1] != n
        for d in enumerate_Dbar(iv.u, iv.v):
            assert not d.abar or d.abar[0] != 1
        for d in enumerate_Dbar_alpha(iv.u, iv.v):
            assert iv.v[-1] not in d.abar


def test_block_partition_examples():
    u = identity(5)
    assert block_partition(u, Cycle(5, (5, 3)), Cycle(5, (1, 2))).blocks == ()
    one = block_partition(u, Cycle(5, (5, 2)), Cycle(5, (1, 2)))
    assert one.common == ((2, 1, 1),) and one.blocks == ((0,),)
    # a = (2, 3, 4), b = (2, 4): i jumps by 2 between the common values 2 and 4
    two = block_partition(u, Cycle(5, (5, 4, 3, 2)), Cycle(5, (1, 2, 4)))
    assert two.common == ((2, 1, 1), (4, 3, 2))
    assert two.blocks == ((0,), (1,))
    run = block_partition(u, Cycle(5, (5, 3, 2)), Cycle(5, (1, 2, 3)))
    assert run.blocks == ((0, 1),)


def test_disjoint_supports_commute():
    u, v = P(1, 2, 3, 4), P(3, 4, 1, 2)
    disjoint = [p for p in enumerate_D(u, v) if not set(p.a) & ({1} | set(p.b))]
    assert disjoint
    for p in disjoint:
        Bbar, Abar = phi(u, p.A, p.B, v)
        assert (Bbar, Abar) == (p.B, p.A)
        assert psi(u, Bbar, Abar, v) == (p.A, p.B)
        assert psi_via_conjugation(u, v, Bbar, Abar) == (p.A, p.B)


def _case_instances(case, m_size):
    for iv in all_intervals(5):
        for p in enumerate_D(iv.u, iv.v):
            img, trace = phi_pair(p)
            if len(trace) == 1 and trace[0]["case"] == case and len(trace[0]["block"]) == m_size:
                yield p, img, trace[0]


@pytest.mark.parametrize("m_size", [1, 2])
def test_case_one_description(m_size):
    p, img, t = next(_case_instances(1, m_size))
    i1, im = t["i"]
    jm = t["j"][1]
    a_ext = (p.n,) + p.a + (p.n,)
    b_ext = (p.head,) + p.b + (p.head,)
    # A word (n, a_k, ..., a_1): drop a_{i1}, put b_{jm+1} between a_{im+1} and a_{im}
    word = [p.n] + list(reversed(p.a))
    word.insert(word.index(a_ext[im + 1]) + 1, b_ext[jm + 1])
    word.remove(a_ext[i1])
    assert img.Abar == Cycle(p.n, tuple(word))
    assert img.Bbar == p.B
    back, trace = psi_pair(img)
    assert (back.a, back.b) == (p.a, p.b)
    assert [x["case"] for x in trace] == ["4'"]


def test_literal_product_order_splits_single_element_case_one():
    _, _, t = next(_case_instances(1, 1))
    # the listed order would cut the cycle in two; the edit is its commuted form
    assert t["product_A"] == "commuted"


def test_table_correspondence_under_conjugation(s4_intervals):
    for iv in s4_intervals:
        n = iv.n
        flip = lambda xs: tuple(n + 1 - x for x in xs)
        for d in enumerate_Dbar(iv.u, iv.v):
            _, trace = psi_pair(d)
            _, _, conj_trace = _phi_core(conjugate_w0(iv.u), flip(d.bbar)[::-1], flip(d.abar)[::-1], 1)
            assert [t["case"] for t in trace] == [f"{t['case']}'" for t in reversed(conj_trace)]


def test_bijection_identities_exhaustive_s4(s4_intervals):
    for iv in s4_intervals:
        for variant in ("standard", "alpha"):
            rep = verify_bijection(iv.u, iv.v, variant)
            assert rep.ok, rep.to_json()
            assert rep.size_D == rep.size_Dbar


def test_bijection_identities_s5_sample(s5_sample):
    for iv in s5_sample:
        for variant in ("standard", "alpha"):
            assert verify_bijection(iv.u, iv.v, variant).ok


def test_singleton_interval_vacuous():
    rep = verify_bijection(w0, w0)
    assert rep.ok and rep.size_D == 1


def test_alpha_is_standard_when_v_ends_in_one():
    for iv in all_intervals(4):
        if iv.v[-1] != 1:
            continue
        assert keys(enumerate_D_alpha(iv.u, iv.v)) == keys(enumerate_D(iv.u, iv.v))
        for p in enumerate_D(iv.u, iv.v):
            assert phi_alpha(iv.u, iv.v, p.A, p.B) == phi(iv.u, p.A, p.B, iv.v)


def _filtered(pairs):
    return DSMultiset.from_pairs((p.degree, p.element) for p in pairs if p.below_v)


def test_pairs_below_v_are_double_shortcuts(s4_intervals):
    for iv in s4_intervals:
        zn = standard_hcd(iv.u, iv.v, Kind.ZN)
        for other, D, Dbar in ((Kind.Z1, enumerate_D, enumerate_Dbar),
                               (Kind.ZUPN, enumerate_D_alpha, enumerate_Dbar_alpha)):
            z = standard_hcd(iv.u, iv.v, other)
            assert _filtered(D(iv.u, iv.v)) == ds_multiset(iv, zn, z)
            assert _filtered(Dbar(iv.u, iv.v)) == ds_multiset(iv, z, zn)


def test_phi_preserves_b_below_v(s4_intervals):
    for iv in s4_intervals:
        for p in enumerate_D(iv.u, iv.v):
            img, _ = phi_pair(p)
            assert img.element == p.element and img.below_v == p.below_v


def test_malformed_pairs_rejected():
    with pytest.raises(MalformedPair):
        phi(e3, Cycle(3, (3, 2)), Cycle(3), w0)
    with pytest.raises(MalformedPair):
        psi(e3, Cycle(3, (1, 3)), Cycle(3, (3, 1)), w0)
    with pytest.raises(MalformedPair):
        phi(e3, Cycle(3, (1, 2)), Cycle(3), w0)
    with pytest.raises(MalformedPair):
        phi_pair(DPair(e3, w0, (2,), ()))


@st.composite
def s5_interval(draw):
    g = bruhat_graph(5)
    vi = draw(st.integers(0, len(g) - 1))
    below = list(iter_bits(g.below[vi]))
    ui = below[draw(st.integers(0, len(below) - 1))]
    return interval(g.perms[ui], g.perms[vi])


@settings(max_examples=60, deadline=None)
@given(s5_interval())
def test_round_trips_on_random_s5_intervals(iv):
    for p in enumerate_D(iv.u, iv.v):
        Bbar, Abar = phi(iv.u, p.A, p.B, iv.v)
        assert psi(iv.u, Bbar, Abar, iv.v) == (p.A, p.B)
        assert psi_via_conjugation(iv.u, iv.v, Bbar, Abar) == (p.A, p.B)
    for d in enumerate_Dbar(iv.u, iv.v):
        A, B = psi(iv.u, d.Bbar, d.Abar, iv.v)
        assert phi(iv.u, A, B, iv.v) == (d.Bbar, d.Abar)
