"""
The bijection between the two cycle-pair descriptions of the double shortcuts
of the standard pair (z_n, z_1), and of (z_n, z^n).

A pair in D is ``(A, B)`` with ``A = (n, a_k, ..., a_1)`` and
``B = (h0, b_1, ..., b_h)``, where ``p = A.u`` is a shortcut for z_n and
``B.p`` a shortcut of [p, v] for the other decomposition; ``h0`` is 1 for the
pair (z_n, z_1) and ``alpha = v(n)`` for (z_n, z^n). A pair in Dbar is
``(Bbar, Abar)`` read the other way round: ``q = Bbar.u`` first, then
``Abar.q``.

Cycles are kept as chains together with their head, so a chain of length zero
still stands for the one-entry cycle ``(n)`` or ``(h0)``: heads take part in
the common-element analysis and count in the size ``|C|`` (one plus the chain
length). With that convention ``d(u, C.u) = |C| - 1`` for every shortcut.

``phi`` works block by block on the common elements of A and B. Each block
falls in one of four cases, selected by where ``b_{j_1}`` sits relative to
``b_{j_1 - 1}`` in u and by comparing ``a_{i_m + 1}`` with ``b_{j_m + 1}``.
The cases remove one element from a cycle and insert one into a cycle. ``psi``
is the mirror construction; ``psi_via_conjugation`` computes it as
``C_w0 o phi o C_w0`` on the conjugated interval instead.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .bruhat import bruhat_leq
from .perm import (Cycle, Permutation, compose, conjugate_w0, cycle_to_perm,
                   transposition)

__all__ = [
    "MalformedPair", "DPair", "DbarPair", "BlockPartition",
    "satisfies_D", "satisfies_Dbar", "enumerate_D", "enumerate_Dbar",
    "enumerate_D_slow", "enumerate_Dbar_slow", "enumerate_D_alpha",
    "enumerate_Dbar_alpha", "block_partition", "phi", "psi", "phi_pair",
    "psi_pair", "phi_alpha", "psi_alpha", "psi_via_conjugation", "BijectionReport",
    "verify_bijection",
]


class MalformedPair(ValueError):
    """A cycle pair fails the defining conditions of its set."""


def _a_cycle(n: int, a) -> Cycle:
    return Cycle(n, (n,) + tuple(reversed(a)))


def _b_cycle(n: int, head: int, b) -> Cycle:
    return Cycle(n, (head,) + tuple(b))


@dataclass(frozen=True)
class DPair:
    """``A = (n, a_k, ..., a_1)``, ``B = (head, b_1, ..., b_h)``; b = B.A.u."""

    u: Permutation
    v: Permutation
    a: tuple[int, ...]
    b: tuple[int, ...]
    head: int = 1

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def A(self) -> Cycle:
        return _a_cycle(self.n, self.a)

    @property
    def B(self) -> Cycle:
        return _b_cycle(self.n, self.head, self.b)

    @property
    def size(self) -> int:
        return len(self.a) + 1 + len(self.b) + 1

    @property
    def degree(self) -> int:
        return len(self.a) + len(self.b)

    @property
    def product(self) -> Permutation:
        return compose(cycle_to_perm(self.B), cycle_to_perm(self.A))

    @property
    def p(self) -> Permutation:
        return compose(cycle_to_perm(self.A), self.u)

    @property
    def element(self) -> Permutation:
        return compose(self.product, self.u)

    @property
    def below_v(self) -> bool:
        return bruhat_leq(self.element, self.v)

    def to_json(self) -> dict:
        return {"A": str(self.A), "B": str(self.B), "a": list(self.a), "b": list(self.b),
                "head": self.head}


@dataclass(frozen=True)
class DbarPair:
    """``Bbar = (head, bb_1, ..., bb_h)``, ``Abar = (n, aa_k, ..., aa_1)``; b = Abar.Bbar.u."""

    u: Permutation
    v: Permutation
    bbar: tuple[int, ...]
    abar: tuple[int, ...]
    head: int = 1

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def Bbar(self) -> Cycle:
        return _b_cycle(self.n, self.head, self.bbar)

    @property
    def Abar(self) -> Cycle:
        return _a_cycle(self.n, self.abar)

    @property
    def size(self) -> int:
        return len(self.bbar) + 1 + len(self.abar) + 1

    @property
    def degree(self) -> int:
        return len(self.bbar) + len(self.abar)

    @property
    def product(self) -> Permutation:
        return compose(cycle_to_perm(self.Abar), cycle_to_perm(self.Bbar))

    @property
    def q(self) -> Permutation:
        return compose(cycle_to_perm(self.Bbar), self.u)

    @property
    def element(self) -> Permutation:
        return compose(self.product, self.u)

    @property
    def below_v(self) -> bool:
        return bruhat_leq(self.element, self.v)

    def to_json(self) -> dict:
        return {"Bbar": str(self.Bbar), "Abar": str(self.Abar), "bbar": list(self.bbar),
                "abar": list(self.abar), "head": self.head}


@dataclass(frozen=True)
class BlockPartition:
    """
    Common elements ``c_l = a_{i_l} = b_{j_l}`` in increasing order, split into
    maximal runs where both index sequences advance by exactly one.
    """

    common: tuple[tuple[int, int, int], ...]  # (c, i, j)
    blocks: tuple[tuple[int, ...], ...]       # indices into ``common``


# -- membership -------------------------------------------------------------

def _pos(w) -> dict[int, int]:
    return {x: k for k, x in enumerate(w, 1)}


def _increasing(seq) -> bool:
    return all(x < y for x, y in zip(seq, seq[1:]))


def _a_chain_ok(w_pos, v_pos, n, a) -> bool:
    # 1 <= a_1 < ... < a_k < n,  v^{-1}(n) = w^{-1}(a_1) < ... < w^{-1}(a_k) < w^{-1}(n)
    if not a:
        return w_pos[n] == v_pos[n]
    if not (_increasing(a) and 1 <= a[0] and a[-1] < n):
        return False
    ps = [w_pos[x] for x in a]
    return ps[0] == v_pos[n] and _increasing(ps + [w_pos[n]])


def _b_chain_ok(w_pos, v_pos, head, b, top) -> bool:
    # head < b_1 < ... < b_h <= top,  w^{-1}(head) < ... < w^{-1}(b_h) = v^{-1}(head)
    if not b:
        return w_pos[head] == v_pos[head]
    if not (_increasing(b) and head < b[0] and b[-1] <= top):
        return False
    ps = [w_pos[head]] + [w_pos[x] for x in b]
    return _increasing(ps) and ps[-1] == v_pos[head]


def satisfies_D(u, v, a, b, head: int = 1) -> bool:
    """Literal membership test for D (``head`` = 1) or its alpha variant."""
    n = len(u)
    vp = _pos(v)
    if not _a_chain_ok(_pos(u), vp, n, tuple(a)):
        return False
    p = compose(cycle_to_perm(_a_cycle(n, a)), u)
    return _b_chain_ok(_pos(p), vp, head, tuple(b), n - 1)


def satisfies_Dbar(u, v, bbar, abar, head: int = 1) -> bool:
    """Literal membership test for Dbar (``head`` = 1) or its alpha variant."""
    n = len(u)
    vp = _pos(v)
    if not _b_chain_ok(_pos(u), vp, head, tuple(bbar), n):
        return False
    if head != 1 and head in abar:
        return False
    q = compose(cycle_to_perm(_b_cycle(n, head, bbar)), u)
    return _a_chain_ok(_pos(q), vp, n, tuple(abar))


# -- enumeration ------------------------------------------------------------

def _chains(w_pos, values, start=None, end=None, after=None, before=None):
    """
    Chains of increasing values with increasing positions in w, optionally
    starting at position ``start``, ending at position ``end``, lying strictly
    after position ``after`` / strictly before position ``before``.
    """
    vals = sorted(x for x in values
                  if (after is None or w_pos[x] > after) and (before is None or w_pos[x] < before)
                  and (end is None or w_pos[x] <= end) and (start is None or w_pos[x] >= start))
    out = []

    def grow(chain):
        if chain and (end is None or w_pos[chain[-1]] == end):
            out.append(tuple(chain))
        for x in vals:
            if chain and (x <= chain[-1] or w_pos[x] <= w_pos[chain[-1]]):
                continue
            if not chain and start is not None and w_pos[x] != start:
                continue
            grow(chain + [x])

    grow([])
    return out


def _a_chains(w_pos, v_pos, n):
    out = [()] if w_pos[n] == v_pos[n] else []
    return out + _chains(w_pos, range(1, n), start=v_pos[n], before=w_pos[n])


def _b_chains(w_pos, v_pos, head, top):
    out = [()] if w_pos[head] == v_pos[head] else []
    return out + _chains(w_pos, range(head + 1, top + 1), after=w_pos[head], end=v_pos[head])


def _enumerate_D(u, v, head):
    n = len(u)
    vp = _pos(v)
    out = []
    for a in _a_chains(_pos(u), vp, n):
        p = compose(cycle_to_perm(_a_cycle(n, a)), u)
        for b in _b_chains(_pos(p), vp, head, n - 1):
            out.append(DPair(u, v, a, b, head))
    return out


def _enumerate_Dbar(u, v, head):
    n = len(u)
    vp = _pos(v)
    out = []
    for bb in _b_chains(_pos(u), vp, head, n):
        q = compose(cycle_to_perm(_b_cycle(n, head, bb)), u)
        for aa in _a_chains(_pos(q), vp, n):
            if head != 1 and head in aa:
                continue
            out.append(DbarPair(u, v, bb, aa, head))
    return out


def enumerate_D(u: Permutation, v: Permutation) -> list[DPair]:
    """All pairs of D, generated by scanning positions of u."""
    return _enumerate_D(u, v, 1)


def enumerate_Dbar(u: Permutation, v: Permutation) -> list[DbarPair]:
    return _enumerate_Dbar(u, v, 1)


def enumerate_D_alpha(u: Permutation, v: Permutation) -> list[DPair]:
    """D' : the distinguished value 1 replaced by alpha = v(n)."""
    return _enumerate_D(u, v, v[-1])


def enumerate_Dbar_alpha(u: Permutation, v: Permutation) -> list[DbarPair]:
    return _enumerate_Dbar(u, v, v[-1])


def _subsets(values):
    values = sorted(values)
    for r in range(len(values) + 1):
        yield from combinations(values, r)


def enumerate_D_slow(u, v, head: int = 1) -> list[DPair]:
    """Filter every pair of value subsets through ``satisfies_D``."""
    n = len(u)
    return [DPair(u, v, a, b, head)
            for a in _subsets(range(1, n)) for b in _subsets(range(head + 1, n))
            if satisfies_D(u, v, a, b, head)]


def enumerate_Dbar_slow(u, v, head: int = 1) -> list[DbarPair]:
    n = len(u)
    return [DbarPair(u, v, bb, aa, head)
            for bb in _subsets(range(head + 1, n + 1)) for aa in _subsets(range(1, n))
            if satisfies_Dbar(u, v, bb, aa, head)]


# -- blocks -----------------------------------------------------------------

def _partition(common) -> BlockPartition:
    blocks, cur = [], []
    for l, (_, i, j) in enumerate(common):
        if cur:
            _, pi, pj = common[cur[-1]]
            if i - pi > 1 or j - pj > 1:
                blocks.append(tuple(cur))
                cur = []
        cur.append(l)
    if cur:
        blocks.append(tuple(cur))
    return BlockPartition(tuple(common), tuple(blocks))


def _d_common(a, b, head):
    # c = a_i = b_j with j = 0 standing for the head of B
    bidx = {x: j for j, x in enumerate((head,) + tuple(b))}
    return [(x, i, bidx[x]) for i, x in enumerate(a, 1) if x in bidx]


def _dbar_common(bbar, abar, n):
    # c = aa_i = bb_j with i = k+1 standing for the head n of Abar
    aidx = {x: i for i, x in enumerate(tuple(abar) + (n,), 1)}
    return [(x, aidx[x], j) for j, x in enumerate(bbar, 1) if x in aidx]


def block_partition(u: Permutation, A: Cycle, B: Cycle, head: int = 1) -> BlockPartition:
    """Block partition of A_s & B_s for ``(A, B)`` shaped as in D."""
    n = len(u)
    return _partition(_d_common(_a_chain(A, n), _b_chain(B, head), head))


# -- cycle words ------------------------------------------------------------

def _rotate(entries, head):
    if head not in entries:
        return None
    k = entries.index(head)
    return entries[k:] + entries[:k]


def _a_chain(A: Cycle, n: int) -> tuple[int, ...]:
    if not A.entries:
        return ()
    word = _rotate(A.entries, n)
    if word is None:
        raise MalformedPair(f"{A} does not move {n}")
    return tuple(reversed(word[1:]))


def _b_chain(B: Cycle, head: int) -> tuple[int, ...]:
    if not B.entries:
        return ()
    word = _rotate(B.entries, head)
    if word is None:
        raise MalformedPair(f"{B} does not move {head}")
    return tuple(word[1:])


def _word_perm(n, word) -> Permutation:
    return cycle_to_perm(Cycle(n, tuple(word)))


def _insert_after(word, anchor, y):
    k = word.index(anchor)
    word.insert(k + 1, y)


def _insert_before(word, anchor, y):
    # before the head means at the end of the cyclic word
    k = word.index(anchor)
    word.insert(k if k else len(word), y)


def _product(n, factors, base) -> Permutation:
    """``t_1 . t_2 . ... . base`` for transpositions given as value pairs."""
    out = base
    for x, y in reversed(factors):
        out = compose(transposition(n, x, y), out)
    return out


def _check_products(n, before, after, factors) -> str:
    if _product(n, factors, before) == after:
        return "literal"
    if _product(n, factors[::-1], before) == after:
        return "commuted"
    return "mismatch"


# -- phi --------------------------------------------------------------------

def _phi_core(u, a, b, head, reverse=False):
    n = len(u)
    pos = _pos(u)
    k, h = len(a), len(b)
    a_ext = (n,) + tuple(a) + (n,)          # a_0 = a_{k+1} = n
    b_ext = (head,) + tuple(b) + (head,)    # b_0 = b_{h+1} = head
    Aw = [n] + list(reversed(a))
    Bw = [head] + list(b)
    part = _partition(_d_common(a, b, head))
    trace = []
    for blk in (part.blocks[::-1] if reverse else part.blocks):
        _, I1, J1 = part.common[blk[0]]
        _, Im, Jm = part.common[blk[-1]]
        right = J1 == 0 or pos[b_ext[J1]] > pos[b_ext[J1 - 1]]
        small = True if Jm == h else a_ext[Im + 1] < b_ext[Jm + 1]
        case = (1 if not small else 2) if right else (3 if not small else 4)
        A0, B0 = _word_perm(n, Aw), _word_perm(n, Bw)
        fa, fb = [], []
        # insertions before removals, anchored on elements this block keeps
        if case in (1, 3):
            _insert_after(Aw, a_ext[Im + 1], b_ext[Jm + 1])
            fa.append((a_ext[Im], b_ext[Jm + 1]))
        else:
            _insert_before(Bw, b_ext[Jm + 1], a_ext[Im + 1])
            fb.append((b_ext[Jm + 1], a_ext[Im + 1]))
        if case in (1, 2):
            Aw.remove(a_ext[I1])
            fa.append((a_ext[I1], a_ext[I1 - 1]))
        else:
            Bw.remove(b_ext[J1])
            fb.append((b_ext[J1], b_ext[J1 + 1]))
        trace.append({
            "case": case, "block": [part.common[l][0] for l in blk],
            "i": [I1, Im], "j": [J1, Jm],
            "sentinels": {"a_next": a_ext[Im + 1], "b_next": b_ext[Jm + 1],
                          "a_prev": a_ext[I1 - 1], "b_prev": b_ext[J1 - 1] if J1 else None,
                          "j_m_is_h": Jm == h, "i_m_is_k": Im == k},
            "product_A": _check_products(n, A0, _word_perm(n, Aw), fa),
            "product_B": _check_products(n, B0, _word_perm(n, Bw), fb),
        })
    return tuple(Bw[1:]), tuple(reversed(Aw[1:])), trace


def _psi_core(u, bbar, abar, head, reverse=False):
    n = len(u)
    pos = _pos(u)
    k, h = len(abar), len(bbar)
    a_ext = (n,) + tuple(abar) + (n,)       # aa_0 = aa_{k+1} = n
    b_ext = (head,) + tuple(bbar) + (head,)  # bb_0 = bb_{h+1} = head
    Aw = [n] + list(reversed(abar))
    Bw = [head] + list(bbar)
    part = _partition(_dbar_common(bbar, abar, n))
    trace = []
    for blk in (part.blocks[::-1] if reverse else part.blocks):
        _, I1, J1 = part.common[blk[0]]
        _, Im, Jm = part.common[blk[-1]]
        left = Im == k + 1 or pos[a_ext[Im]] < pos[a_ext[Im + 1]]
        big = True if I1 == 1 else b_ext[J1 - 1] > a_ext[I1 - 1]
        case = (2 if big else 1) if left else (4 if big else 3)
        A0, B0 = _word_perm(n, Aw), _word_perm(n, Bw)
        fa, fb = [], []
        if case in (1, 3):
            _insert_after(Bw, b_ext[J1 - 1], a_ext[I1 - 1])
            fb.append((b_ext[J1], a_ext[I1 - 1]))
        else:
            _insert_before(Aw, a_ext[I1 - 1], b_ext[J1 - 1])
            fa.append((a_ext[I1 - 1], b_ext[J1 - 1]))
        if case in (1, 2):
            Bw.remove(b_ext[Jm])
            fb.append((b_ext[Jm], b_ext[Jm + 1]))
        else:
            Aw.remove(a_ext[Im])
            fa.append((a_ext[Im], a_ext[Im - 1]))
        trace.append({
            "case": f"{case}'", "block": [part.common[l][0] for l in blk],
            "i": [I1, Im], "j": [J1, Jm],
            "sentinels": {"a_prev": a_ext[I1 - 1], "b_prev": b_ext[J1 - 1],
                          "b_next": b_ext[Jm + 1], "i_1_is_1": I1 == 1, "i_m_is_head": Im == k + 1},
            "product_A": _check_products(n, A0, _word_perm(n, Aw), fa),
            "product_B": _check_products(n, B0, _word_perm(n, Bw), fb),
        })
    return tuple(reversed(Aw[1:])), tuple(Bw[1:]), trace


def phi_pair(pair: DPair, check: bool = True) -> tuple[DbarPair, list[dict]]:
    """phi on a D pair, with the per-block case trace."""
    if check and not satisfies_D(pair.u, pair.v, pair.a, pair.b, pair.head):
        raise MalformedPair(f"({pair.A}, {pair.B}) is not in D for [{pair.u}, {pair.v}]")
    bb, aa, trace = _phi_core(pair.u, pair.a, pair.b, pair.head)
    return DbarPair(pair.u, pair.v, bb, aa, pair.head), trace


def psi_pair(pair: DbarPair, check: bool = True) -> tuple[DPair, list[dict]]:
    """psi on a Dbar pair, computed directly from the mirrored cases."""
    if check and not satisfies_Dbar(pair.u, pair.v, pair.bbar, pair.abar, pair.head):
        raise MalformedPair(f"({pair.Bbar}, {pair.Abar}) is not in Dbar for [{pair.u}, {pair.v}]")
    a, b, trace = _psi_core(pair.u, pair.bbar, pair.abar, pair.head)
    return DPair(pair.u, pair.v, a, b, pair.head), trace


def phi(u: Permutation, A: Cycle, B: Cycle, v: Permutation | None = None,
        head: int = 1) -> tuple[Cycle, Cycle]:
    """
    ``phi(A, B) = (Bbar, Abar)``. When v is given the pair is first checked
    against the defining conditions and MalformedPair raised on failure.
    """
    n = len(u)
    a, b = _a_chain(A, n), _b_chain(B, head)
    if v is not None and not satisfies_D(u, v, a, b, head):
        raise MalformedPair(f"({A}, {B}) is not in D for [{u}, {v}]")
    bb, aa, _ = _phi_core(u, a, b, head)
    return _b_cycle(n, head, bb), _a_cycle(n, aa)


def psi(u: Permutation, Bbar: Cycle, Abar: Cycle, v: Permutation | None = None,
        head: int = 1) -> tuple[Cycle, Cycle]:
    """``psi(Bbar, Abar) = (A, B)``, the inverse of :func:`phi`."""
    n = len(u)
    bb, aa = _b_chain(Bbar, head), _a_chain(Abar, n)
    if v is not None and not satisfies_Dbar(u, v, bb, aa, head):
        raise MalformedPair(f"({Bbar}, {Abar}) is not in Dbar for [{u}, {v}]")
    a, b, _ = _psi_core(u, bb, aa, head)
    return _a_cycle(n, a), _b_cycle(n, head, b)


def phi_alpha(u: Permutation, v: Permutation, A: Cycle, B: Cycle) -> tuple[Cycle, Cycle]:
    """phi on D', where B is anchored at alpha = v(n)."""
    return phi(u, A, B, v, head=v[-1])


def psi_alpha(u: Permutation, v: Permutation, Bbar: Cycle, Abar: Cycle) -> tuple[Cycle, Cycle]:
    return psi(u, Bbar, Abar, v, head=v[-1])


def psi_via_conjugation(u: Permutation, v: Permutation, Bbar: Cycle,
                        Abar: Cycle) -> tuple[Cycle, Cycle]:
    """
    ``psi = C_w0 o phi_[w0 u w0, w0 v w0] o C_w0``: conjugating by w0 turns
    Bbar into an A-type cycle and Abar into a B-type cycle of the conjugated
    interval.
    """
    n = len(u)
    bb, aa = _b_chain(Bbar, 1), _a_chain(Abar, n)
    if not satisfies_Dbar(u, v, bb, aa):
        raise MalformedPair(f"({Bbar}, {Abar}) is not in Dbar for [{u}, {v}]")
    flip = lambda xs: tuple(n + 1 - x for x in xs)
    u2, v2 = conjugate_w0(u), conjugate_w0(v)
    # w0 (1, bb_1..bb_h) w0 = (n, n+1-bb_1, ...): a-chain read upwards is flip(bb) reversed
    a2, b2 = flip(bb)[::-1], flip(aa)[::-1]
    bb2, aa2, _ = _phi_core(u2, a2, b2, 1)
    # and back: Bbar' (head 1) becomes an A-type cycle, Abar' a B-type one
    a_out, b_out = flip(bb2)[::-1], flip(aa2)[::-1]
    return _a_cycle(n, a_out), _b_cycle(n, 1, b_out)


# -- verification -----------------------------------------------------------

@dataclass
class BijectionReport:
    u: Permutation
    v: Permutation
    variant: str
    size_D: int = 0
    size_Dbar: int = 0
    checks: Counter = field(default_factory=Counter)
    witnesses: list[dict] = field(default_factory=list)
    cases: Counter = field(default_factory=Counter)
    commuted_products: int = 0

    @property
    def ok(self) -> bool:
        return not self.witnesses and self.size_D == self.size_Dbar

    def fail(self, what: str, pair, image=None, trace=None, identities=None):
        self.checks[what] += 1
        if len(self.witnesses) < 5:
            rec = {"u": str(self.u), "v": str(self.v), "variant": self.variant,
                   "failed": what, **pair.to_json()}
            if image is not None:
                rec.update(image.to_json())
            if trace is not None:
                rec["case_trace"] = trace
            if identities is not None:
                rec["identities"] = identities
            self.witnesses.append(rec)

    def to_json(self) -> dict:
        return {"u": str(self.u), "v": str(self.v), "variant": self.variant,
                "size_D": self.size_D, "size_Dbar": self.size_Dbar,
                "failures": dict(self.checks), "cases": {str(c): m for c, m in sorted(self.cases.items())},
                "commuted_products": self.commuted_products, "witnesses": self.witnesses}


def verify_bijection(u: Permutation, v: Permutation, variant: str = "standard") -> BijectionReport:
    """
    Check, for every pair of D (``variant="standard"``) or D'
    (``variant="alpha"``): phi lands in Dbar, B.A = Abar.Bbar, sizes agree,
    psi(phi(x)) = x, psi agrees with its conjugation form (standard variant),
    and phi hits every element of Dbar exactly once.
    """
    if variant == "standard":
        Ds, Dbars = enumerate_D(u, v), enumerate_Dbar(u, v)
    elif variant == "alpha":
        Ds, Dbars = enumerate_D_alpha(u, v), enumerate_Dbar_alpha(u, v)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rep = BijectionReport(u, v, variant, len(Ds), len(Dbars))
    images = Counter()
    for pair in Ds:
        img, trace = phi_pair(pair, check=False)
        for t in trace:
            rep.cases[t["case"]] += 1
            rep.commuted_products += (t["product_A"] == "commuted") + (t["product_B"] == "commuted")
        back, _ = psi_pair(img, check=False)
        ids = {
            "in_Dbar": satisfies_Dbar(u, v, img.bbar, img.abar, img.head),
            "product": pair.product == img.product,
            "size": pair.size == img.size,
            "round_trip": (back.a, back.b) == (pair.a, pair.b),
            "blocks_commute": _phi_core(u, pair.a, pair.b, pair.head, reverse=True)[:2]
            == (img.bbar, img.abar),
            "edits_match_products": all("mismatch" not in (t["product_A"], t["product_B"])
                                        for t in trace),
        }
        for name, good in ids.items():
            if not good:
                rep.fail(name, pair, img, trace, ids)
        images[img.bbar, img.abar] += 1
    dbar_keys = Counter((x.bbar, x.abar) for x in Dbars)
    if images != dbar_keys:
        rep.checks["phi_not_bijective"] += 1
        rep.witnesses.append({"u": str(u), "v": str(v), "variant": variant,
                              "failed": "phi_not_bijective",
                              "missed": [list(map(list, k)) for k in dbar_keys - images][:5],
                              "extra": [list(map(list, k)) for k in images - dbar_keys][:5]})
    for pair in Dbars:
        back, _ = psi_pair(pair, check=False)
        if not satisfies_D(u, v, back.a, back.b, back.head):
            rep.fail("psi_not_in_D", pair)
            continue
        fwd, _ = phi_pair(back, check=False)
        if (fwd.bbar, fwd.abar) != (pair.bbar, pair.abar):
            rep.fail("phi_psi_not_identity", pair)
        if variant == "standard":
            A2, B2 = psi_via_conjugation(u, v, pair.Bbar, pair.Abar)
            if (A2, B2) != (back.A, back.B):
                rep.fail("psi_vs_conjugation", pair)
    return rep
