"""
Shortcuts, double shortcuts and the DS equivalence classes.

A shortcut of [u, v] with respect to z is an element p of [z, v] such that
every geodesic from u to p meets [z, v] only at p. Geodesics from u to p stay
inside [u, p], so one breadth-first pass from u over [u, v] decides every p at
once: a vertex is "hit" if some geodesic reaching it has already visited
[z, v], and p is a shortcut iff p is in [z, v] and none of its geodesic
predecessors is hit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cache

from .bruhat import Interval, Kind, bruhat_graph, interval, iter_bits, standard_index
from .hcd import amazing_idx, join_idx
from .perm import Cycle, Permutation, compose, cycle_to_perm

__all__ = [
    "DSMultiset", "shortcuts_by_paths", "shortcuts_standard", "shortcut_chains",
    "ds_multiset", "ds_symmetric", "equivalence_classes",
]


@cache
def shortcuts_idx(n: int, ui: int, vi: int, zi: int) -> tuple[tuple[int, int], ...]:
    """Sorted ``(p, d(u, p))`` index pairs of the shortcuts of [u, v] w.r.t. z."""
    g = bruhat_graph(n)
    dist = g.dist_from(ui)
    inside = g.interval_mask(ui, vi)
    Z = g.interval_mask(zi, vi)
    hit = {}
    out = []
    # index order refines length order, which refines geodesic order
    for y in iter_bits(inside):
        dy = dist[y]
        preds_hit = False
        for x in g.down[y]:
            if dist.get(x) == dy - 1 and inside >> x & 1 and hit[x]:
                preds_hit = True
                break
        in_z = bool(Z >> y & 1)
        hit[y] = in_z or preds_hit
        if in_z and not preds_hit:
            out.append((y, dy))
    return tuple(out)


def shortcuts_by_paths(iv: Interval, z: Permutation) -> set[tuple[Permutation, int]]:
    """The shortcuts of ``iv`` with respect to z, each paired with d(u, p)."""
    g = iv.graph
    if z not in iv:
        raise ValueError(f"{z} is not in [{iv.u}, {iv.v}]")
    return {(g.perms[p], d) for p, d in shortcuts_idx(g.n, iv.ui, iv.vi, g.index[tuple(z)])}


def _increasing_chains(positions, lo: int, hi: int, values, first_at=None, last_at=None):
    """
    Increasing value chains whose positions (``positions[x]``) increase too.

    Values are drawn from ``values`` (already sorted). A chain may be pinned to
    start at position ``first_at`` and/or end at position ``last_at``.
    """
    vals = [x for x in values if lo < positions[x] < hi or positions[x] in (first_at, last_at)]
    out = []

    def grow(chain):
        if chain and (last_at is None or positions[chain[-1]] == last_at):
            out.append(tuple(chain))
        last_v = chain[-1] if chain else None
        for x in vals:
            if last_v is not None and (x <= last_v or positions[x] <= positions[last_v]):
                continue
            if not chain and first_at is not None and positions[x] != first_at:
                continue
            if last_at is not None and positions[x] > last_at:
                continue
            grow(chain + [x])

    grow([])
    return [c for c in out if c]


def shortcut_chains(u: Permutation, v: Permutation, kind: Kind | str) -> list[Cycle]:
    """
    The cycles C with C.u a shortcut for the standard decomposition ``kind``,
    read off the closed-form chain conditions. The identity cycle stands for
    the degenerate shortcut u itself, present exactly when the anchoring
    position condition collapses (u is then the decomposition).
    """
    kind = Kind(kind)
    n = len(u)
    pos = {x: u.position(x) for x in range(1, n + 1)}
    out = []
    if kind is Kind.ZN:
        # (n, a_k, ..., a_1) with v^{-1}(n) = u^{-1}(a_1) < ... < u^{-1}(a_k) < u^{-1}(n)
        start = v.position(n)
        if start == pos[n]:
            out.append(Cycle(n))
        for ch in _increasing_chains(pos, start, pos[n], range(1, n), first_at=start):
            out.append(Cycle(n, (n,) + ch[::-1]))
    elif kind is Kind.Z1:
        # (1, a_1, ..., a_k) with u^{-1}(1) < u^{-1}(a_1) < ... < u^{-1}(a_k) = v^{-1}(1)
        end = v.position(1)
        if end == pos[1]:
            out.append(Cycle(n))
        for ch in _increasing_chains(pos, pos[1], end, range(2, n + 1), last_at=end):
            out.append(Cycle(n, (1,) + ch))
    elif kind is Kind.ZUPN:
        # (alpha, a_1, ..., a_k), alpha = v(n), u^{-1}(alpha) < ... < u^{-1}(a_k) = n
        alpha = v[n - 1]
        if pos[alpha] == n:
            out.append(Cycle(n))
        for ch in _increasing_chains(pos, pos[alpha], n, range(alpha + 1, n + 1), last_at=n):
            out.append(Cycle(n, (alpha,) + ch))
    else:
        # (beta, a_k, ..., a_1), beta = v(1), 1 = u^{-1}(a_1) < ... < u^{-1}(a_k) < u^{-1}(beta)
        beta = v[0]
        if pos[beta] == 1:
            out.append(Cycle(n))
        for ch in _increasing_chains(pos, 1, pos[beta], range(1, beta), first_at=1):
            out.append(Cycle(n, (beta,) + ch[::-1]))
    return out


def shortcuts_standard(iv: Interval, kind: Kind | str) -> set[tuple[Permutation, int]]:
    """
    Shortcuts of a standard decomposition from the closed-form cycle
    description, each paired with its cycle length minus one (0 for the
    degenerate shortcut u). Only products C.u lying in [u, v] are kept.
    """
    out = set()
    for c in shortcut_chains(iv.u, iv.v, kind):
        p = compose(cycle_to_perm(c), iv.u)
        if p in iv:
            out.add((p, max(len(c) - 1, 0)))
    return out


@dataclass(frozen=True)
class DSMultiset:
    """
    A multiset of ``(degree, element)`` pairs, kept canonically as sorted
    ``(degree, element, multiplicity)`` triples.
    """

    entries: tuple[tuple[int, Permutation, int], ...]

    @classmethod
    def from_pairs(cls, pairs) -> DSMultiset:
        counts = Counter((d, tuple(b)) for d, b in pairs)
        return cls(tuple(
            (d, Permutation._trusted(b), m) for (d, b), m in sorted(counts.items())
        ))

    def __len__(self):
        return sum(m for _, _, m in self.entries)

    def to_json(self) -> list[dict]:
        return [{"degree": d, "perm": str(b), "multiplicity": m} for d, b, m in self.entries]


@cache
def ds_idx(n: int, ui: int, vi: int, zi: int, zpi: int) -> tuple:
    """DS(z, z') as a sorted tuple of ``((degree, b), multiplicity)`` on indices."""
    g = bruhat_graph(n)
    counts = Counter()
    for p, dp in shortcuts_idx(n, ui, vi, zi):
        j = join_idx(g, vi, zpi, p)
        for b, db in shortcuts_idx(n, p, vi, j):
            counts[dp + db, b] += 1
    return tuple(sorted(counts.items()))


def _ds_from_idx(g, raw) -> DSMultiset:
    return DSMultiset(tuple((d, g.perms[b], m) for (d, b), m in
                            sorted(raw, key=lambda e: (e[0][0], g.perms[e[0][1]]))))


def ds_multiset(iv: Interval, z: Permutation, zprime: Permutation) -> DSMultiset:
    """
    DS(z, z'): for each shortcut p of z, every shortcut b of [p, v] with
    respect to ``z' v p`` contributes ``(d(u,p) + d(p,b), b)``.

    Raises NoMinimum when a join fails to exist (z' is not amazing).
    """
    g = iv.graph
    for w in (z, zprime):
        if w not in iv:
            raise ValueError(f"{w} is not in [{iv.u}, {iv.v}]")
    return _ds_from_idx(g, ds_idx(g.n, iv.ui, iv.vi, g.index[tuple(z)], g.index[tuple(zprime)]))


def ds_symmetric(iv: Interval, z: Permutation, zprime: Permutation) -> bool:
    return ds_multiset(iv, z, zprime) == ds_multiset(iv, zprime, z)


def ds_symmetric_idx(n: int, ui: int, vi: int, zi: int, zpi: int) -> bool:
    return ds_idx(n, ui, vi, zi, zpi) == ds_idx(n, ui, vi, zpi, zi)


def classes_idx(n: int, ui: int, vi: int) -> list[list[int]]:
    amazing = amazing_idx(n, ui, vi)
    parent = {z: z for z in amazing}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, a in enumerate(amazing):
        for b in amazing[k + 1:]:
            if find(a) != find(b) and ds_symmetric_idx(n, ui, vi, a, b):
                parent[max(find(a), find(b))] = min(find(a), find(b))
    groups = {}
    for z in amazing:
        groups.setdefault(find(z), []).append(z)
    return sorted(groups.values())


def equivalence_classes(iv: Interval) -> list[list[Permutation]]:
    """
    Classes of the transitive closure of ``z ~ z'`` iff DS(z,z') = DS(z',z)
    over the amazing decompositions of ``iv``. Each class and the list of
    classes are sorted by (length, window).
    """
    g = iv.graph
    return [[g.perms[z] for z in cls] for cls in classes_idx(g.n, iv.ui, iv.vi)]


def standard_classes_joined(iv: Interval) -> bool:
    """True iff the four standard decompositions share one class."""
    zs = {standard_index(iv, k) for k in Kind}
    return any(zs <= set(c) for c in classes_idx(iv.n, iv.ui, iv.vi))
