"""
Hypercube decompositions of Bruhat intervals.

An element z of [u, v] is a hypercube decomposition when [z, v] is diamond
complete in [u, v] and, for every p in [z, v], the edges into p coming from
[u, v] \\ [z, v] span a hypercube cluster. The amazing ones additionally have a
join ``z v x = min([z,v] & [x,v])`` that is again a decomposition of [x, v],
for every x in [u, v].

Predicates are computed on table indices and cached per rank, since the same
sub-intervals recur across a sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations

from .bruhat import BruhatGraph, Interval, NoMinimum, bruhat_graph, iter_bits
from .perm import Permutation

__all__ = [
    "EdgeFan", "HcdReport",
    "count_hypercube_embeddings", "spans_hypercube", "spans_hypercube_cluster",
    "is_diamond_complete", "is_hcd", "join", "is_amazing", "enumerate_amazing",
]


@dataclass(frozen=True)
class EdgeFan:
    """A set of Bruhat-graph edges ``x -> target``, given by their sources."""

    target: Permutation
    sources: frozenset[Permutation]

    def __post_init__(self):
        object.__setattr__(self, "sources", frozenset(self.sources))


@dataclass(frozen=True)
class HcdReport:
    z: Permutation
    is_diamond_complete: bool
    cluster_ok: bool
    # (p, antichain of sources of E^p that fails to span a hypercube)
    failing_witness: tuple[Permutation, tuple[Permutation, ...]] | None = None
    # (x, a1, a2, y) violating diamond completeness
    diamond_witness: tuple[Permutation, ...] | None = None

    @property
    def is_hcd(self) -> bool:
        return self.is_diamond_complete and self.cluster_ok

    def __bool__(self):
        return self.is_hcd


# -- hypercube embeddings ---------------------------------------------------

def _count_embeddings(g: BruhatGraph, p: int, sources: tuple[int, ...], cap: int | None) -> int:
    d = len(sources)
    full = (1 << d) - 1
    theta = {full: p}
    for k, s in enumerate(sources):
        theta[full ^ (1 << k)] = s
    used = set(theta.values())
    if len(used) != d + 1:
        return 0
    order = sorted((S for S in range(full + 1) if S.bit_count() <= d - 2),
                   key=lambda S: -S.bit_count())
    found = 0

    def place(k):
        nonlocal found
        if k == len(order):
            found += 1
            return
        S = order[k]
        cand = g.full
        for b in range(d):
            if not S >> b & 1:
                cand &= g.downmask[theta[S | 1 << b]]
        for c in iter_bits(cand):
            if c in used:
                continue
            theta[S] = c
            used.add(c)
            place(k + 1)
            used.discard(c)
            if cap is not None and found >= cap:
                return
        theta.pop(S, None)

    place(0)
    return found


@cache
def _spans_idx(n: int, p: int, sources: tuple[int, ...]) -> bool:
    return _count_embeddings(bruhat_graph(n), p, sources, cap=2) == 1


def _fan_idx(fan: EdgeFan):
    g = bruhat_graph(len(fan.target))
    p = g.idx(fan.target)
    srcs = tuple(sorted(g.idx(s) for s in fan.sources))
    for s in srcs:
        if not g.downmask[p] >> s & 1:
            raise ValueError(f"{g.perms[s]} -> {fan.target} is not a Bruhat-graph edge")
    return g, p, srcs


def count_hypercube_embeddings(fan: EdgeFan, cap: int | None = None) -> int:
    """
    Number of directed-graph embeddings of the hypercube on ``fan.sources``
    into the Bruhat graph sending E to the target and E - {a} to the source
    of a. Counting stops at ``cap`` when given.
    """
    g, p, srcs = _fan_idx(fan)
    return _count_embeddings(g, p, srcs, cap)


def spans_hypercube(iv: Interval | None, fan: EdgeFan) -> bool:
    """True iff exactly one hypercube embedding exists for ``fan``."""
    g, p, srcs = _fan_idx(fan)
    return _spans_idx(g.n, p, srcs)


def _antichain(g: BruhatGraph, xs) -> bool:
    return all(not g.leq(a, b) and not g.leq(b, a) for a, b in combinations(xs, 2))


def _cluster_failure(g: BruhatGraph, p: int, sources: tuple[int, ...]):
    """First antichain subset of ``sources`` failing to span, or None."""
    for r in range(2, len(sources) + 1):
        for sub in combinations(sources, r):
            if _antichain(g, sub) and not _spans_idx(g.n, p, sub):
                return sub
    return None


@cache
def _cluster_ok_idx(n: int, p: int, sources: tuple[int, ...]) -> bool:
    return _cluster_failure(bruhat_graph(n), p, sources) is None


def spans_hypercube_cluster(iv: Interval | None, fan: EdgeFan) -> bool:
    """True iff every antichain of sources in ``fan`` spans a hypercube."""
    g, p, srcs = _fan_idx(fan)
    return _cluster_ok_idx(g.n, p, srcs)


# -- decompositions ---------------------------------------------------------

def _diamond_witness(g: BruhatGraph, ui: int, vi: int, zi: int):
    full = g.interval_mask(ui, vi)
    Z = g.interval_mask(zi, vi)
    for x in iter_bits(full & ~Z):
        ups = [a for a in iter_bits(g.upmask[x] & Z)]
        for a1, a2 in combinations(ups, 2):
            common = g.upmask[a1] & g.upmask[a2] & Z
            if common:
                return x, a1, a2, (common & -common).bit_length() - 1
    return None


def _fan_sources(g: BruhatGraph, ui: int, vi: int, zi: int, p: int) -> tuple[int, ...]:
    outside = g.interval_mask(ui, vi) & ~g.interval_mask(zi, vi)
    return tuple(iter_bits(g.downmask[p] & outside))


@cache
def is_hcd_idx(n: int, ui: int, vi: int, zi: int) -> bool:
    g = bruhat_graph(n)
    if _diamond_witness(g, ui, vi, zi) is not None:
        return False
    for p in iter_bits(g.interval_mask(zi, vi)):
        if not _cluster_ok_idx(n, p, _fan_sources(g, ui, vi, zi, p)):
            return False
    return True


def _zidx(iv: Interval, z: Permutation) -> int:
    if z not in iv:
        raise ValueError(f"{z} is not in [{iv.u}, {iv.v}]")
    return iv.graph.index[tuple(z)]


def is_diamond_complete(iv: Interval, z: Permutation) -> bool:
    return _diamond_witness(iv.graph, iv.ui, iv.vi, _zidx(iv, z)) is None


def is_hcd(iv: Interval, z: Permutation) -> HcdReport:
    g = iv.graph
    zi = _zidx(iv, z)
    dw = _diamond_witness(g, iv.ui, iv.vi, zi)
    witness = None
    for p in iter_bits(g.interval_mask(zi, iv.vi)):
        bad = _cluster_failure(g, p, _fan_sources(g, iv.ui, iv.vi, zi, p))
        if bad is not None:
            witness = (g.perms[p], tuple(g.perms[s] for s in bad))
            break
    return HcdReport(
        z=g.perms[zi],
        is_diamond_complete=dw is None,
        cluster_ok=witness is None,
        failing_witness=witness,
        diamond_witness=None if dw is None else tuple(g.perms[k] for k in dw),
    )


def join_idx(g: BruhatGraph, vi: int, zi: int, xi: int) -> int:
    return g.min_of(g.interval_mask(zi, vi) & g.interval_mask(xi, vi))


def join(iv: Interval, z: Permutation, x: Permutation) -> Permutation:
    """``z v x``, the minimum of [z, v] & [x, v]; raises NoMinimum."""
    g = iv.graph
    return g.perms[join_idx(g, iv.vi, _zidx(iv, z), _zidx(iv, x))]


@cache
def is_amazing_idx(n: int, ui: int, vi: int, zi: int, strict: bool = False) -> bool:
    g = bruhat_graph(n)
    if not is_hcd_idx(n, ui, vi, zi):
        return False
    for x in iter_bits(g.interval_mask(ui, vi)):
        if x == ui:
            continue
        try:
            j = join_idx(g, vi, zi, x)
        except NoMinimum:
            return False
        ok = is_amazing_idx(n, x, vi, j, True) if strict else is_hcd_idx(n, x, vi, j)
        if not ok:
            return False
    return True


def is_amazing(iv: Interval, z: Permutation, strict: bool = False) -> bool:
    """
    True iff ``z v x`` exists and is a hypercube decomposition of [x, v] for
    every x in [u, v]. With ``strict`` the joins must themselves be amazing,
    recursively.
    """
    return is_amazing_idx(iv.n, iv.ui, iv.vi, _zidx(iv, z), strict)


@cache
def amazing_idx(n: int, ui: int, vi: int) -> tuple[int, ...]:
    g = bruhat_graph(n)
    return tuple(z for z in iter_bits(g.interval_mask(ui, vi)) if is_amazing_idx(n, ui, vi, z))


def enumerate_amazing(iv: Interval) -> list[Permutation]:
    """All amazing decompositions of ``iv``, sorted by (length, window)."""
    return [iv.graph.perms[z] for z in amazing_idx(iv.n, iv.ui, iv.vi)]

