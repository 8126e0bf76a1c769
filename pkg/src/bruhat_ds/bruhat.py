"""
Bruhat order, intervals and the Bruhat graph of $S_n$.

Everything heavy runs on a per-rank table (:func:`bruhat_graph`) that numbers
the elements of $S_n$ by (length, window) and stores up-sets and down-sets of
the Bruhat order as integer bitsets. Edges of the Bruhat graph are
``x -> t.x`` for a transposition ``t`` (acting on values) with
``length(t.x) > length(x)``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cache, cached_property
from itertools import combinations, permutations

from .perm import Permutation, RankMismatch, length

__all__ = [
    "MAX_RANK", "NotComparable", "NoMinimum", "Kind",
    "BruhatGraph", "bruhat_graph", "Interval", "BruhatPath",
    "bruhat_leq", "interval", "bruhat_edges_into", "distance", "geodesics",
    "poset_min", "standard_hcd", "standard_index", "all_intervals", "iter_bits",
]

MAX_RANK = 7


class NotComparable(ValueError):
    """Raised when an operation needs u <= v in Bruhat order and it fails."""


class NoMinimum(ValueError):
    """A set of permutations has no element below all the others."""


class Kind(enum.Enum):
    """The four standard hypercube decompositions."""

    ZN = "zn"        # min [u,v] cap W_{S-{s_{n-1}}} v : x^{-1}(n) = v^{-1}(n)
    Z1 = "z1"        # min [u,v] cap W_{S-{s_1}} v     : x^{-1}(1) = v^{-1}(1)
    ZUPN = "zupn"    # min [u,v] cap v W_{S-{s_{n-1}}} : x(n) = v(n)
    ZUP1 = "zup1"    # min [u,v] cap v W_{S-{s_1}}     : x(1) = v(1)


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BruhatGraph:
    """
    Precomputed Bruhat data for $S_n$.

    ``perms[i]`` is the i-th element in (length, window) order, so index order
    is a linear extension of the Bruhat order. ``above[i]`` / ``below[i]`` are
    bitsets of the principal up-set / down-set of element ``i``.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_RANK:
            raise ValueError(f"rank {n} outside 1..{MAX_RANK}")
        self.n = n
        ws = sorted(permutations(range(1, n + 1)), key=lambda w: (length(w), w))
        self.perms = [Permutation._trusted(w) for w in ws]
        self.index = {w: i for i, w in enumerate(self.perms)}
        self.length = [length(w) for w in self.perms]
        size = len(self.perms)

        self.up: list[list[int]] = [[] for _ in range(size)]
        self.down: list[list[int]] = [[] for _ in range(size)]
        for i, w in enumerate(self.perms):
            pos = {x: k for k, x in enumerate(w)}
            for a, b in combinations(range(1, n + 1), 2):
                # left multiplication by (a b) swaps the values a and b
                t = list(w)
                t[pos[a]], t[pos[b]] = b, a
                j = self.index[tuple(t)]
                if self.length[j] > self.length[i]:
                    self.up[i].append(j)
                    self.down[j].append(i)
        self.upmask = [_mask(js) for js in self.up]
        self.downmask = [_mask(js) for js in self.down]

        # Bruhat order is the transitive closure of the Bruhat graph
        self.below = [0] * size
        for i in range(size):
            m = 1 << i
            for d in self.down[i]:
                m |= self.below[d]
            self.below[i] = m
        self.above = [0] * size
        for i in reversed(range(size)):
            m = 1 << i
            for d in self.up[i]:
                m |= self.above[d]
            self.above[i] = m
        self.full = (1 << size) - 1

    def __len__(self):
        return len(self.perms)

    def idx(self, w) -> int:
        if len(w) != self.n:
            raise RankMismatch(f"rank {len(w)} vs rank {self.n}")
        return self.index[tuple(w)]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def interval_mask(self, i: int, j: int) -> int:
        return self.above[i] & self.below[j]

    def min_of(self, mask: int) -> int:
        """Index of the minimum of the set ``mask``; raises NoMinimum."""
        if not mask:
            raise NoMinimum("empty set has no minimum")
        # lowest index has minimal length; a minimum must be that element
        low = (mask & -mask).bit_length() - 1
        if self.above[low] & mask == mask:
            return low
        raise NoMinimum(
            "no element below all of {"
            + "; ".join(str(self.perms[k]) for k in iter_bits(mask)) + "}")

    @cache
    def dist_from(self, i: int) -> dict[int, int]:
        """Breadth-first Bruhat-graph distances from ``i`` to its up-set."""
        dist = {i: 0}
        queue = deque([i])
        while queue:
            x = queue.popleft()
            dx = dist[x] + 1
            for y in self.up[x]:
                if y not in dist:
                    dist[y] = dx
                    queue.append(y)
        return dist


def _mask(idxs) -> int:
    m = 0
    for i in idxs:
        m |= 1 << i
    return m


@cache
def bruhat_graph(n: int) -> BruhatGraph:
    return BruhatGraph(n)


def bruhat_leq(x: Permutation, y: Permutation) -> bool:
    """
    Bruhat comparison by the dominance (tableau) criterion:
    x <= y iff #{k <= i : x(k) >= j} <= #{k <= i : y(k) >= j} for all i, j.
    """
    if len(x) != len(y):
        raise RankMismatch(f"rank {len(x)} vs rank {len(y)}")
    n = len(x)
    cx = [0] * (n + 2)
    cy = [0] * (n + 2)
    for i in range(n):
        for j in range(1, x[i] + 1):
            cx[j] += 1
        for j in range(1, y[i] + 1):
            cy[j] += 1
        if any(cx[j] > cy[j] for j in range(2, n + 1)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class Interval:
    """The Bruhat interval [u, v], materialized as a bitset over $S_n$."""

    u: Permutation
    v: Permutation
    graph: BruhatGraph = field(repr=False)
    mask: int = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def ui(self) -> int:
        return self.graph.index[self.u]

    @property
    def vi(self) -> int:
        return self.graph.index[self.v]

    @cached_property
    def elements(self) -> frozenset[Permutation]:
        return frozenset(self.graph.perms[i] for i in iter_bits(self.mask))

    def sorted_elements(self) -> list[Permutation]:
        """Elements sorted by (length, window)."""
        return [self.graph.perms[i] for i in iter_bits(self.mask)]

    @cached_property
    def up_edges(self) -> dict[Permutation, frozenset[Permutation]]:
        """Bruhat-graph up-edges with both ends inside the interval."""
        g = self.graph
        return {
            g.perms[i]: frozenset(g.perms[j] for j in g.up[i] if self.mask >> j & 1)
            for i in iter_bits(self.mask)
        }

    def __contains__(self, x) -> bool:
        i = self.graph.index.get(tuple(x))
        return i is not None and len(x) == self.n and bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.sorted_elements())

    def __eq__(self, other):
        return isinstance(other, Interval) and (self.u, self.v) == (other.u, other.v)

    def __hash__(self):
        return hash((self.u, self.v))

    def sub(self, x: Permutation) -> Interval:
        """The upper sub-interval [x, v]."""
        return interval(x, self.v)


@dataclass(frozen=True)
class BruhatPath:
    """A directed path in the Bruhat graph."""

    vertices: tuple[Permutation, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def support(self) -> frozenset[Permutation]:
        return frozenset(self.vertices)


def interval(u: Permutation, v: Permutation) -> Interval:
    if len(u) != len(v):
        raise RankMismatch(f"rank {len(u)} vs rank {len(v)}")
    g = bruhat_graph(len(u))
    ui, vi = g.idx(u), g.idx(v)
    if not g.leq(ui, vi):
        raise NotComparable(f"{u} is not below {v}")
    return Interval(g.perms[ui], g.perms[vi], g, g.interval_mask(ui, vi))


def all_intervals(n: int):
    """
    Every interval of $S_n$, ordered by (length(v)-length(u), v window, u window).
    """
    g = bruhat_graph(n)
    pairs = [(i, j) for j in range(len(g)) for i in iter_bits(g.below[j])]
    pairs.sort(key=lambda p: (g.length[p[1]] - g.length[p[0]], g.perms[p[1]], g.perms[p[0]]))
    for i, j in pairs:
        yield Interval(g.perms[i], g.perms[j], g, g.interval_mask(i, j))


def bruhat_edges_into(p: Permutation, domain) -> set[tuple[Permutation, Permutation]]:
    """All Bruhat-graph edges ``x -> p`` with ``x`` in ``domain``."""
    g = bruhat_graph(len(p))
    dom = set(map(tuple, domain))
    return {(g.perms[x], g.perms[g.idx(p)]) for x in g.down[g.idx(p)] if g.perms[x] in dom}


def distance(u: Permutation, p: Permutation) -> int:
    g = bruhat_graph(len(u))
    ui, pi = g.idx(u), g.idx(p)
    if not g.leq(ui, pi):
        raise NotComparable(f"{u} is not below {p}")
    return g.dist_from(ui)[pi]


def _geodesic_indices(g: BruhatGraph, ui: int, pi: int):
    dist = g.dist_from(ui)
    out = []

    def back(path):
        x = path[-1]
        if x == ui:
            out.append(path[::-1])
            return
        dx = dist[x]
        for y in g.down[x]:
            if dist.get(y) == dx - 1:
                back(path + [y])

    back([pi])
    return out


def geodesics(u: Permutation, p: Permutation) -> list[BruhatPath]:
    """Every Bruhat-graph path from u to p of length ``distance(u, p)``."""
    g = bruhat_graph(len(u))
    ui, pi = g.idx(u), g.idx(p)
    if not g.leq(ui, pi):
        raise NotComparable(f"{u} is not below {p}")
    paths = [BruhatPath(tuple(g.perms[i] for i in path)) for path in _geodesic_indices(g, ui, pi)]
    return sorted(paths, key=lambda gam: gam.vertices)


def poset_min(xs) -> Permutation:
    xs = list(xs)
    if not xs:
        raise NoMinimum("empty set has no minimum")
    n = len(xs[0])
    g = bruhat_graph(n)
    return g.perms[g.min_of(_mask(g.idx(x) for x in xs))]


def _coset_mask(g: BruhatGraph, v: Permutation, kind: Kind) -> int:
    n = g.n
    if kind is Kind.ZN:
        test = lambda w: w.position(n) == v.position(n)
    elif kind is Kind.Z1:
        test = lambda w: w.position(1) == v.position(1)
    elif kind is Kind.ZUPN:
        test = lambda w: w[n - 1] == v[n - 1]
    else:
        test = lambda w: w[0] == v[0]
    return _mask(i for i, w in enumerate(g.perms) if test(w))


@cache
def _coset_masks(n: int, v: tuple, kind: Kind) -> int:
    return _coset_mask(bruhat_graph(n), Permutation._trusted(v), kind)


def standard_hcd(u: Permutation, v: Permutation, kind: Kind | str) -> Permutation:
    """
    One of the four standard hypercube decompositions of [u, v].

    ``W_{S-{s_{n-1}}}`` is the stabilizer of n, so the left coset
    ``W_{S-{s_{n-1}}} v`` is the set of x with n at the same position as in v;
    the right coset ``v W_{S-{s_{n-1}}}`` is the set of x with x(n) = v(n).
    The other two kinds use the value / position 1 instead.
    """
    iv = interval(u, v)
    return iv.graph.perms[standard_index(iv, kind)]


def standard_index(iv: Interval, kind: Kind | str) -> int:
    """Table index of ``standard_hcd`` for an already built interval."""
    kind = Kind(kind)
    g = iv.graph
    return g.min_of(iv.mask & _coset_masks(g.n, tuple(iv.v), kind))
