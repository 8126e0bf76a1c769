"""
Elements of the symmetric group $S_n$ in 1-based one-line notation, and cycles.

Composition is function composition: ``compose(u, v)(i) == u(v(i))``. A cycle
acting on the left of a permutation therefore permutes *values*:

>>> u = Permutation([1, 2, 3])
>>> A = Cycle(3, (3, 2, 1))
>>> compose(cycle_to_perm(A), u)
Permutation([3, 1, 2])
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "RankMismatch", "Permutation", "Cycle",
    "identity", "longest", "compose", "inverse", "length",
    "cycle_to_perm", "conjugate_w0", "conjugate_cycle_w0", "transposition",
    "parse_perm", "parse_cycle",
]


class RankMismatch(ValueError):
    """Two values of different rank were combined."""


class Permutation(tuple):
    """
    A permutation of {1..n}, stored as its window ``(w(1), ..., w(n))``.

    Being a tuple, it is immutable and hashable. ``w(i)`` evaluates at the
    1-based position ``i``.
    """

    __slots__ = ()

    def __new__(cls, window):
        w = tuple(int(x) for x in window)
        n = len(w)
        if n < 1:
            raise ValueError("a permutation needs rank n >= 1")
        if sorted(w) != list(range(1, n + 1)):
            raise ValueError(f"{list(w)} is not a permutation of 1..{n}")
        return tuple.__new__(cls, w)

    @classmethod
    def _trusted(cls, window: tuple) -> Permutation:
        # skips validation; callers guarantee a bijection of 1..n
        return tuple.__new__(cls, window)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def window(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def position(self, value: int) -> int:
        """The 1-based position holding ``value``, i.e. ``w^{-1}(value)``."""
        return self.index(value) + 1

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"

    def __str__(self) -> str:
        return ",".join(map(str, self))


@dataclass(frozen=True)
class Cycle:
    """
    A cyclic permutation ``entries[0] -> entries[1] -> ... -> entries[0]``.

    A cycle with fewer than two entries is the identity; it is normalized to
    ``entries == ()``.
    """

    n: int
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if self.n < 1:
            raise ValueError("a cycle needs rank n >= 1")
        if len(set(entries)) != len(entries):
            raise ValueError(f"repeated entries in cycle {entries}")
        if any(not 1 <= e <= self.n for e in entries):
            raise ValueError(f"cycle {entries} leaves 1..{self.n}")
        if len(entries) < 2:
            entries = ()
        object.__setattr__(self, "entries", entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def _check_rank(u, v):
    if len(u) != len(v):
        raise RankMismatch(f"rank {len(u)} vs rank {len(v)}")


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("a permutation needs rank n >= 1")
    return Permutation._trusted(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    """The longest element w0 = [n, n-1, ..., 1]."""
    if n < 1:
        raise ValueError("a permutation needs rank n >= 1")
    return Permutation._trusted(tuple(range(n, 0, -1)))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``(u o v)(i) = u(v(i))``."""
    _check_rank(u, v)
    return Permutation._trusted(tuple(u[x - 1] for x in v))


def inverse(u: Permutation) -> Permutation:
    inv = [0] * len(u)
    for i, x in enumerate(u, 1):
        inv[x - 1] = i
    return Permutation._trusted(tuple(inv))


def length(u) -> int:
    """Coxeter length, the number of inversions."""
    return sum(1 for a, b in combinations(u, 2) if a > b)


def cycle_to_perm(c: Cycle) -> Permutation:
    w = list(range(1, c.n + 1))
    e = c.entries
    for k, x in enumerate(e):
        w[x - 1] = e[(k + 1) % len(e)]
    return Permutation._trusted(tuple(w))


def transposition(n: int, a: int, b: int) -> Permutation:
    """The transposition swapping the values a and b (identity if a == b)."""
    return cycle_to_perm(Cycle(n, (a, b) if a != b else ()))


def conjugate_w0(u: Permutation) -> Permutation:
    """``w0 u w0``; in one-line notation ``i -> n+1 - u(n+1-i)``."""
    n = len(u)
    return Permutation._trusted(tuple(n + 1 - u[n - 1 - i] for i in range(n)))


def conjugate_cycle_w0(c: Cycle) -> Cycle:
    return Cycle(c.n, tuple(c.n + 1 - e for e in c.entries))


def parse_perm(text: str) -> Permutation:
    """Parse the text form ``3,1,2`` (brackets and spaces tolerated)."""
    body = text.strip().strip("[]()")
    try:
        return Permutation(int(tok) for tok in body.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"bad permutation text {text!r}: {exc}") from None


def parse_cycle(text: str, n: int) -> Cycle:
    """Parse the text form ``(4,2,1)``; ``()`` is the identity."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad cycle text {text!r}")
    toks = [t for t in body[1:-1].split(",") if t.strip()]
    return Cycle(n, tuple(int(t) for t in toks))
