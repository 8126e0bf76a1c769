"""
Kazhdan-Lusztig R-tilde polynomials.

``rtilde`` runs the classical descent recursion

    R~_{u,v} = R~_{us,vs}                 if us < u
    R~_{u,v} = R~_{us,vs} + q R~_{u,vs}   if us > u

for a right descent ``s`` of ``v``, memoized per rank on table indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .bruhat import BruhatGraph, bruhat_graph, interval
from .perm import Permutation, RankMismatch

__all__ = [
    "RPoly", "ElementOutsideInterval",
    "rtilde", "rtilde_via_shortcuts", "is_r_element",
]


class ElementOutsideInterval(ValueError):
    """A supplied element is not where the operation requires it to be."""


@dataclass(frozen=True)
class RPoly:
    """Integer polynomial in q, dense, ``coeffs[k]`` is the coefficient of q^k."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one(cls) -> RPoly:
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: RPoly) -> RPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RPoly(tuple(x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)))

    def shift(self, k: int) -> RPoly:
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return RPoly((0,) * k + self.coeffs)

    def __call__(self, q):
        return sum(c * q ** k for k, c in enumerate(self.coeffs))

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in reversed(range(len(self.coeffs))):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


def _swap(w: tuple, i: int) -> tuple:
    w = list(w)
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


@cache
def _rtilde_idx(n: int, policy: str, ui: int, vi: int) -> RPoly:
    g = bruhat_graph(n)
    if not g.leq(ui, vi):
        return RPoly()
    if ui == vi:
        return RPoly.one()
    v = g.perms[vi]
    descents = [i for i in range(n - 1) if v[i] > v[i + 1]]
    i = descents[0] if policy == "first" else descents[-1]
    u = g.perms[ui]
    usi = g.index[_swap(u, i)]
    vsi = g.index[_swap(v, i)]
    if u[i] > u[i + 1]:
        return _rtilde_idx(n, policy, usi, vsi)
    return _rtilde_idx(n, policy, usi, vsi) + _rtilde_idx(n, policy, ui, vsi).shift(1)


def rtilde(u: Permutation, v: Permutation, policy: str = "first") -> RPoly:
    """
    R~_{u,v}(q); zero unless u <= v.

    ``policy`` picks the right descent of v used at each step: ``"first"``
    (smallest index, the default) or ``"last"``. The result does not depend
    on it.
    """
    if len(u) != len(v):
        raise RankMismatch(f"rank {len(u)} vs rank {len(v)}")
    if policy not in ("first", "last"):
        raise ValueError(f"unknown descent policy {policy!r}")
    g = bruhat_graph(len(u))
    return _rtilde_idx(g.n, policy, g.idx(u), g.idx(v))


def rtilde_idx(g: BruhatGraph, ui: int, vi: int) -> RPoly:
    return _rtilde_idx(g.n, "first", ui, vi)


def rtilde_via_shortcuts(u, v, z, shortcuts) -> RPoly:
    """
    ``sum_p q^{d(u,p)} R~_{p,v}`` over ``shortcuts``, pairs ``(p, d(u,p))``.

    Every ``p`` must lie in ``[z, v]``.
    """
    iv = interval(u, v)
    if z not in iv:
        raise ElementOutsideInterval(f"{z} is not in [{u}, {v}]")
    upper = interval(z, v)
    total = RPoly()
    for p, d in shortcuts:
        if p not in upper:
            raise ElementOutsideInterval(f"{p} is not in [{z}, {v}]")
        total = total + rtilde(p, v).shift(d)
    return total


def is_r_element(u: Permutation, v: Permutation, z: Permutation) -> bool:
    from .shortcut import shortcuts_by_paths

    iv = interval(u, v)
    if z not in iv:
        raise ElementOutsideInterval(f"{z} is not in [{u}, {v}]")
    return rtilde(u, v) == rtilde_via_shortcuts(u, v, z, shortcuts_by_paths(iv, z))
