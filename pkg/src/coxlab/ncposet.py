"""Absolute order and the noncrossing partition lattice [1, c]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from coxlab.arrangement import (
    IntersectionLattice,
    fixed_flat,
    flat_orbit_data,
    flat_orbits,
)
from coxlab.errors import PropertyViolation
from coxlab.group import GroupElement, GroupTable, reflection_length

__all__ = [
    "GradedPoset",
    "KrewerasRecord",
    "NCPoset",
    "absolute_leq",
    "build_nc",
    "count_maximal_chains",
    "kreweras_line_numbers",
    "product_poset",
    "rank_sizes",
    "zeta_value",
]


def absolute_leq(u: GroupElement, v: GroupElement) -> bool:
    """``u <=_R v`` iff ``l_R(u) + l_R(u^-1 v) = l_R(v)``."""
    rs = u.rs
    return reflection_length(rs, u) + reflection_length(rs, u.inverse() * v) == reflection_length(rs, v)


class GradedPoset:
    """A finite graded poset with a unique minimum at index 0.

    ``lower[i]`` lists the elements covered by ``i``; ``up[i]`` is a bitmask of
    everything ``>= i``.
    """

    def __init__(self, rank: list[int], lower: list[list[int]]):
        self.rank = rank
        self.lower = lower
        self.size = len(rank)
        order = sorted(range(self.size), key=lambda i: -rank[i])
        upper: list[list[int]] = [[] for _ in range(self.size)]
        for i, cov in enumerate(lower):
            for j in cov:
                upper[j].append(i)
        self.upper = upper
        up = [0] * self.size
        for i in order:
            mask = 1 << i
            for j in upper[i]:
                mask |= up[j]
            up[i] = mask
        self.up = up

    @property
    def height(self) -> int:
        return max(self.rank) if self.rank else 0

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def maxima(self) -> list[int]:
        return [i for i in range(self.size) if not self.upper[i]]

    def __len__(self):
        return self.size


class NCPoset(GradedPoset):
    """``[1, c]`` in absolute order, as a subset of a group table."""

    def __init__(self, gt: GroupTable, c: int, elements: list[int], rank: list[int], lower: list[list[int]]):
        super().__init__(rank, lower)
        self.gt = gt
        self.c = c
        self.elements = elements
        self.pos = {e: i for i, e in enumerate(elements)}

    def element(self, i: int) -> GroupElement:
        return self.gt.element(self.elements[i])

    def __repr__(self):
        return f"NCPoset({self.gt.rs.name}, {self.size} elements)"


def build_nc(gt: GroupTable, c: GroupElement | int) -> NCPoset:
    """Filter the group for ``l_R(w) + l_R(w^-1 c) = l_R(c)`` and link covers ``w = u t``."""
    ci = c if isinstance(c, int) else gt.index_of(c)
    rl = gt.reflection_lengths()
    n = rl[ci]
    elems = [w for w in range(gt.order) if rl[w] + rl[gt.mult(gt.inv(w), ci)] == n]
    elems.sort(key=lambda w: (rl[w], w))
    pos = {e: i for i, e in enumerate(elems)}
    lower: list[list[int]] = [[] for _ in elems]
    for i, u in enumerate(elems):
        for t in gt.refl_indices:
            w = gt.mult(u, t)
            j = pos.get(w)
            if j is not None and rl[w] == rl[u] + 1:
                lower[j].append(i)
    for cov in lower:
        cov.sort()
    return NCPoset(gt, ci, elems, [rl[w] for w in elems], lower)


def count_maximal_chains(p: GradedPoset, verify: bool = False) -> int:
    """Maximal chains from the minimum to the top, by dynamic programming over covers.

    With ``verify`` on an :class:`NCPoset`, the reduced reflection factorizations
    of ``c`` are also counted by depth-first search and must agree.
    """
    f = [0] * p.size
    for i in sorted(range(p.size), key=lambda i: p.rank[i]):
        f[i] = 1 if p.rank[i] == 0 else sum(f[j] for j in p.lower[i])
    tops = p.maxima()
    if len(tops) != 1:
        raise PropertyViolation(f"poset has {len(tops)} maximal elements")
    total = f[tops[0]]
    if verify and isinstance(p, NCPoset):
        from coxlab.hurwitz import enumerate_factorizations

        dfs = len(enumerate_factorizations(p.gt, p.c))
        if dfs != total:
            raise PropertyViolation(f"chain DP gives {total} but DFS finds {dfs} factorizations")
    return total


def zeta_value(p: GradedPoset, k: int) -> int:
    """Number of multichains ``w_1 <= ... <= w_k``.

    This is the entry sum of the (k-1)-th power of the reflexive order matrix,
    computed by pushing a count vector up the order k-1 times.
    """
    if k < 1:
        raise ValueError("k must be positive")
    f = [1] * p.size
    for _ in range(k - 1):
        g = [0] * p.size
        for i in range(p.size):
            fi = f[i]
            mask = p.up[i]
            while mask:
                low = mask & -mask
                g[low.bit_length() - 1] += fi
                mask ^= low
        f = g
    return sum(f)


def product_poset(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Cartesian product; element ``(i, j)`` sits at index ``i * |q| + j``."""
    m = q.size
    rank = [p.rank[i] + q.rank[j] for i in range(p.size) for j in range(m)]
    lower = []
    for i in range(p.size):
        for j in range(m):
            lower.append([a * m + j for a in p.lower[i]] + [i * m + b for b in q.lower[j]])
    return GradedPoset(rank, lower)


def rank_sizes(p: GradedPoset) -> list[int]:
    out = [0] * (p.height + 1)
    for r in p.rank:
        out[r] += 1
    return out


@dataclass(frozen=True)
class KrewerasRecord:
    orbit: int
    representative: int
    count: int
    formula: int


def kreweras_line_numbers(p: NCPoset, lat: IntersectionLattice, gt: GroupTable) -> list[KrewerasRecord]:
    """Per orbit of lines: NC elements fixing a line of the orbit vs ``h / [N(L) : W_L]``."""
    rs = lat.rs
    h = rs.coxeter_number
    if not rs.irreducible or h.denominator != 1:
        raise ValueError("line Kreweras numbers need an irreducible group")
    orbit = flat_orbits(lat, gt)
    records = flat_orbit_data(lat, gt, strict=False)
    counts: dict[int, int] = {}
    for i, w in enumerate(p.elements):
        if p.rank[i] != rs.rank - 1:
            continue
        f = lat.index[fixed_flat(rs, gt.elements[w])]
        if lat.flats[f].dim != 1:
            raise PropertyViolation("element of corank one fixes a flat of the wrong dimension")
        counts[orbit[f]] = counts.get(orbit[f], 0) + 1
    out = []
    seen = set()
    for i, f in enumerate(lat.flats):
        if f.dim != 1 or rs.rank == 1 or orbit[i] in seen:
            continue
        seen.add(orbit[i])
        rec = records[i]
        value = Fraction(int(h) * rec.parabolic_order, rec.normalizer_order)
        if value.denominator != 1:
            raise PropertyViolation(f"h / [N(L):W_L] = {value} is not an integer")
        cnt = counts.get(orbit[i], 0)
        if cnt != value:
            raise PropertyViolation(f"line orbit {orbit[i]}: {cnt} NC elements vs formula {value}")
        out.append(KrewerasRecord(orbit[i], i, cnt, int(value)))
    return out


def multinomial(parts: list[int]) -> int:
    out = math.factorial(sum(parts))
    for k in parts:
        out //= math.factorial(k)
    return out
