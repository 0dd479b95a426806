"""Group elements as root permutations, enumeration, reflection length and degrees."""

from __future__ import annotations

import math
import os
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from coxlab.errors import DegreeExtractionError, GroupTooLarge, PropertyViolation
from coxlab.exactlinalg import QMatrix, mat_rank
from coxlab.rootsys import RootSystem, decompose_components, simple_subsystem

__all__ = [
    "DEFAULT_CAP",
    "LARGE_ORDER",
    "GroupElement",
    "GroupTable",
    "bipartite_conjugation_orbits",
    "component_degrees",
    "compose",
    "coxeter_element",
    "degrees",
    "enumerate_group",
    "identity_perm",
    "inverse",
    "perm_power",
    "reflection_length",
    "reflection_length_bfs",
    "subgroup_order",
    "validate_degrees",
]

DEFAULT_CAP = 60000
# enumerations beyond this order need allow_large=True
LARGE_ORDER = 10000
DEGREE_TOLERANCE = 1e-6

Perm = tuple[int, ...]


def compose(u: Perm, v: Perm) -> Perm:
    """The permutation ``u v`` (apply ``v`` first), matching matrix products."""
    return tuple(map(u.__getitem__, v))


def inverse(u: Perm) -> Perm:
    out = [0] * len(u)
    for i, j in enumerate(u):
        out[j] = i
    return tuple(out)


def identity_perm(size: int) -> Perm:
    return tuple(range(size))


def perm_power(u: Perm, k: int) -> Perm:
    out = identity_perm(len(u))
    base = u
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def perm_order(u: Perm) -> int:
    seen = [False] * len(u)
    order = 1
    for s in range(len(u)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = u[j]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


@dataclass(frozen=True)
class GroupElement:
    """A group element stored as its permutation of the signed root set."""

    perm: Perm
    rs: RootSystem = field(compare=False, repr=False, hash=False)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(compose(self.perm, other.perm), self.rs)

    def inverse(self) -> GroupElement:
        return GroupElement(inverse(self.perm), self.rs)

    def order(self) -> int:
        return perm_order(self.perm)

    def matrix(self) -> QMatrix:
        return self.rs.matrix_of_perm(self.perm)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    @classmethod
    def identity(cls, rs: RootSystem) -> GroupElement:
        return cls(identity_perm(2 * rs.N), rs)

    @classmethod
    def reflection(cls, rs: RootSystem, root: int) -> GroupElement:
        return cls(rs.reflection_perms[rs.hyperplane(root)], rs)

    @classmethod
    def simple(cls, rs: RootSystem, i: int) -> GroupElement:
        return cls.reflection(rs, rs.simple_indices[i])


def _cap_from_env() -> int:
    raw = os.environ.get("COXLAB_CAP")
    return int(raw) if raw else DEFAULT_CAP


class GroupTable:
    """All elements of W, indexed, with the reflections located.

    ``refl_indices[p]`` is the element index of the reflection in positive root
    ``p``.  Element 0 is the identity.
    """

    def __init__(self, rs: RootSystem, elements: list[Perm]):
        self.rs = rs
        self.elements = elements
        self.index = {p: i for i, p in enumerate(elements)}
        self.order = len(elements)
        self.refl_indices = tuple(self.index[p] for p in rs.reflection_perms)
        self._refl_pos = {e: p for p, e in enumerate(self.refl_indices)}
        self._rlen: list[int] | None = None
        self._inv: list[int] | None = None

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.elements[i], self.rs)

    def index_of(self, w) -> int:
        return self.index[w.perm if isinstance(w, GroupElement) else tuple(w)]

    def mult(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        if self._inv is None:
            self._inv = [self.index[inverse(p)] for p in self.elements]
        return self._inv[i]

    def reflection_position(self, i: int) -> int | None:
        """Positive-root index of element ``i`` if it is a reflection."""
        return self._refl_pos.get(i)

    def reflection_lengths(self) -> list[int]:
        """Reflection length of every element, via fixed-space codimension."""
        if self._rlen is None:
            self._rlen = [reflection_length(self.rs, p) for p in self.elements]
        return self._rlen

    def rlen(self, i: int) -> int:
        return self.reflection_lengths()[i]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupTable({self.rs.name}, order={self.order})"


def predicted_order(rs: RootSystem) -> int:
    """Product of the fundamental degrees (validated except against |W| itself)."""
    out = 1
    for _, d in degrees(rs):
        out *= d
    return out


def enumerate_group(rs: RootSystem, cap: int | None = None, allow_large: bool = False) -> GroupTable:
    """Breadth-first closure of the simple reflections acting on roots."""
    cap = _cap_from_env() if cap is None else cap
    expected = predicted_order(rs)
    if expected > cap:
        raise GroupTooLarge(f"|W({rs.name})| = {expected} exceeds cap {cap}")
    if expected > LARGE_ORDER and not allow_large:
        raise GroupTooLarge(f"|W({rs.name})| = {expected}; pass allow_large to enumerate")
    gens = [rs.reflection_perms[s] for s in rs.simple_indices]
    ident = identity_perm(2 * rs.N)
    seen = {ident}
    elements = [ident]
    head = 0
    while head < len(elements):
        w = elements[head]
        head += 1
        for g in gens:
            x = compose(g, w)
            if x not in seen:
                seen.add(x)
                elements.append(x)
                if len(elements) > cap:
                    raise GroupTooLarge(f"group exceeded cap {cap}")
    return GroupTable(rs, elements)


def reflection_length(rs: RootSystem, w) -> int:
    """``n - dim Fix(w)``, computed as rank(M - I).

    The abstract dihedral model uses the direct definition: 0 for the identity,
    1 for a reflection, 2 for a nontrivial rotation.
    """
    perm = w.perm if isinstance(w, GroupElement) else tuple(w)
    if rs.abstract:
        if all(i == j for i, j in enumerate(perm)):
            return 0
        return 1 if perm in set(rs.reflection_perms) else 2
    n = rs.rank
    rows = []
    cols = [rs.roots[perm[j]] for j in range(n)]
    for i in range(n):
        rows.append([cols[j][i] - (1 if i == j else 0) for j in range(n)])
    return mat_rank(QMatrix(rows))


def reflection_length_bfs(gt: GroupTable) -> list[int]:
    """Word length in the reflection generators, by BFS in the Cayley graph."""
    refl = [gt.elements[i] for i in gt.refl_indices]
    dist = [-1] * gt.order
    dist[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        w = gt.elements[i]
        for t in refl:
            j = gt.index[compose(w, t)]
            if dist[j] < 0:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def coxeter_element(rs: RootSystem, mode: str = "bipartite", order: Sequence[int] | None = None) -> GroupElement:
    """Product of all simple reflections.

    ``mode="bipartite"`` multiplies one colour class of the diagram and then the
    other; ``mode="standard"`` uses the Cartan order; an explicit ``order`` of
    simple positions overrides both.
    """
    if order is None:
        if mode == "bipartite":
            order = list(rs.bipartition[0]) + list(rs.bipartition[1])
        elif mode == "standard":
            order = list(range(rs.rank))
        else:
            raise ValueError(f"unknown Coxeter element mode {mode!r}")
    if sorted(order) != list(range(rs.rank)):
        raise ValueError("order must list each simple position exactly once")
    c = identity_perm(2 * rs.N)
    for i in order:
        c = compose(c, rs.reflection_perms[rs.simple_indices[i]])
    return GroupElement(c, rs)


def _component_coxeter_matrix(rs: RootSystem, simples: Sequence[int]) -> np.ndarray:
    """Float matrix of the product of ``simples`` acting on their own span."""
    r = len(simples)
    g = np.array([[rs.float_inner(a, b) for b in simples] for a in simples])
    c = np.eye(r)
    for i in range(r):
        s = np.eye(r)
        s[i, :] -= g[i, :]
        c = c @ s
    return c


def validate_degrees(degs: Sequence[int], h: int, n_reflections: int, order: int | None = None) -> None:
    """Exact checks on one irreducible component's degrees; raise on failure."""
    r = len(degs)
    problems = []
    if degs[0] != 2:
        problems.append(f"d_1 = {degs[0]} != 2")
    if degs[-1] != h:
        problems.append(f"d_n = {degs[-1]} != h = {h}")
    for i in range(r):
        if degs[i] + degs[r - 1 - i] != h + 2:
            problems.append(f"d_{i + 1} + d_{r - i} != h + 2")
            break
    if sum(d - 1 for d in degs) != n_reflections:
        problems.append(f"sum(d_i - 1) = {sum(d - 1 for d in degs)} != N = {n_reflections}")
    if order is not None and math.prod(degs) != order:
        problems.append(f"prod d_i = {math.prod(degs)} != |W| = {order}")
    if problems:
        raise DegreeExtractionError("; ".join(problems))


def component_degrees(rs: RootSystem, roots=None) -> list[tuple[int, list[int]]]:
    """``(h, degrees)`` for each irreducible component of a closed root subset."""
    out = []
    for comp in decompose_components(rs, roots).components:
        simples = simple_subsystem(rs, comp.roots)
        if len(simples) != comp.rank:
            raise DegreeExtractionError(f"{len(simples)} simple roots for a rank {comp.rank} component")
        h = comp.coxeter_number
        if comp.rank == 1:
            degs = [2]
        else:
            eig = np.linalg.eigvals(_component_coxeter_matrix(rs, simples))
            degs = []
            for lam in eig:
                theta = math.atan2(lam.imag, lam.real) % (2 * math.pi)
                x = h * theta / (2 * math.pi)
                m = round(x)
                if abs(x - m) > DEGREE_TOLERANCE or abs(abs(lam) - 1) > DEGREE_TOLERANCE:
                    raise DegreeExtractionError(f"eigenvalue {lam} is not an h-th root of unity (h={h})")
                degs.append(m + 1)
            degs.sort()
        validate_degrees(degs, h, comp.n_reflections)
        out.append((h, degs))
    return out


def degrees(rs: RootSystem, subsystem=None, gt: GroupTable | None = None) -> list[tuple[int, int]]:
    """Fundamental degrees as ``(component index, degree)`` pairs.

    Each component's Coxeter element is diagonalized numerically and the
    eigenvalue arguments are rounded to multiples of 2*pi/h.  The rounded
    integers must pass :func:`validate_degrees`; with ``gt`` for the full system
    the product of all degrees is also checked against ``|W|``.
    """
    data = component_degrees(rs, subsystem)
    out = [(k, d) for k, (_, degs) in enumerate(data) for d in degs]
    if gt is not None and subsystem is None:
        total = math.prod(d for _, d in out)
        if total != gt.order:
            raise DegreeExtractionError(f"prod d_i = {total} != |W| = {gt.order}")
    return out


def subgroup_order(rs: RootSystem, roots) -> int:
    """Order of the subgroup generated by the reflections in ``roots``."""
    gens = [rs.reflection_perms[rs.hyperplane(i)] for i in set(roots)]
    ident = identity_perm(2 * rs.N)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = compose(g, w)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return len(seen)


def bipartite_conjugation_orbits(rs: RootSystem, strict: bool = True) -> list[tuple[int, int, int]]:
    """Orbits of ``t -> c^-1 t c`` on reflections for the bipartite ``c``.

    Returns sorted ``(orbit size, simple reflections in it, h)`` triples, with h
    the Coxeter number of the orbit's irreducible component.  With ``strict``,
    raises PropertyViolation unless every orbit has size h/2 with one simple or
    size h with two simples.
    """
    c = coxeter_element(rs, "bipartite").perm
    cinv = inverse(c)
    pos_of = {p: i for i, p in enumerate(rs.reflection_perms)}
    h_of = {}
    for comp in decompose_components(rs).components:
        for r in comp.roots:
            h_of[r] = comp.coxeter_number
    simples = set(rs.simple_indices)
    seen = set()
    out = []
    for start in range(rs.N):
        if start in seen:
            continue
        orbit = []
        t = start
        while t not in seen:
            seen.add(t)
            orbit.append(t)
            t = pos_of[compose(cinv, compose(rs.reflection_perms[t], c))]
        k = sum(1 for t in orbit if t in simples)
        h = h_of[start]
        ok = (2 * len(orbit) == h and k == 1) or (len(orbit) == h and k == 2)
        if strict and not ok:
            raise PropertyViolation(f"orbit of size {len(orbit)} with {k} simples (h = {h})")
        out.append((len(orbit), k, h))
    return sorted(out, reverse=True)
