"""Positive root systems for finite Coxeter groups.

Roots are stored in simple-root coordinates together with the Gram matrix of
the simple roots, normalized so every root has squared length 2.  Off-diagonal
Gram entries are ``-2 cos(pi / m)``, which is exact in Q, Q(sqrt 2), Q(sqrt 3)
or Q(sqrt 5) for ``m`` in 2..6.

Dihedral groups I2(m) outside ``m in {3, 4, 6}`` have no matrix model.  They are
realized combinatorially: the 2m roots sit at angles ``pi*j/m`` and the
reflection in root ``j`` sends root ``k`` to root ``2j + m - k (mod 2m)``.

Root indexing is shared by both models: positive roots are ``0..N-1``, and
``i + N`` is the negative of positive root ``i``.  Every permutation of roots
in this package uses that convention.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from coxlab.errors import PropertyViolation, UnknownTypeError
from coxlab.exactlinalg import QMatrix, QScalar, SpanBasis, mat_rank, qs

__all__ = [
    "Component",
    "ComponentDecomposition",
    "CoxeterType",
    "RootSystem",
    "build_root_system",
    "classify_coxeter_matrix",
    "coxeter_matrix_of",
    "decompose_components",
    "parse_type",
    "simple_subsystem",
]

MAX_ROOTS = 400
MATRIX_MODEL_DIHEDRAL = (3, 4, 6)


@dataclass(frozen=True, order=True)
class CoxeterType:
    family: str
    rank: int
    m: int = 0

    def __post_init__(self):
        f, n, m = self.family, self.rank, self.m
        ok = (
            (f == "A" and n >= 1)
            or (f == "B" and n >= 2)
            or (f == "D" and n >= 4)
            or (f == "F" and n == 4)
            or (f == "H" and n in (3, 4))
            or (f == "E" and n in (6, 7, 8))
            or (f == "I" and n == 2 and m >= 3)
        )
        if not ok:
            raise UnknownTypeError(f"inadmissible Coxeter type {self.name}")
        if f != "I" and m:
            raise UnknownTypeError("the dihedral parameter m applies only to family I")

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        edges: dict[tuple[int, int], int] = {}
        f = self.family
        if f == "A":
            edges = {(i, i + 1): 3 for i in range(n - 1)}
        elif f == "B":
            edges = {(i, i + 1): 3 for i in range(n - 2)}
            edges[(n - 2, n - 1)] = 4
        elif f == "D":
            edges = {(i, i + 1): 3 for i in range(n - 2)}
            edges[(n - 3, n - 1)] = 3
        elif f == "E":
            # Bourbaki labels 1..n; node 2 hangs off node 4
            edges = {(0, 2): 3, (1, 3): 3}
            edges.update({(i, i + 1): 3 for i in range(2, n - 1)})
        elif f == "F":
            edges = {(0, 1): 3, (1, 2): 4, (2, 3): 3}
        elif f == "H":
            edges = {(0, 1): 5}
            edges.update({(i, i + 1): 3 for i in range(1, n - 1)})
        elif f == "I":
            edges = {(0, 1): self.m}
        return _matrix_from_edges(n, edges)

    def __str__(self):
        return self.name


def _matrix_from_edges(n: int, edges: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), v in edges.items():
        m[i][j] = m[j][i] = v
    return tuple(tuple(r) for r in m)


_TYPE_RE = re.compile(r"^(?:I2\((\d+)\)|([ABDEFH])(\d+))$")


def parse_type(s: str) -> tuple[CoxeterType, ...]:
    """Parse ``"A3"``, ``"I2(7)"`` or a product such as ``"A2xB3"``."""
    parts = [p.strip() for p in s.replace("×", "x").split("x")]
    if not parts or any(not p for p in parts):
        raise UnknownTypeError(f"cannot parse type string {s!r}")
    out = []
    for p in parts:
        mt = _TYPE_RE.match(p)
        if not mt:
            raise UnknownTypeError(f"cannot parse type string {s!r}")
        if mt.group(1):
            out.append(CoxeterType("I", 2, int(mt.group(1))))
        else:
            out.append(CoxeterType(mt.group(2), int(mt.group(3))))
    return tuple(out)


def _gram_entry(m: int) -> QScalar:
    """Exact ``-2 cos(pi/m)``."""
    if m == 2:
        return qs(0)
    if m == 3:
        return qs(-1)
    if m == 4:
        return QScalar(0, -1, 2)
    if m == 5:
        return QScalar(Fraction(-1, 2), Fraction(-1, 2), 5)
    if m == 6:
        return QScalar(0, -1, 3)
    raise ValueError(f"no exact quadratic model for m={m}")


def _block_diag(blocks: Sequence[tuple[tuple[int, ...], ...]]) -> tuple[tuple[int, ...], ...]:
    n = sum(len(b) for b in blocks)
    m = [[2] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                m[off + i][off + j] = v
        off += len(b)
    for i in range(n):
        m[i][i] = 1
    return tuple(tuple(r) for r in m)


def _graph_components(n: int, adjacent) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if not seen[v] and adjacent(u, v):
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


class RootSystem:
    """A finite root system with its positive roots and reflection permutations.

    Build instances with :func:`build_root_system` or
    :meth:`RootSystem.from_coxeter_matrix`.
    """

    def __init__(self, coxeter_matrix, name: str | None = None, ctype=None, abstract: bool | None = None):
        self.coxeter_matrix = tuple(tuple(r) for r in coxeter_matrix)
        self.rank = len(self.coxeter_matrix)
        self.dim = self.rank
        self.ctype = ctype
        self.name = name or classify_coxeter_matrix(self.coxeter_matrix)
        entries = {self.coxeter_matrix[i][j] for i in range(self.rank) for j in range(i)}
        self.abstract = bool(entries - {2, 3, 4, 5, 6}) if abstract is None else abstract
        if self.abstract:
            if self.rank != 2:
                raise UnknownTypeError(f"no model for Coxeter matrix {self.coxeter_matrix}")
            self._init_dihedral(self.coxeter_matrix[0][1])
        else:
            self._init_matrix_model()
        self.simple_indices = tuple(self._simple_indices)
        self.bipartition = self._bipartition()

    @classmethod
    def from_coxeter_matrix(cls, coxeter_matrix, name: str | None = None) -> RootSystem:
        return cls(coxeter_matrix, name=name)

    # construction -------------------------------------------------------
    def _init_matrix_model(self):
        n = self.rank
        gram = [[qs(2) if i == j else _gram_entry(self.coxeter_matrix[i][j]) for j in range(n)] for i in range(n)]
        self.gram = QMatrix(gram)
        self.field = self.gram.field
        simples = [tuple(qs(1) if k == i else qs(0) for k in range(n)) for i in range(n)]
        pos = list(simples)
        seen = set(pos)
        queue = list(pos)
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for i in range(n):
                if v == simples[i]:
                    continue
                c = _gdot(self.gram.rows[i], v)
                if not c:
                    continue
                w = list(v)
                w[i] = w[i] - c
                w = tuple(w)
                if w not in seen:
                    if not all(x.sign() >= 0 for x in w):
                        raise PropertyViolation(f"simple reflection produced a non-positive root {w}")
                    seen.add(w)
                    pos.append(w)
                    queue.append(w)
                    if len(pos) > MAX_ROOTS:
                        raise UnknownTypeError("Coxeter matrix does not define a finite group")
        self.N = len(pos)
        self.posroots = tuple(pos)
        self.roots = self.posroots + tuple(tuple(-x for x in v) for v in pos)
        self._root_index = {v: i for i, v in enumerate(self.roots)}
        self._simple_indices = list(range(n))
        # Gram times each positive root, for fast inner products
        self._gv = [self.gram.apply(v) for v in pos]
        perms = []
        N = self.N
        for p in range(N):
            sigma = pos[p]
            gs = self._gv[p]
            img = [0] * (2 * N)
            for r in range(N):
                c = _gdot(gs, pos[r])
                if c:
                    w = tuple(x - c * y for x, y in zip(pos[r], sigma))
                    j = self._root_index[w]
                else:
                    j = r
                img[r] = j
                img[r + N] = j - N if j >= N else j + N
            perms.append(tuple(img))
        self.reflection_perms = tuple(perms)

    def _init_dihedral(self, m: int):
        self.gram = None
        self.field = 0
        self.m = m
        self.N = m
        self.posroots = None
        self.roots = None
        self._simple_indices = [0, m - 1]
        perms = []
        for j in range(m):
            perms.append(tuple((2 * j + m - k) % (2 * m) for k in range(2 * m)))
        self.reflection_perms = tuple(perms)

    def _bipartition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = self.rank
        color = [-1] * n
        for s in range(n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for v in range(n):
                    if v != u and self.coxeter_matrix[u][v] >= 3:
                        if color[v] < 0:
                            color[v] = 1 - color[u]
                            stack.append(v)
                        elif color[v] == color[u]:
                            raise PropertyViolation("Coxeter diagram is not bipartite")
        return (
            tuple(i for i in range(n) if color[i] == 0),
            tuple(i for i in range(n) if color[i] == 1),
        )

    # basic queries ------------------------------------------------------
    def neg(self, i: int) -> int:
        return i - self.N if i >= self.N else i + self.N

    def hyperplane(self, i: int) -> int:
        """Positive-root index of the hyperplane orthogonal to root ``i``."""
        return i % self.N

    def is_positive(self, i: int) -> bool:
        return i < self.N

    @property
    def coxeter_number(self) -> Fraction:
        """``2N / n``; an integer for irreducible systems."""
        return Fraction(2 * self.N, self.rank)

    @cached_property
    def irreducible(self) -> bool:
        return len(_graph_components(self.rank, lambda u, v: self.coxeter_matrix[u][v] >= 3)) == 1

    def inner(self, i: int, j: int) -> QScalar:
        """Exact inner product of roots ``i`` and ``j`` (matrix model only)."""
        if self.abstract:
            raise TypeError(f"{self.name} has no matrix model")
        sgn = 1
        if i >= self.N:
            i -= self.N
            sgn = -sgn
        if j >= self.N:
            j -= self.N
            sgn = -sgn
        c = _gdot(self._gv[i], self.posroots[j])
        return c if sgn > 0 else -c

    def inner_sign(self, i: int, j: int) -> int:
        if not self.abstract:
            return self.inner(i, j).sign()
        m = self.m
        d = (i - j) % (2 * m)
        # sign of cos(pi d / m)
        if 2 * d == m or 2 * d == 3 * m:
            return 0
        return 1 if (2 * d < m or 2 * d > 3 * m) else -1

    def float_inner(self, i: int, j: int) -> float:
        if not self.abstract:
            return float(self.inner(i, j))
        return 2.0 * math.cos(math.pi * (i - j) / self.m)

    def orthogonal(self, i: int, j: int) -> bool:
        return self.inner_sign(i, j) == 0

    def root_vector(self, i: int) -> tuple[QScalar, ...]:
        if self.abstract:
            raise TypeError(f"{self.name} has no matrix model")
        return self.roots[i]

    def root_index(self, v: Sequence) -> int:
        return self._root_index[tuple(qs(x) for x in v)]

    def rank_of(self, indices: Iterable[int]) -> int:
        """Dimension of the span of the given roots."""
        idx = sorted({self.hyperplane(i) for i in indices})
        if self.abstract:
            return min(len(idx), 2)
        if not idx:
            return 0
        return mat_rank(QMatrix([self.posroots[i] for i in idx]))

    def span_basis(self, indices: Iterable[int]) -> SpanBasis:
        basis = SpanBasis(self.rank)
        for i in sorted({self.hyperplane(i) for i in indices}):
            basis.add(self.posroots[i])
        return basis

    def closure(self, indices: Iterable[int]) -> frozenset[int]:
        """All positive roots in the span of the given ones (a closed hyperplane set)."""
        idx = {self.hyperplane(i) for i in indices}
        if self.abstract:
            return frozenset(idx) if len(idx) <= 1 else frozenset(range(self.N))
        basis = self.span_basis(idx)
        return frozenset(i for i in range(self.N) if i in idx or basis.contains(self.posroots[i]))

    # matrices -----------------------------------------------------------
    @cached_property
    def reflections(self) -> tuple[QMatrix, ...]:
        """Reflection matrices index-aligned with ``posroots``."""
        if self.abstract:
            raise TypeError(f"{self.name} has no matrix model")
        return tuple(self.matrix_of_perm(p) for p in self.reflection_perms)

    def matrix_of_perm(self, perm: Sequence[int]) -> QMatrix:
        """Matrix (simple-root coordinates) of the linear map inducing ``perm``."""
        if self.abstract:
            raise TypeError(f"{self.name} has no matrix model")
        return QMatrix.from_columns([self.roots[perm[j]] for j in range(self.rank)])

    def __repr__(self):
        return f"RootSystem({self.name}, N={self.N})"


def _gdot(u, v) -> QScalar:
    acc = qs(0)
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def build_root_system(t) -> RootSystem:
    """Root system for a type string, a :class:`CoxeterType` or a tuple of them."""
    if isinstance(t, str):
        comps = parse_type(t)
    elif isinstance(t, CoxeterType):
        comps = (t,)
    else:
        comps = tuple(t)
    if len(comps) == 1 and comps[0].family == "I" and comps[0].m not in MATRIX_MODEL_DIHEDRAL:
        ct = comps[0]
        return RootSystem(ct.coxeter_matrix(), name=ct.name, ctype=comps, abstract=True)
    for ct in comps:
        if ct.family == "I" and ct.m not in MATRIX_MODEL_DIHEDRAL:
            raise UnknownTypeError(f"{ct.name} has no matrix model and cannot be a product factor")
    cm = _block_diag([ct.coxeter_matrix() for ct in comps])
    return RootSystem(cm, name="x".join(ct.name for ct in comps), ctype=comps)


# components -------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    roots: frozenset[int]
    rank: int
    n_reflections: int
    coxeter_number: int


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...] = field(default_factory=tuple)

    @property
    def multiset(self) -> list[int]:
        """Coxeter numbers, each repeated by its component rank, ascending."""
        out = []
        for c in self.components:
            out.extend([c.coxeter_number] * c.rank)
        return sorted(out)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def product(self) -> int:
        p = 1
        for h in self.multiset:
            p *= h
        return p


def decompose_components(rs: RootSystem, roots: Iterable[int] | None = None) -> ComponentDecomposition:
    """Split a closed set of positive roots into irreducible pieces.

    Two roots are linked when they are not orthogonal; each connected class is
    one irreducible component with Coxeter number ``2 N_i / r_i``.
    """
    idx = sorted({rs.hyperplane(i) for i in (range(rs.N) if roots is None else roots)})
    comps = _graph_components(len(idx), lambda u, v: not rs.orthogonal(idx[u], idx[v]))
    out = []
    for comp in comps:
        members = frozenset(idx[u] for u in comp)
        r = rs.rank_of(members)
        h = Fraction(2 * len(members), r)
        if h.denominator != 1:
            raise PropertyViolation(f"non-integral Coxeter number 2*{len(members)}/{r}")
        out.append(Component(members, r, len(members), int(h)))
    return ComponentDecomposition(tuple(out))


def simple_subsystem(rs: RootSystem, roots: Iterable[int]) -> list[int]:
    """Simple roots of the positive system ``roots`` (a reflection-closed subset).

    A root is non-simple exactly when some other root of the subset has positive
    inner product with it and reflects it to another positive root of the subset.
    """
    idx = sorted({rs.hyperplane(i) for i in roots})
    members = set(idx)
    out = []
    for s in idx:
        simple = True
        for a in idx:
            if a == s or rs.inner_sign(s, a) <= 0:
                continue
            img = rs.reflection_perms[a][s]
            if img in members:
                simple = False
                break
        if simple:
            out.append(s)
    return out


def _perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for s in range(len(p)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def coxeter_matrix_of(rs: RootSystem, simples: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Coxeter matrix of the reflections in ``simples``: orders of pairwise products."""
    n = len(simples)
    perms = [rs.reflection_perms[s] for s in simples]
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            u, v = perms[i], perms[j]
            prod = tuple(u[k] for k in v)
            m[i][j] = m[j][i] = _perm_order(prod)
    return tuple(tuple(r) for r in m)


def _component_name(cm: Sequence[Sequence[int]], nodes: list[int]) -> str:
    n = len(nodes)
    if n == 1:
        return "A1"
    edges = {}
    for a, b in itertools.combinations(nodes, 2):
        if cm[a][b] >= 3:
            edges[(a, b)] = cm[a][b]
    if n == 2:
        m = next(iter(edges.values()))
        return {3: "A2", 4: "B2"}.get(m, f"I2({m})")
    deg = {u: 0 for u in nodes}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    labels = sorted(edges.values())
    branch = [u for u in nodes if deg[u] == 3]
    if not branch:
        if labels.count(3) == n - 1:
            return f"A{n}"
        big = [(k, v) for k, v in edges.items() if v > 3]
        if len(big) == 1:
            (a, b), v = big[0]
            end = deg[a] == 1 or deg[b] == 1
            if v == 4:
                return f"B{n}" if end else ("F4" if n == 4 else "?")
            if v == 5 and end and n in (3, 4):
                return f"H{n}"
        return "?"
    centre = branch[0]
    arms = []
    for nb in nodes:
        if (min(centre, nb), max(centre, nb)) in edges:
            length, prev, cur = 1, centre, nb
            while True:
                nxt = [w for w in nodes if w not in (prev, cur) and (min(cur, w), max(cur, w)) in edges]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return "?"


def classify_coxeter_matrix(cm) -> str:
    """Human-readable type name such as ``"A2xA1"`` (``"A0"`` for rank 0)."""
    n = len(cm)
    if n == 0:
        return "A0"
    comps = _graph_components(n, lambda u, v: cm[u][v] >= 3)
    return "x".join(_component_name(cm, c) for c in comps)
