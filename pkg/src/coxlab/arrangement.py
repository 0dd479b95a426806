"""Intersection lattice of a reflection arrangement.

A flat is identified by the closed set of hyperplanes (positive-root indices)
containing it, so ``X <= Y`` in the lattice (``X`` contains ``Y`` as a
subspace) is the subset test ``hyperplanes(X) <= hyperplanes(Y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from coxlab.errors import PropertyViolation
from coxlab.exactlinalg import IntPolynomial, QScalar, SpanBasis, poly_integer_roots, qs
from coxlab.group import GroupTable, subgroup_order
from coxlab.rootsys import RootSystem

__all__ = [
    "Flat",
    "FlatOrbitRecord",
    "IntersectionLattice",
    "build_lattice",
    "chamber_count",
    "characteristic_polynomial",
    "fixed_flat",
    "flat_basis",
    "flat_orbit_data",
    "os_exponents",
    "parabolic_of_flat",
]


@dataclass(frozen=True)
class Flat:
    hyperplanes: frozenset[int]
    dim: int
    codim: int

    def __le__(self, other: Flat) -> bool:
        return self.hyperplanes <= other.hyperplanes


class IntersectionLattice:
    """All flats of the arrangement, ordered by decreasing dimension.

    Index 0 is the whole space V and the last flat is the origin.
    """

    def __init__(self, rs: RootSystem, flats: list[Flat]):
        self.rs = rs
        self.flats = flats
        self.index = {f.hyperplanes: i for i, f in enumerate(flats)}
        self._mobius: dict[int, dict[int, int]] = {}

    @property
    def top(self) -> Flat:
        return self.flats[0]

    @property
    def bottom(self) -> Flat:
        return self.flats[-1]

    def flat_of(self, hyperplanes) -> Flat:
        return self.flats[self.index[frozenset(hyperplanes)]]

    def of_dim(self, k: int) -> list[Flat]:
        return [f for f in self.flats if f.dim == k]

    def graded_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.flats:
            out[f.dim] = out.get(f.dim, 0) + 1
        return dict(sorted(out.items(), reverse=True))

    def meet(self, x: Flat, y: Flat) -> Flat:
        """Intersection of two flats as subspaces."""
        return self.flat_of(self.rs.closure(x.hyperplanes | y.hyperplanes))

    def mobius_from(self, base: Flat) -> dict[int, int]:
        """``mu(base, Y)`` for every flat ``Y`` contained in ``base``."""
        b = self.index[base.hyperplanes]
        if b in self._mobius:
            return self._mobius[b]
        above = [i for i, f in enumerate(self.flats) if base.hyperplanes <= f.hyperplanes]
        mu: dict[int, int] = {}
        for i in above:  # flats are sorted by codim so predecessors come first
            if i == b:
                mu[i] = 1
                continue
            hi = self.flats[i].hyperplanes
            mu[i] = -sum(v for j, v in mu.items() if self.flats[j].hyperplanes < hi)
        self._mobius[b] = mu
        return mu

    def __len__(self):
        return len(self.flats)

    def __repr__(self):
        return f"IntersectionLattice({self.rs.name}, {len(self.flats)} flats)"


def build_lattice(rs: RootSystem) -> IntersectionLattice:
    """Enumerate flats by codimension, closing each flat with one more hyperplane."""
    n = rs.rank
    top = frozenset()
    levels = [[top]]
    spans: dict[frozenset, SpanBasis | None] = {top: None if rs.abstract else SpanBasis(n)}
    for codim in range(n):
        nxt: dict[frozenset, None] = {}
        for f in levels[codim]:
            covered: set[int] = set(f)
            for h in range(rs.N):
                if h in covered:
                    continue
                if rs.abstract:
                    g = rs.closure(f | {h})
                else:
                    basis = spans[f].copy()
                    basis.add(rs.posroots[h])
                    g = frozenset(
                        i for i in range(rs.N) if i in f or i == h or basis.contains(rs.posroots[i])
                    )
                    if g not in spans:
                        spans[g] = basis
                covered |= g
                nxt.setdefault(g, None)
        levels.append(sorted(nxt, key=lambda s: sorted(s)))
    flats = []
    for codim, level in enumerate(levels):
        for hs in level:
            flats.append(Flat(hs, n - codim, codim))
    return IntersectionLattice(rs, flats)


def flat_basis(rs: RootSystem, flat: Flat) -> list[tuple[QScalar, ...]]:
    """A basis of the subspace ``flat`` (vectors orthogonal to its roots)."""
    if rs.abstract:
        raise TypeError(f"{rs.name} has no matrix model")
    n = rs.rank
    # rows of the constraint matrix: G * sigma for sigma in the flat's roots
    rows = [list(rs.gram.apply(rs.posroots[i])) for i in sorted(flat.hyperplanes)]
    # reduced row echelon form, then read off the null space
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [qs(0)] * n
        v[fc] = qs(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def parabolic_of_flat(flat: Flat, rs: RootSystem | None = None) -> frozenset[int]:
    """Positive roots of the pointwise stabilizer W_X: those whose hyperplane contains X."""
    return flat.hyperplanes


def characteristic_polynomial(lat: IntersectionLattice, base: Flat) -> IntPolynomial:
    """Characteristic polynomial of the restriction of the arrangement to ``base``."""
    mu = lat.mobius_from(base)
    coeffs = [0] * (base.dim + 1)
    for i, v in mu.items():
        coeffs[lat.flats[i].dim] += v
    return IntPolynomial(coeffs)


def chamber_count(lat: IntersectionLattice, base: Flat) -> int:
    """Number of chambers of the restricted arrangement (Zaslavsky)."""
    chi = characteristic_polynomial(lat, base)
    return (-1) ** base.dim * chi(-1)


def os_exponents(lat: IntersectionLattice, base: Flat) -> list[int]:
    """Integer roots of the restricted characteristic polynomial."""
    return poly_integer_roots(characteristic_polynomial(lat, base))


def _act_on_flat(rs: RootSystem, perm, hyperplanes: frozenset[int]) -> frozenset[int]:
    N = rs.N
    return frozenset(perm[h] % N for h in hyperplanes)


def fixed_flat(rs: RootSystem, w) -> frozenset[int]:
    """Hyperplane set of Fix(w): roots lying in the image of ``w - 1``."""
    perm = w.perm if hasattr(w, "perm") else tuple(w)
    N = rs.N
    if rs.abstract:
        if all(i == j for i, j in enumerate(perm)):
            return frozenset()
        for p, r in enumerate(rs.reflection_perms):
            if r == perm:
                return frozenset([p])
        return frozenset(range(N))
    moved = SpanBasis(rs.rank)
    for j in range(rs.rank):
        img = rs.roots[perm[j]]
        moved.add([a - (1 if k == j else 0) for k, a in enumerate(img)])
    if moved.rank == 0:
        return frozenset()
    return frozenset(i for i in range(N) if moved.contains(rs.posroots[i]))


@dataclass(frozen=True)
class FlatOrbitRecord:
    flat: int
    orbit: int
    normalizer_order: int
    parabolic_order: int
    chambers: int
    nu: int
    nu_direct: int


def flat_orbits(lat: IntersectionLattice, gt: GroupTable) -> list[int]:
    """W-orbit id of every flat (orbits numbered by first occurrence)."""
    rs = lat.rs
    gens = [rs.reflection_perms[s] for s in rs.simple_indices]
    orbit = [-1] * len(lat.flats)
    k = 0
    for i, f in enumerate(lat.flats):
        if orbit[i] >= 0:
            continue
        orbit[i] = k
        stack = [f.hyperplanes]
        while stack:
            hs = stack.pop()
            for g in gens:
                img = _act_on_flat(rs, g, hs)
                j = lat.index[img]
                if orbit[j] < 0:
                    orbit[j] = k
                    stack.append(img)
        k += 1
    return orbit


def flat_orbit_data(lat: IntersectionLattice, gt: GroupTable, strict: bool = True) -> list[FlatOrbitRecord]:
    """Normalizer, parabolic order and nu_X for every flat.

    ``nu`` comes from ``c(A^X) / [N(X) : W_X]``; ``nu_direct`` counts subsets I
    of the simple reflections whose standard parabolic fixes a flat in the
    orbit of X.  With ``strict`` a mismatch raises PropertyViolation.
    """
    rs = lat.rs
    orbit = flat_orbits(lat, gt)
    n_orbits = max(orbit) + 1
    reps = [orbit.index(k) for k in range(n_orbits)]
    sizes = [orbit.count(k) for k in range(n_orbits)]

    direct = [0] * n_orbits
    for r in range(rs.rank + 1):
        for subset in itertools.combinations(rs.simple_indices, r):
            direct[orbit[lat.index[rs.closure(subset)]]] += 1

    per_orbit = []
    for k, rep in enumerate(reps):
        hs = lat.flats[rep].hyperplanes
        normalizer = sum(1 for p in gt.elements if _act_on_flat(rs, p, hs) == hs)
        if normalizer * sizes[k] != gt.order:
            raise PropertyViolation("orbit-stabilizer failed for a flat orbit")
        wx = subgroup_order(rs, hs)
        chambers = chamber_count(lat, lat.flats[rep])
        nu = Fraction(chambers * wx, normalizer)
        if nu.denominator != 1:
            raise PropertyViolation(f"non-integral nu_X = {nu}")
        per_orbit.append((normalizer, wx, chambers, int(nu)))
        if strict and int(nu) != direct[k]:
            raise PropertyViolation(f"nu_X = {nu} but {direct[k]} standard parabolics lie in the orbit")

    out = []
    for i in range(len(lat.flats)):
        k = orbit[i]
        normalizer, wx, chambers, nu = per_orbit[k]
        out.append(FlatOrbitRecord(i, k, normalizer, wx, chambers, nu, direct[k]))
    return out
