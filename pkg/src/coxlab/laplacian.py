"""The W-Laplacian, its pseudodeterminants and the parabolic recursions.

Matrices are written in simple-root coordinates, which are not orthonormal.
The operator ``v -> sum <sigma, v> sigma`` therefore has matrix ``R R^T G``
with ``G`` the Gram matrix; in an orthonormal frame this is the familiar
``R R^T``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from coxlab.arrangement import IntersectionLattice, parabolic_of_flat
from coxlab.errors import PropertyViolation
from coxlab.exactlinalg import IntPolynomial, QMatrix, mat_charpoly, qs
from coxlab.rootsys import RootSystem, decompose_components

__all__ = [
    "PseudoDet",
    "RecursionReport",
    "WLaplacian",
    "binomial_power",
    "laplacian_from_roots",
    "permutation_model_laplacian",
    "pseudodet",
    "root_matrix",
    "rrt_laplacian",
    "t1_slice",
    "verify_cox_number_recursion",
    "verify_parabolic_charpoly",
    "w_laplacian",
]


@dataclass(frozen=True)
class WLaplacian:
    matrix: QMatrix
    roots: frozenset[int] | None = None
    analytic: bool = False

    @property
    def n(self) -> int:
        return self.matrix.nrows


@dataclass(frozen=True)
class PseudoDet:
    value: int
    rank: int


def w_laplacian(rs: RootSystem, roots: Iterable[int] | None = None, verify: bool = False) -> WLaplacian:
    """``sum over reflections of (I - rho(tau))``, kept n x n for parabolic subsets.

    The abstract dihedral model has no coordinates; its full Laplacian is the
    closed form ``m * I_2`` and is flagged ``analytic``.
    """
    subset = None if roots is None else frozenset(rs.hyperplane(i) for i in roots)
    if rs.abstract:
        if subset is not None and subset != frozenset(range(rs.N)):
            raise TypeError(f"{rs.name} has no matrix model for parabolic Laplacians")
        return WLaplacian(QMatrix.identity(2).scale(rs.m), None, analytic=True)
    n = rs.rank
    ident = QMatrix.identity(n)
    acc = QMatrix.zeros(n)
    for p in sorted(range(rs.N) if subset is None else subset):
        acc = acc + (ident - rs.reflections[p])
    if verify:
        other = laplacian_from_roots(rs, subset)
        if other != acc:
            raise PropertyViolation("the two W-Laplacian formulas disagree")
    return WLaplacian(acc, subset)


def laplacian_from_roots(rs: RootSystem, roots: Iterable[int] | None = None) -> QMatrix:
    """Matrix of ``v -> sum <sigma, v> sigma`` over the given positive roots."""
    n = rs.rank
    idx = sorted(range(rs.N) if roots is None else {rs.hyperplane(i) for i in roots})
    rows = [[qs(0)] * n for _ in range(n)]
    for p in idx:
        sigma = rs.posroots[p]
        gs = rs.gram.apply(sigma)
        for i in range(n):
            if sigma[i]:
                for j in range(n):
                    if gs[j]:
                        rows[i][j] = rows[i][j] + sigma[i] * gs[j]
    return QMatrix(rows)


def root_matrix(rs: RootSystem) -> QMatrix:
    """The n x N matrix whose columns are the positive roots."""
    return QMatrix.from_columns(rs.posroots)


def rrt_laplacian(rs: RootSystem) -> QMatrix:
    """``R R^T G``: the root-coordinate form of the Laplacian in a non-orthonormal basis."""
    r = root_matrix(rs)
    return r @ r.transpose() @ rs.gram


def pseudodet(lap: WLaplacian) -> PseudoDet:
    """Lowest-degree nonzero coefficient of ``det(t I + L)`` and the rank it sits at."""
    chi = mat_charpoly(lap.matrix)
    k, c = chi.lowest_nonzero()
    return PseudoDet(c, lap.n - k)


def binomial_power(h: int, n: int) -> IntPolynomial:
    """``(t + h)^n``."""
    return IntPolynomial(math.comb(n, k) * h ** (n - k) for k in range(n + 1))


@dataclass
class RecursionReport:
    name: str
    lhs: IntPolynomial
    rhs: IntPolynomial
    terms: list[tuple[int, int, int]] = field(default_factory=list)  # (flat index, dim, term)
    analytic: bool = False

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def mismatches(self) -> list[int]:
        n = max(self.lhs.degree, self.rhs.degree) + 1
        return [k for k in range(n) if self.lhs.coefficient(k) != self.rhs.coefficient(k)]


def _raise_on_mismatch(rep: RecursionReport):
    bad = rep.mismatches()
    if bad:
        k = bad[0]
        raise PropertyViolation(
            f"{rep.name}: coefficient of t^{k} is {rep.lhs.coefficient(k)} vs {rep.rhs.coefficient(k)}"
        )


def verify_parabolic_charpoly(rs: RootSystem, lat: IntersectionLattice, strict: bool = True) -> RecursionReport:
    """``det(tI + L_W)`` against ``sum_X pdet(L_{W_X}) t^{dim X}``."""
    if rs.abstract:
        # analytic: a line contributes pdet 2 (one root of length^2 2), V contributes 1
        lhs = binomial_power(rs.m, 2)
        rhs = IntPolynomial([rs.m * rs.m, 2 * rs.N, 1])
        rep = RecursionReport("parabolic-charpoly", lhs, rhs, analytic=True)
    else:
        lhs = mat_charpoly(w_laplacian(rs).matrix)
        coeffs = [0] * (rs.rank + 1)
        terms = []
        for i, f in enumerate(lat.flats):
            pd = pseudodet(w_laplacian(rs, parabolic_of_flat(f)))
            if pd.rank != f.codim:
                raise PropertyViolation(f"L_(W_X) has rank {pd.rank} on a codim {f.codim} flat")
            coeffs[f.dim] += pd.value
            terms.append((i, f.dim, pd.value))
        rep = RecursionReport("parabolic-charpoly", lhs, IntPolynomial(coeffs), terms)
    if strict:
        _raise_on_mismatch(rep)
    return rep


def verify_cox_number_recursion(rs: RootSystem, lat: IntersectionLattice, strict: bool = True) -> RecursionReport:
    """``prod_i (t + h_i(W))`` against ``sum_X prod h_i(W_X) t^{dim X}``.

    For irreducible W the left side is ``(t + h)^n``.
    """
    lhs = IntPolynomial([1])
    for h in decompose_components(rs).multiset:
        lhs = lhs * IntPolynomial([h, 1])
    coeffs = [0] * (rs.rank + 1)
    terms = []
    for i, f in enumerate(lat.flats):
        term = decompose_components(rs, parabolic_of_flat(f)).product()
        coeffs[f.dim] += term
        terms.append((i, f.dim, term))
    rep = RecursionReport("coxeter-number-recursion", lhs, IntPolynomial(coeffs), terms)
    if strict:
        _raise_on_mismatch(rep)
    return rep


def t1_slice(rep: RecursionReport) -> tuple[int, int]:
    """Coefficients of ``t^1`` on both sides of a recursion report."""
    return rep.lhs.coefficient(1), rep.rhs.coefficient(1)


def permutation_model_laplacian(n: int) -> QMatrix:
    """W-Laplacian of S_n on R^n with roots ``e_i - e_j`` (orthonormal frame).

    This is the graph Laplacian of the complete graph K_n.
    """
    acc = QMatrix.zeros(n)
    ident = QMatrix.identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            swap = [[1 if (r == c and r not in (i, j)) or {r, c} == {i, j} else 0 for c in range(n)] for r in range(n)]
            acc = acc + (ident - QMatrix(swap))
    return acc
