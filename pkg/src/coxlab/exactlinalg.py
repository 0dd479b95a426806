"""Exact arithmetic over real quadratic fields Q(sqrt d) and small linear algebra.

Everything here is immutable.  A :class:`QScalar` with ``b == 0`` is a plain
rational and is stored with ``d == 0``; it combines freely with any field.
Two irrational operands must share the same ``d``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

from coxlab.errors import FieldMismatchError, NonIntegerRoots, NonIntegralPolynomial

__all__ = [
    "IntPolynomial",
    "QMatrix",
    "QScalar",
    "SpanBasis",
    "mat_charpoly",
    "mat_det",
    "mat_rank",
    "poly_integer_roots",
    "qs",
]


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _join_fields(d1: int, d2: int) -> int:
    if d1 == d2 or d2 == 0:
        return d1
    if d1 == 0:
        return d2
    raise FieldMismatchError(f"cannot mix Q(sqrt {d1}) and Q(sqrt {d2})")


class QScalar:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if b == 0:
            d = 0
        elif not _squarefree(d):
            raise ValueError(f"d={d} must be a squarefree integer >= 2 when b != 0")
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QScalar:
        obj = object.__new__(cls)
        if not b:
            d = 0
        obj.a = a
        obj.b = b
        obj.d = d
        return obj

    @classmethod
    def sqrt(cls, d: int) -> QScalar:
        return cls(0, 1, d)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = qs(other)
        return QScalar._raw(self.a + other.a, self.b + other.b, _join_fields(self.d, other.d))

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = qs(other)
        return QScalar._raw(self.a - other.a, self.b - other.b, _join_fields(self.d, other.d))

    def __rsub__(self, other):
        return qs(other) - self

    def __mul__(self, other):
        other = qs(other)
        if not self.b:
            return QScalar._raw(self.a * other.a, self.a * other.b, other.d)
        if not other.b:
            return QScalar._raw(self.a * other.a, self.b * other.a, self.d)
        d = _join_fields(self.d, other.d)
        return QScalar._raw(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QScalar:
        return QScalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d b^2``."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QScalar:
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("QScalar division by zero")
            return QScalar._raw(1 / self.a, Fraction(0), 0)
        n = self.norm()
        return QScalar._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = qs(other)
        if not other.b:
            if not other.a:
                raise ZeroDivisionError("QScalar division by zero")
            return QScalar._raw(self.a / other.a, self.b / other.a, self.d)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return qs(other) / self

    # comparison ---------------------------------------------------------
    def sign(self) -> int:
        a, b = self.a, self.b
        if not b:
            return (a > 0) - (a < 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with d b^2
        bigger_a = a * a > self.d * b * b
        if a > 0:
            return 1 if bigger_a else -1
        return -1 if bigger_a else 1

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    def __repr__(self):
        if not self.b:
            return f"QScalar({self.a})"
        return f"QScalar({self.a} + {self.b}*sqrt({self.d}))"

    def __str__(self):
        if not self.b:
            return str(self.a)
        sgn = "+" if self.b > 0 else "-"
        return f"{self.a} {sgn} {abs(self.b)}*sqrt({self.d})"


ZERO = QScalar()
ONE = QScalar(1)


def qs(x) -> QScalar:
    """Coerce an int, Fraction or QScalar to QScalar."""
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar._raw(Fraction(x), Fraction(0), 0)
    raise TypeError(f"cannot convert {type(x).__name__} to QScalar")


def _field_of(values: Iterable[QScalar]) -> int:
    d = 0
    for v in values:
        d = _join_fields(d, v.d)
    return d


class QMatrix:
    """Dense immutable matrix of :class:`QScalar` entries."""

    __slots__ = ("ncols", "nrows", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(qs(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> QMatrix:
        c = r if c is None else c
        return cls([[ZERO] * c for _ in range(r)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> QMatrix:
        return cls(list(zip(*cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def field(self) -> int:
        return _field_of(x for r in self.rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[QScalar, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> QMatrix:
        return QMatrix(list(zip(*self.rows)))

    T = property(transpose)

    def __add__(self, other: QMatrix) -> QMatrix:
        self._check_same(other)
        return QMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: QMatrix) -> QMatrix:
        self._check_same(other)
        return QMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> QMatrix:
        return QMatrix([[-x for x in r] for r in self.rows])

    def scale(self, k) -> QMatrix:
        k = qs(k)
        return QMatrix([[k * x for x in r] for r in self.rows])

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out.append([_dot(r, c) for c in cols])
        return QMatrix(out)

    def apply(self, v: Sequence[QScalar]) -> tuple[QScalar, ...]:
        return tuple(_dot(r, v) for r in self.rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"QMatrix([{body}])"


def _dot(u: Sequence[QScalar], v: Sequence[QScalar]) -> QScalar:
    acc = ZERO
    for x, y in zip(u, v):
        if x and y:
            acc = acc + x * y
    return acc


def _echelon(rows: list[list[QScalar]]) -> int:
    """Row-reduce ``rows`` in place; return the rank."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, nrows):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = prow[col].inverse()
        for i in range(rank + 1, nrows):
            x = rows[i][col]
            if x:
                f = x * inv
                ri = rows[i]
                for j in range(col, ncols):
                    if prow[j]:
                        ri[j] = ri[j] - f * prow[j]
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_rank(m: QMatrix) -> int:
    """Rank over Q(sqrt d) by exact Gaussian elimination."""
    _ = m.field  # raises on mixed fields
    rows = [list(r) for r in m.rows]
    return _echelon(rows)


def mat_det(m: QMatrix) -> QScalar:
    """Determinant by exact elimination with partial pivoting on nonzero entries."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    rows = [list(r) for r in m.rows]
    det = ONE
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        prow = rows[col]
        det = det * prow[col]
        inv = prow[col].inverse()
        for i in range(col + 1, n):
            x = rows[i][col]
            if x:
                f = x * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
    return det


class SpanBasis:
    """Incrementally grown echelon basis of a subspace of Q(sqrt d)^n.

    ``reduce`` returns the residual of a vector against the current basis,
    which is zero exactly when the vector lies in the span.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[QScalar]]] = []  # (pivot column, normalized row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[QScalar]) -> list[QScalar]:
        v = [qs(x) for x in v]
        for piv, row in self._rows:
            x = v[piv]
            if x:
                for j in range(piv, self.dim):
                    if row[j]:
                        v[j] = v[j] - x * row[j]
        return v

    def contains(self, v: Sequence[QScalar]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[QScalar]) -> bool:
        """Add ``v`` to the basis; return False if it was already in the span."""
        r = self.reduce(v)
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            return False
        inv = r[piv].inverse()
        r = [x * inv if x else ZERO for x in r]
        # keep rows fully reduced against the new pivot so reduce() stays one pass
        new_rows = []
        for p, row in self._rows:
            x = row[piv]
            if x:
                row = [a - x * b for a, b in zip(row, r)]
            new_rows.append((p, row))
        new_rows.append((piv, r))
        new_rows.sort(key=lambda pr: pr[0])
        self._rows = new_rows
        return True

    def copy(self) -> SpanBasis:
        out = SpanBasis(self.dim)
        out._rows = [(p, list(r)) for p, r in self._rows]
        return out


class IntPolynomial:
    """Polynomial in ``t`` with integer coefficients, ``coefficients[k]`` for ``t^k``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        cs = [int(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def lowest_nonzero(self) -> tuple[int, int]:
        """Return ``(degree, coefficient)`` of the lowest-degree nonzero term."""
        for k, c in enumerate(self.coefficients):
            if c:
                return k, c
        raise ValueError("zero polynomial has no nonzero coefficient")

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(self.coefficient(k) + other.coefficient(k) for k in range(n))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coefficients)
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag} {mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


def _poly_mul(p: list[QScalar], q: list[QScalar]) -> list[QScalar]:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def _hessenberg_charpoly(m: QMatrix) -> list[QScalar]:
    """Coefficients (low to high) of det(t I - m) via reduction to Hessenberg form."""
    n = m.nrows
    a = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if a[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            a[j + 1], a[piv] = a[piv], a[j + 1]
            for r in a:
                r[j + 1], r[piv] = r[piv], r[j + 1]
        inv = a[j + 1][j].inverse()
        for i in range(j + 2, n):
            f = a[i][j] * inv
            if not f:
                continue
            # row_i -= f row_{j+1}; then col_{j+1} += f col_i keeps it a similarity
            a[i] = [x - f * y for x, y in zip(a[i], a[j + 1])]
            for r in a:
                r[j + 1] = r[j + 1] + f * r[i]
    polys: list[list[QScalar]] = [[ONE]]
    for k in range(1, n + 1):
        # p_k = (t - h_kk) p_{k-1} - sum_i h_{k-i,k} * prod(subdiag) * p_{k-i-1}
        p = _poly_mul([-a[k - 1][k - 1], ONE], polys[k - 1])
        prod = ONE
        for i in range(1, k):
            prod = prod * a[k - i][k - i - 1]
            if not prod:
                break
            coef = a[k - i - 1][k - 1] * prod
            if coef:
                q = polys[k - i - 1]
                for idx, c in enumerate(q):
                    p[idx] = p[idx] - coef * c
        polys.append(p)
    return polys[n]


def mat_charpoly(m: QMatrix) -> IntPolynomial:
    """Coefficients of ``det(t I + m)``; raises if any coefficient is not an integer."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    _ = m.field  # raises on mixed fields
    coeffs = _hessenberg_charpoly(-m)
    out = []
    for c in coeffs:
        if not c.is_integer():
            raise NonIntegralPolynomial(f"coefficient {c} of det(tI + M) is not an integer")
        out.append(c.a.numerator)
    return IntPolynomial(out)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _synthetic_div(cs: list[int], r: int) -> tuple[list[int], int]:
    """Divide polynomial (high-to-low ``cs``) by ``t - r``."""
    out = []
    acc = 0
    for c in cs:
        acc = acc * r + c
        out.append(acc)
    return out[:-1], out[-1]


def poly_integer_roots(p: IntPolynomial) -> list[int]:
    """Sorted multiset of integer roots; raises NonIntegerRoots unless p splits over Z."""
    if p.degree < 0:
        raise NonIntegerRoots("zero polynomial")
    roots: list[int] = []
    cs = list(p.coefficients)
    while cs and cs[0] == 0:
        roots.append(0)
        cs.pop(0)
    high = cs[::-1]
    while len(high) > 1:
        for cand in _divisors(high[-1]):
            found = False
            for r in (cand, -cand):
                q, rem = _synthetic_div(high, r)
                if rem == 0:
                    roots.append(r)
                    high = q
                    found = True
                    break
            if found:
                break
        else:
            raise NonIntegerRoots(f"{p} does not split over the integers")
    return sorted(roots)
