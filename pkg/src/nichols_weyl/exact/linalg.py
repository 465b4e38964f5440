"""Dense exact matrices over Q(zeta_N) and fraction-free elimination."""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm as _ilcm
from typing import Optional, Sequence

from .cyclotomic import CycNumber, as_cyc, field_data


class Matrix:
    """Immutable dense matrix with CycNumber entries of one fixed order."""

    __slots__ = ("rows", "nrows", "ncols", "order")

    def __init__(self, rows: Sequence[Sequence], order: Optional[int] = None, ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if order is None:
            order = 1
            for r in rows:
                for x in r:
                    if isinstance(x, CycNumber):
                        order = _ilcm(order, x.order)
        self.order = order
        self.rows = tuple(tuple(as_cyc(x, order) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int, order: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.nrows, m.ncols, m.order = rows, nrows, ncols, order
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, order: int = 1) -> "Matrix":
        z = CycNumber.zero(order)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), nrows, ncols, order)

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "Matrix":
        z, o = CycNumber.zero(order), CycNumber.one(order)
        rows = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls._raw(rows, n, n, order)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, order: int) -> "Matrix":
        if not cols:
            return cls.zeros(nrows, 0, order)
        return cls([[c[i] for c in cols] for i in range(nrows)], order)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def embed(self, order: int) -> "Matrix":
        if order == self.order:
            return self
        return Matrix._raw(tuple(tuple(x.embed(order) for x in r) for r in self.rows), self.nrows, self.ncols, order)

    def _align(self, other: "Matrix") -> tuple["Matrix", "Matrix"]:
        if self.order == other.order:
            return self, other
        n = _ilcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        a, b = self._align(other)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
        rows = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows))
        return Matrix._raw(rows, a.nrows, a.ncols, a.order)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.nrows, self.ncols, self.order)

    def scale(self, c) -> "Matrix":
        if isinstance(c, CycNumber) and c.order != self.order:
            n = _ilcm(c.order, self.order)
            return self.embed(n).scale(c.embed(n))
        rows = tuple(tuple(x * c for x in r) for r in self.rows)
        return Matrix._raw(rows, self.nrows, self.ncols, self.order)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        a, b = self._align(other)
        if a.ncols != b.nrows:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        zero = CycNumber.zero(a.order)
        out = []
        brows = b.rows
        for r in a.rows:
            acc = [zero] * b.ncols
            for k, x in enumerate(r):
                if x:
                    br = brows[k]
                    for j, y in enumerate(br):
                        if y:
                            acc[j] = acc[j] + x * y
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), a.nrows, b.ncols, a.order)

    def apply(self, vec: Sequence) -> tuple:
        zero = CycNumber.zero(self.order)
        out = []
        for r in self.rows:
            acc = zero
            for x, y in zip(r, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else ()
        return Matrix._raw(rows, self.ncols, self.nrows, self.order)

    def kron(self, other: "Matrix") -> "Matrix":
        a, b = self._align(other)
        rows = []
        for ra in a.rows:
            for rb in b.rows:
                rows.append(tuple(x * y for x in ra for y in rb))
        return Matrix._raw(tuple(rows), a.nrows * b.nrows, a.ncols * b.ncols, a.order)

    def trace(self) -> CycNumber:
        acc = CycNumber.zero(self.order)
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._align(other)
        return a.rows == b.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    # -- elimination-based queries -------------------------------------
    def rank(self) -> int:
        return rank(self)

    def det(self) -> CycNumber:
        return det(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def kernel(self) -> list[tuple]:
        return rank_kernel(self)[1]


# ---------------------------------------------------------------------------
# Fraction-free elimination
#
# Rows are first scaled to have integral coefficients; the Bareiss update
# then keeps every entry inside Z[zeta] and every division is exact.  For
# phi(N) == 1 the ring is Z and plain Python ints are used.


def _clear_row(row: Sequence[CycNumber]) -> list:
    den = 1
    for x in row:
        for c in x.coeffs:
            if c.denominator != 1:
                den = _ilcm(den, c.denominator)
    return [x * den if den != 1 else x for x in row]


def _echelon(m: Matrix) -> tuple[list[list], list[int], bool]:
    """Bareiss forward elimination. Returns (rows, pivot columns, integer mode)."""
    intmode = field_data(m.order).phi == 1
    rows = [_clear_row(r) for r in m.rows]
    if intmode:
        rows = [[int(x.coeffs[0]) for x in r] for r in rows]
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    prev = 1 if intmode else CycNumber.one(m.order)
    prev_inv = None
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        a = piv[c]
        if not intmode:
            prev_inv = prev.inverse()
        for i in range(r + 1, nr):
            row = rows[i]
            b = row[c]
            if b:
                if intmode:
                    rows[i] = [(a * row[j] - b * piv[j]) // prev if j > c else 0 for j in range(nc)]
                else:
                    rows[i] = [(a * row[j] - b * piv[j]) * prev_inv if j > c else row[j] * 0 for j in range(nc)]
            elif a != prev:
                if intmode:
                    rows[i] = [(a * x) // prev for x in row]
                else:
                    rows[i] = [(a * x) * prev_inv for x in row]
        prev = a
        pivots.append(c)
        r += 1
    return rows, pivots, intmode


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate along the shorter dimension
    if m.ncols < m.nrows:
        m = m.T
    return len(_echelon(m)[1])


def rank_kernel(m: Matrix) -> tuple[int, list[tuple]]:
    """Rank and a kernel basis, each vector normalized to 1 at its free index
    and 0 at the other free indices (reduced echelon normalization)."""
    order = m.order
    if m.nrows == 0:
        one, zero = CycNumber.one(order), CycNumber.zero(order)
        return 0, [tuple(one if k == j else zero for k in range(m.ncols)) for j in range(m.ncols)]
    rows, pivots, intmode = _echelon(m)
    rk = len(pivots)
    nc = m.ncols
    pivset = set(pivots)
    free = [j for j in range(nc) if j not in pivset]
    if intmode:
        conv = lambda x: Fraction(x)  # noqa: E731
    else:
        conv = lambda x: x  # noqa: E731
    basis = []
    for f in free:
        x: list = [Fraction(0) if intmode else CycNumber.zero(order)] * nc
        x[f] = Fraction(1) if intmode else CycNumber.one(order)
        for r in range(rk - 1, -1, -1):
            p = pivots[r]
            row = rows[r]
            acc = Fraction(0) if intmode else CycNumber.zero(order)
            for c in range(p + 1, nc):
                if row[c] and x[c]:
                    acc = acc + conv(row[c]) * x[c]
            x[p] = -acc / conv(row[p])
        if intmode:
            basis.append(tuple(CycNumber._raw(order, (v,)) for v in x))
        else:
            basis.append(tuple(x))
    return rk, basis


def det(m: Matrix) -> CycNumber:
    if m.nrows != m.ncols:
        raise ValueError("determinant of non-square matrix")
    n = m.nrows
    if n == 0:
        return CycNumber.one(m.order)
    # Gaussian elimination over the field; sign tracked through swaps
    rows = [list(r) for r in m.rows]
    result = CycNumber.one(m.order)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return CycNumber.zero(m.order)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        piv = rows[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [x - f * y if j >= c else x for j, (x, y) in enumerate(zip(rows[i], rows[c]))]
    return result


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse of non-square matrix")
    zero, one = CycNumber.zero(m.order), CycNumber.one(m.order)
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        rows[c], rows[p] = rows[p], rows[c]
        inv = rows[c][c].inverse()
        rows[c] = [x * inv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return Matrix._raw(tuple(tuple(r[n:]) for r in rows), n, n, m.order)


def independent_columns(vectors: Sequence[Sequence[CycNumber]], length: int, order: int) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    if not vectors:
        return []
    m = Matrix._raw(tuple(tuple(v[i] for v in vectors) for i in range(length)), length, len(vectors), order)
    return _echelon(m)[1]


def solve_in_span(basis_cols: Matrix, targets: Matrix) -> Matrix:
    """Coefficients X with basis_cols @ X == targets; basis_cols must have full column rank.

    Raises ValueError when some target is not in the span.
    """
    d, r = basis_cols.shape
    aug = Matrix._raw(
        tuple(basis_cols.rows[i] + targets.rows[i] for i in range(d)), d, r + targets.ncols, basis_cols.order
    )
    rows = [list(x) for x in aug.rows]
    nc = r + targets.ncols
    pr = 0
    for c in range(r):
        p = next((i for i in range(pr, d) if rows[i][c]), None)
        if p is None:
            raise ValueError("basis columns are dependent")
        rows[pr], rows[p] = rows[p], rows[pr]
        inv = rows[pr][c].inverse()
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(d):
            if i != pr and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        pr += 1
    for i in range(r, d):
        if any(rows[i][r:nc]):
            raise ValueError("target not in span")
    return Matrix._raw(tuple(tuple(rows[i][r:]) for i in range(r)), r, targets.ncols, basis_cols.order)


class IntertwinerInconclusive(RuntimeError):
    """The commutant is larger than one-dimensional and the bounded search found no invertible element."""


def commutant(As: Sequence[Matrix], Bs: Sequence[Matrix]) -> list[Matrix]:
    """Basis of {T : T A_k = B_k T for all k}, T of shape (dim B, dim A)."""
    if len(As) != len(Bs):
        raise ValueError("need the same number of matrices on both sides")
    if not As:
        raise ValueError("need at least one pair")
    order = _ilcm(*(a.order for a in As), *(b.order for b in Bs))
    As = [a.embed(order) for a in As]
    Bs = [b.embed(order) for b in Bs]
    da, db = As[0].nrows, Bs[0].nrows
    zero = CycNumber.zero(order)
    eqs = []
    # unknown T[p][q] sits at index p*da + q
    for A, B in zip(As, Bs):
        for p in range(db):
            for q in range(da):
                row = [zero] * (db * da)
                # (T A)[p][q] = sum_s T[p][s] A[s][q]
                for s in range(da):
                    if A.rows[s][q]:
                        row[p * da + s] = row[p * da + s] + A.rows[s][q]
                # (B T)[p][q] = sum_s B[p][s] T[s][q]
                for s in range(db):
                    if B.rows[p][s]:
                        row[s * da + q] = row[s * da + q] - B.rows[p][s]
                if any(row):
                    eqs.append(row)
    if not eqs:
        eqs = [[zero] * (db * da)]
    _, ker = rank_kernel(Matrix._raw(tuple(tuple(r) for r in eqs), len(eqs), db * da, order))
    return [Matrix._raw(tuple(tuple(v[p * da:(p + 1) * da]) for p in range(db)), db, da, order) for v in ker]


def solve_intertwiner(As: Sequence[Matrix], Bs: Sequence[Matrix], grid_limit: int = 20000) -> Optional[Matrix]:
    """An invertible T with T A_k T^-1 = B_k for all k, or None if none exists.

    det restricted to the commutant is a polynomial of degree n = dim in k
    coordinates.  If it is nonzero anywhere it is nonzero somewhere on the
    grid {0..n}^k, so scanning that grid decides existence exactly.  A few
    generic points are tried first; when the grid exceeds grid_limit points
    and those fail, the search gives up with IntertwinerInconclusive.
    """
    if As[0].nrows != Bs[0].nrows:
        return None
    basis = commutant(As, Bs)
    if not basis:
        return None
    if len(basis) == 1:
        return basis[0] if det(basis[0]) else None
    n, k = As[0].nrows, len(basis)

    def combo(coeffs):
        t = None
        for c, b in zip(coeffs, basis):
            if c:
                t = b.scale(c) if t is None else t + b.scale(c)
        return t

    generic = [tuple(range(1, k + 1)), (1,) * k, tuple((3 * i * i + 1) % 7 + 1 for i in range(k))]
    for coeffs in generic:
        t = combo(coeffs)
        if det(t):
            return t
    if (n + 1) ** k > grid_limit:
        raise IntertwinerInconclusive(f"no invertible element found in a {k}-dimensional commutant")
    for coeffs in itertools.product(range(n + 1), repeat=k):
        if any(coeffs):
            t = combo(coeffs)
            if det(t):
                return t
    return None


def matrix_from_ints(values: Sequence[Sequence], order: int = 1) -> Matrix:
    return Matrix(values, order)
