"""Small dense matrices over an exact field.

Matrices are tuples of row tuples. Entries are ``Fraction`` by default but
every routine only uses ``+ - * /`` and comparison with zero, so the same
code runs over :class:`~gcmirror.scalars.GaussianRational`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DegenerateFormError, DimensionError
from .scalars import to_rational

Matrix = Tuple[Tuple[Fraction, ...], ...]
Vector = Tuple[Fraction, ...]


def as_matrix(rows) -> Matrix:
    """Build an exact matrix from nested sequences of ints/Fractions/strings."""
    m = tuple(tuple(to_rational(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix rows")
    return m


def as_vector(xs) -> Vector:
    return tuple(to_rational(x) for x in xs)


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionError(f"cannot add {shape(a)} and {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionError(f"cannot subtract {shape(a)} and {shape(b)}")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


_ZERO = Fraction(0)


def dot(row, col):
    # skips zero products; structure matrices are mostly zeros
    terms = [x * y for x, y in zip(row, col) if x and y]
    if not terms:
        return _ZERO
    s = terms[0]
    for t in terms[1:]:
        s = s + t
    return s


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    if shape(a)[1] != len(v):
        raise DimensionError(f"cannot apply {shape(a)} matrix to length-{len(v)} vector")
    return tuple(dot(row, v) for row in a)


def chain(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m)
    return out


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def is_antisymmetric(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))


def block(a11: Matrix, a12: Matrix, a21: Matrix, a22: Matrix) -> Matrix:
    if shape(a11)[0] != shape(a12)[0] or shape(a21)[0] != shape(a22)[0]:
        raise DimensionError("block rows do not line up")
    if shape(a11)[1] != shape(a21)[1] or shape(a12)[1] != shape(a22)[1]:
        raise DimensionError("block columns do not line up")
    top = tuple(r1 + r2 for r1, r2 in zip(a11, a12))
    bottom = tuple(r1 + r2 for r1, r2 in zip(a21, a22))
    return top + bottom


def split_blocks(a: Matrix):
    """Split a 2n x 2n matrix into its four n x n blocks (a11, a12, a21, a22)."""
    size, cols = shape(a)
    if size != cols or size % 2:
        raise DimensionError(f"expected a square matrix of even size, got {shape(a)}")
    n = size // 2
    a11 = tuple(r[:n] for r in a[:n])
    a12 = tuple(r[n:] for r in a[:n])
    a21 = tuple(r[:n] for r in a[n:])
    a22 = tuple(r[n:] for r in a[n:])
    return a11, a12, a21, a22


def rref(a: Sequence[Sequence]):
    """Reduced row echelon form. Pivot is the first nonzero entry in column order.

    Returns ``(rows, pivot_columns)``.
    """
    m = [list(r) for r in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv if x else x for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return tuple(tuple(row) for row in m), tuple(pivots)


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a: Sequence[Sequence], one=Fraction(1), zero=Fraction(0)):
    """Basis of the kernel of ``a``, one vector per free column (unnormalized)."""
    reduced, pivots = rref(a)
    n_cols = len(a[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * n_cols
        v[f] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = zero - row[f]
        basis.append(tuple(v))
    return tuple(basis)


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Exact membership test ``v in span(vectors)``."""
    if all(x == 0 for x in v):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [v]) == rank(vectors)


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise DimensionError(f"cannot invert non-square {shape(a)} matrix")
    aug = [tuple(r) + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(a)]
    reduced, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise DegenerateFormError("matrix is singular")
    return tuple(tuple(r[n:]) for r in reduced)


def det(a: Matrix) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise DimensionError("determinant of non-square matrix")
    rows = [list(r) for r in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d
