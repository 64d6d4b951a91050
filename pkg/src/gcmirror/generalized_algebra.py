"""Invariant sections of the generalized tangent bundle of a flat torus.

A section is stored by its constant coefficients over a split frame ordered
``[base tangent, fiber tangent, base cotangent, fiber cotangent]``. Because
coefficients are constant, every derivative term of the Courant bracket
drops out and only the H-twist survives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import DimensionError
from .linalg import Matrix
from .scalars import GaussianRational, to_rational

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SplitFrame:
    """Ordered basis of TM + T*M for a torus split into base and fiber directions."""

    base_dim: int
    fiber_dim: int
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.base_dim < 0 or self.fiber_dim < 0:
            raise DimensionError("frame dimensions must be non-negative")
        if not self.labels:
            n = self.n
            names = [f"x{i + 1}" for i in range(n)]
            labels = tuple(f"d/d{x}" for x in names) + tuple(f"d{x}" for x in names)
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != 2 * self.n:
            raise DimensionError(f"frame needs {2 * self.n} labels, got {len(self.labels)}")

    @property
    def n(self) -> int:
        return self.base_dim + self.fiber_dim

    @property
    def dim(self) -> int:
        return 2 * self.n

    def pairing_matrix(self) -> Matrix:
        return pairing_matrix(self.n)


def torus_frame(fiber: str = "theta", base: str = "x") -> SplitFrame:
    """The T^2 frame viewed as a circle bundle over a circle."""
    return SplitFrame(1, 1, (f"d/d{base}", f"d/d{fiber}", f"d{base}", fiber))


def flat_frame(n: int) -> SplitFrame:
    """A frame for T^n with no base/fiber split."""
    return SplitFrame(n, 0)


def pairing_matrix(n: int) -> Matrix:
    """Gram matrix of the natural pairing: 1/2 on the tangent/cotangent off-diagonal."""
    return tuple(
        tuple(HALF if (j == i + n or i == j + n) else Fraction(0) for j in range(2 * n))
        for i in range(2 * n)
    )


@dataclass(frozen=True)
class GVector:
    """Invariant section ``X + xi``; ``coeffs[:n]`` is X, ``coeffs[n:]`` is xi."""

    frame: SplitFrame
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(c if isinstance(c, GaussianRational) else to_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.frame.dim:
            raise DimensionError(
                f"frame of dimension {self.frame.dim} needs {self.frame.dim} coefficients, got {len(coeffs)}"
            )

    @property
    def tangent(self) -> tuple:
        return self.coeffs[: self.frame.n]

    @property
    def form(self) -> tuple:
        return self.coeffs[self.frame.n :]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "GVector") -> "GVector":
        _same_frame(self, other)
        return GVector(self.frame, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GVector") -> "GVector":
        _same_frame(self, other)
        return GVector(self.frame, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GVector":
        return GVector(self.frame, tuple(-x for x in self.coeffs))

    def __rmul__(self, c) -> "GVector":
        return GVector(self.frame, tuple(c * x for x in self.coeffs))

    def describe(self) -> str:
        terms = [f"{c}*{lab}" for c, lab in zip(self.coeffs, self.frame.labels) if c != 0]
        return " + ".join(terms) if terms else "0"


def basis_vector(frame: SplitFrame, index: int) -> GVector:
    return GVector(frame, tuple(Fraction(int(i == index)) for i in range(frame.dim)))


def basis(frame: SplitFrame) -> Tuple[GVector, ...]:
    return tuple(basis_vector(frame, i) for i in range(frame.dim))


@dataclass(frozen=True)
class TwoForm:
    """Constant 2-form, stored as an antisymmetric n x n matrix."""

    matrix: Matrix

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not linalg.is_antisymmetric(m):
            raise DimensionError("2-form matrix must be square and antisymmetric")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def zero(cls, n: int) -> "TwoForm":
        return cls(linalg.zeros(n))

    @classmethod
    def standard(cls, coefficient=1) -> "TwoForm":
        """``c * [[0, 1], [-1, 0]]`` on a 2-torus."""
        c = to_rational(coefficient)
        return cls(((Fraction(0), c), (-c, Fraction(0))))

    def __neg__(self) -> "TwoForm":
        return TwoForm(linalg.neg(self.matrix))

    def __add__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(linalg.add(self.matrix, other.matrix))

    def is_zero(self) -> bool:
        return linalg.is_zero(self.matrix)


@dataclass(frozen=True)
class ThreeForm:
    """Constant totally antisymmetric 3-form ``H[i][j][k]`` (0-based indices)."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        n = self.n
        c = tuple(tuple(tuple(to_rational(x) for x in row) for row in plane) for plane in self.coeffs)
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise DimensionError(f"3-form on T^{n} needs an {n}x{n}x{n} array")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    v = c[i][j][k]
                    if v != -c[j][i][k] or v != -c[i][k][j]:
                        raise DimensionError("3-form coefficients must be totally antisymmetric")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, n: int) -> "ThreeForm":
        z = Fraction(0)
        return cls(n, tuple(tuple(tuple(z for _ in range(n)) for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_components(cls, n: int, components: Mapping[Tuple[int, int, int], object]) -> "ThreeForm":
        """Antisymmetrize ``{(i, j, k): value}`` (0-based, distinct indices) into a full array."""
        h = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), value in components.items():
            if len({i, j, k}) < 3:
                raise DimensionError(f"repeated index in 3-form component {(i, j, k)}")
            if not all(0 <= t < n for t in (i, j, k)):
                raise DimensionError(f"3-form index out of range for n={n}: {(i, j, k)}")
            v = to_rational(value)
            for perm in permutations(range(3)):
                idx = tuple((i, j, k)[p] for p in perm)
                sign = _perm_sign(perm)
                h[idx[0]][idx[1]][idx[2]] = sign * v
        return cls(n, h)

    def is_zero(self) -> bool:
        return all(x == 0 for p in self.coeffs for r in p for x in r)


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _same_frame(u: GVector, v: GVector):
    if u.frame != v.frame:
        raise DimensionError("sections live in different frames")


def pairing(u: GVector, v: GVector):
    """Natural split-signature pairing ``<X + xi, Y + eta> = (eta(X) + xi(Y)) / 2``.

    Bilinear (not Hermitian) when the coefficients are Gaussian rationals.
    """
    _same_frame(u, v)
    return (linalg.dot(u.tangent, v.form) + linalg.dot(v.tangent, u.form)) * HALF


def contract_twice(x: Sequence, y: Sequence, h: ThreeForm) -> tuple:
    """The 1-form ``i_X i_Y H``: component k is ``sum_ij X[i] Y[j] H[i][j][k]``."""
    n = h.n
    out = []
    for k in range(n):
        s = Fraction(0)
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                hk = h.coeffs[i][j][k]
                if hk != 0 and y[j] != 0:
                    s = s + x[i] * y[j] * hk
        out.append(s)
    return tuple(out)


def courant_bracket(u: GVector, v: GVector, h: Optional[ThreeForm] = None) -> GVector:
    """H-twisted Courant bracket of two constant sections.

    Lie bracket, Lie derivative and exterior derivative all vanish on constant
    coefficients, leaving a pure form part ``i_X i_Y H``.
    """
    _same_frame(u, v)
    n = u.frame.n
    if h is None:
        h = ThreeForm.zero(n)
    if h.n != n:
        raise DimensionError(f"3-form on T^{h.n} used with sections on T^{n}")
    form = contract_twice(u.tangent, v.tangent, h)
    zero = Fraction(0)
    return GVector(u.frame, (zero,) * n + form)


def exp_b(b: TwoForm) -> Matrix:
    """The orthogonal automorphism ``[[1, 0], [B, 1]]``."""
    n = b.n
    return linalg.block(linalg.identity(n), linalg.zeros(n), b.matrix, linalg.identity(n))


def apply_map(m: Matrix, u: GVector) -> GVector:
    if linalg.shape(m) != (u.frame.dim, u.frame.dim):
        raise DimensionError(f"{linalg.shape(m)} matrix cannot act on a {u.frame.dim}-dim frame")
    return GVector(u.frame, linalg.matvec(m, u.coeffs))


def is_orthogonal(m: Matrix) -> bool:
    """True iff ``M^T P M == P`` for the natural pairing matrix P."""
    rows, cols = linalg.shape(m)
    if rows != cols or rows % 2:
        raise DimensionError(f"orthogonality needs a square matrix of even size, got {(rows, cols)}")
    p = pairing_matrix(rows // 2)
    return linalg.chain(linalg.transpose(m), p, m) == p
