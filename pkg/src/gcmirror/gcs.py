"""Generalized complex structures on flat tori.

Constructors for the complex-type and symplectic-type structures, B-field
transforms, an exact validator (including Courant involutivity of the
+i-eigenbundle over Q(i)) and, on T^2, extraction of the underlying complex
or B-symplectic data.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from . import linalg
from .errors import DegenerateFormError, DimensionError, InvalidStructureError, RoleError
from .generalized_algebra import (
    GVector,
    SplitFrame,
    ThreeForm,
    TwoForm,
    contract_twice,
    exp_b,
    flat_frame,
    is_orthogonal,
    pairing,
    torus_frame,
)
from .linalg import Matrix
from .scalars import GaussianRational, I, to_rational


class Role(enum.Enum):
    COMPLEX_PARAMETER = "complex"
    SYMPLECTIC_PARAMETER = "symplectic"

    def other(self) -> "Role":
        if self is Role.COMPLEX_PARAMETER:
            return Role.SYMPLECTIC_PARAMETER
        return Role.COMPLEX_PARAMETER


@dataclass(frozen=True)
class Modulus:
    """A point ``b + ia`` of the upper half-plane, tagged with what it parameterizes."""

    b: Fraction
    a: Fraction
    role: Role

    def __post_init__(self):
        object.__setattr__(self, "b", to_rational(self.b))
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "role", Role(self.role))
        if self.a <= 0:
            raise InvalidStructureError(f"imaginary part must be positive, got {self.a}")

    @classmethod
    def complex(cls, b, a) -> "Modulus":
        return cls(b, a, Role.COMPLEX_PARAMETER)

    @classmethod
    def symplectic(cls, b, a) -> "Modulus":
        return cls(b, a, Role.SYMPLECTIC_PARAMETER)

    def as_gaussian(self) -> GaussianRational:
        return GaussianRational(self.b, self.a)

    def __str__(self):
        return str(self.as_gaussian())


def _require_role(m: Modulus, role: Role):
    if m.role is not role:
        raise RoleError(f"expected a {role.value} parameter, got a {m.role.value} one")


@dataclass(frozen=True)
class GCStructure:
    """A 2n x 2n matrix on a split frame.

    Construction only checks the shape; use :func:`validate` for the axioms.
    """

    frame: SplitFrame
    matrix: Matrix

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if linalg.shape(m) != (self.frame.dim, self.frame.dim):
            raise DimensionError(
                f"structure on a {self.frame.dim}-dim frame needs a square matrix of that size, got {linalg.shape(m)}"
            )

    @property
    def n(self) -> int:
        return self.frame.n


class Kind(enum.Enum):
    COMPLEX = "complex"
    SYMPLECTIC = "symplectic"
    B_SYMPLECTIC = "b_symplectic"


@dataclass(frozen=True)
class ClassifiedStructure:
    kind: Kind
    J: Optional[Matrix] = None
    omega: Optional[TwoForm] = None
    B: Optional[TwoForm] = None

    def modulus(self) -> Modulus:
        """Read off the T^2 modulus: tau for complex type, rho otherwise."""
        if self.kind is Kind.COMPLEX:
            return modulus_from_complex(self.J)
        return modulus_from_symplectic(self.omega, self.B)


def default_frame(n: int) -> SplitFrame:
    return torus_frame() if n == 2 else flat_frame(n)


def _square_is_minus_identity(m: Matrix) -> bool:
    n = len(m)
    return linalg.matmul(m, m) == linalg.neg(linalg.identity(n))


def from_complex(J, frame: Optional[SplitFrame] = None) -> GCStructure:
    """Complex-type structure ``[[-J, 0], [0, J^T]]``."""
    J = linalg.as_matrix(J)
    n, m = linalg.shape(J)
    if n != m:
        raise DimensionError("complex structure must be square")
    if not _square_is_minus_identity(J):
        raise InvalidStructureError("J squared is not minus identity")
    frame = frame or default_frame(n)
    mat = linalg.block(linalg.neg(J), linalg.zeros(n), linalg.zeros(n), linalg.transpose(J))
    return GCStructure(frame, mat)


def from_symplectic(omega: TwoForm, frame: Optional[SplitFrame] = None) -> GCStructure:
    """Symplectic-type structure ``[[0, -omega^-1], [omega, 0]]``."""
    n = omega.n
    try:
        inv = linalg.inverse(omega.matrix)
    except DegenerateFormError:
        raise DegenerateFormError("symplectic form is degenerate") from None
    frame = frame or default_frame(n)
    mat = linalg.block(linalg.zeros(n), linalg.neg(inv), omega.matrix, linalg.zeros(n))
    return GCStructure(frame, mat)


def complex_from_modulus(tau: Modulus) -> Matrix:
    """The complex structure ``[[b, -(1+b^2)/a], [a, -b]]`` on C/(Z + tau Z)."""
    _require_role(tau, Role.COMPLEX_PARAMETER)
    b, a = tau.b, tau.a
    return ((b, -(1 + b * b) / a), (a, -b))


def modulus_from_complex(J) -> Modulus:
    J = linalg.as_matrix(J)
    if linalg.shape(J) != (2, 2):
        raise DimensionError("modulus extraction needs a 2x2 complex structure")
    if not _square_is_minus_identity(J):
        raise InvalidStructureError("J squared is not minus identity")
    b, a = J[0][0], J[1][0]
    if a <= 0:
        raise InvalidStructureError(f"wrong orientation: lower-left entry {a} is not positive")
    if J[0][1] != -(1 + b * b) / a or J[1][1] != -b:
        raise InvalidStructureError("matrix is not in the modulus-parameterized family")
    return Modulus.complex(b, a)


def modulus_from_symplectic(omega: TwoForm, B: Optional[TwoForm] = None) -> Modulus:
    """``rho = b + ia`` from ``omega = a*[[0,1],[-1,0]]`` and ``B = b*[[0,1],[-1,0]]``."""
    if omega.n != 2:
        raise DimensionError("modulus extraction needs a 2-form on T^2")
    a = omega.matrix[0][1]
    b = B.matrix[0][1] if B is not None else Fraction(0)
    if a <= 0:
        raise InvalidStructureError(f"symplectic area {a} is not positive")
    return Modulus.symplectic(b, a)


def b_transform(S: GCStructure, B: TwoForm) -> GCStructure:
    """``exp(-B) . S . exp(B)``."""
    if B.n != S.n:
        raise DimensionError(f"2-form on T^{B.n} cannot transform a structure on T^{S.n}")
    return GCStructure(S.frame, linalg.chain(exp_b(-B), S.matrix, exp_b(B)))


def b_symplectic_from_modulus(rho: Modulus) -> GCStructure:
    _require_role(rho, Role.SYMPLECTIC_PARAMETER)
    return b_transform(from_symplectic(TwoForm.standard(rho.a)), TwoForm.standard(rho.b))


def classify(S: GCStructure) -> ClassifiedStructure:
    """Decompose a T^2 structure into complex data or (omega, B).

    Inverts ``exp(-B) J_omega exp(B) = [[-w^-1 B, -w^-1], [w + B w^-1 B, B w^-1]]``
    by ``omega = -A12^-1`` and ``B = -omega A11``, then rebuilds to confirm.
    """
    if S.n != 2:
        raise DimensionError("classification is only defined on T^2")
    a11, a12, a21, a22 = linalg.split_blocks(S.matrix)
    if linalg.is_zero(a12):
        if not linalg.is_zero(a21):
            raise InvalidStructureError("upper-right block vanishes but lower-left does not")
        J = linalg.neg(a11)
        rebuilt = from_complex(J, S.frame)
        if rebuilt.matrix != S.matrix:
            raise InvalidStructureError("diagonal blocks are not -J and J^T")
        return ClassifiedStructure(Kind.COMPLEX, J=J)
    try:
        omega_m = linalg.neg(linalg.inverse(a12))
    except DegenerateFormError:
        raise InvalidStructureError("upper-right block is neither zero nor invertible") from None
    b_m = linalg.neg(linalg.matmul(omega_m, a11))
    try:
        omega, B = TwoForm(omega_m), TwoForm(b_m)
    except DimensionError:
        raise InvalidStructureError("extracted symplectic or B-field data is not antisymmetric") from None
    rebuilt = b_transform(from_symplectic(omega, S.frame), B)
    if rebuilt.matrix != S.matrix:
        raise InvalidStructureError("matrix is not a B-transform of a symplectic structure")
    if B.is_zero():
        return ClassifiedStructure(Kind.SYMPLECTIC, omega=omega, B=B)
    return ClassifiedStructure(Kind.B_SYMPLECTIC, omega=omega, B=B)


def eigenbundle(S: GCStructure) -> Tuple[GVector, ...]:
    """Basis of the +i-eigenspace of ``S``, i.e. the kernel of ``S - i*1`` over Q(i)."""
    size = S.frame.dim
    shifted = [
        [GaussianRational(S.matrix[r][c]) - (I if r == c else 0) for c in range(size)]
        for r in range(size)
    ]
    kernel = linalg.nullspace(shifted, one=GaussianRational(1), zero=GaussianRational(0))
    return tuple(GVector(S.frame, v) for v in kernel)


def _reason(report: "ValidationReport") -> Optional[str]:
    if not report.squares_to_minus_one:
        return "J squared is not minus identity"
    if not report.orthogonal:
        return "J is not orthogonal for the natural pairing"
    if not report.involutive:
        return "i-eigenbundle is not involutive under the Courant bracket"
    return None


@dataclass(frozen=True)
class ValidationReport:
    squares_to_minus_one: bool
    orthogonal: bool
    involutive: bool
    eigenbundle_dim: int
    isotropic: bool
    counterexample: Optional[Tuple[int, int]] = field(default=None)

    @property
    def ok(self) -> bool:
        return self.squares_to_minus_one and self.orthogonal and self.involutive

    @property
    def reason(self) -> Optional[str]:
        return _reason(self)


def validate(S: GCStructure, H: Optional[ThreeForm] = None) -> ValidationReport:
    """Check the axioms exactly. Never raises on a bad structure; the report carries the failures."""
    n = S.n
    if H is None:
        H = ThreeForm.zero(n)
    if H.n != n:
        raise DimensionError(f"3-form on T^{H.n} used with a structure on T^{n}")
    return _validate(S, H)


@lru_cache(maxsize=4096)
def _validate(S: GCStructure, H: ThreeForm) -> ValidationReport:
    n = S.n
    squares = _square_is_minus_identity(S.matrix)
    orth = is_orthogonal(S.matrix)
    L = eigenbundle(S)
    vectors = [v.coeffs for v in L]
    isotropic = all(pairing(L[i], L[j]) == 0 for i in range(len(L)) for j in range(i, len(L)))
    involutive = True
    counterexample = None
    for i, u in enumerate(L):
        for j, v in enumerate(L):
            # the bracket of constant sections is the form i_X i_Y H; complexify bilinearly
            form = contract_twice(u.tangent, v.tangent, H)
            bracket = (GaussianRational(0),) * n + tuple(GaussianRational.coerce(x) for x in form)
            if not linalg.in_span(vectors, bracket):
                involutive = False
                counterexample = (i, j)
                break
        if not involutive:
            break
    return ValidationReport(squares, orth, involutive, len(L), isotropic, counterexample)


def standard_symplectic(n: int) -> TwoForm:
    """Block-diagonal ``[[0,1],[-1,0]] + ... `` on T^n, n even."""
    if n % 2:
        raise DimensionError("symplectic forms need even dimension")
    rows: List[List[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for k in range(0, n, 2):
        rows[k][k + 1] = Fraction(1)
        rows[k + 1][k] = Fraction(-1)
    return TwoForm(rows)
