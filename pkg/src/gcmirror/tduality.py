"""T-duality isomorphism between invariant sections on dual 2-tori.

Both tori are circle bundles over a common base circle. The correspondence
space is the 3-torus with invariant frame
``[d/dx, d/dtheta, d/dtheta~, dx, theta, theta~]`` carrying
``F = f * theta ^ theta~``. The map is: lift the tangent part so the
transformed form becomes basic, apply the B-transform by ``-F``, push
forward to the dual torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import DegenerateFormError, DimensionError, InvalidStructureError
from .gcs import GCStructure, validate
from .generalized_algebra import (
    GVector,
    SplitFrame,
    TwoForm,
    basis,
    courant_bracket,
    exp_b,
    is_orthogonal,
    pairing,
    torus_frame,
)
from .linalg import Matrix
from .scalars import format_rational, to_rational

CORRESPONDENCE_FRAME = SplitFrame(
    1, 2, ("d/dx", "d/dtheta", "d/dtheta~", "dx", "theta", "theta~")
)

# correspondence-frame indices
_X, _TH, _THD, _DX, _THETA, _THETAD = range(6)


@dataclass(frozen=True)
class DualityData:
    frame_m: SplitFrame = field(default_factory=lambda: torus_frame("theta"))
    frame_mdual: SplitFrame = field(default_factory=lambda: torus_frame("theta~"))
    f_coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "f_coefficient", to_rational(self.f_coefficient))
        if self.f_coefficient == 0:
            raise DegenerateFormError("F = f theta^theta~ is degenerate for f = 0")
        for fr in (self.frame_m, self.frame_mdual):
            if (fr.base_dim, fr.fiber_dim) != (1, 1):
                raise DimensionError("T-dual tori must be circle bundles over a circle")

    def reversed(self) -> "DualityData":
        """The same duality read from the dual side."""
        return DualityData(self.frame_mdual, self.frame_m, self.f_coefficient)

    def correspondence_form(self) -> TwoForm:
        f = self.f_coefficient
        m = [[Fraction(0)] * 3 for _ in range(3)]
        m[1][2] = f
        m[2][1] = -f
        return TwoForm(m)


@dataclass(frozen=True)
class CorrespondenceVector:
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(to_rational(x) for x in self.coeffs)
        if len(c) != 6:
            raise DimensionError(f"correspondence vectors have 6 coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    def as_gvector(self) -> GVector:
        return GVector(CORRESPONDENCE_FRAME, self.coeffs)


def _require_frame(u: GVector, frame: SplitFrame):
    if u.frame != frame:
        raise DimensionError("section is not in the source frame of this duality")


def _minus_f_transform(dd: DualityData) -> Matrix:
    return exp_b(-dd.correspondence_form())


def lift(u: GVector, dd: Optional[DualityData] = None) -> CorrespondenceVector:
    """Unique lift ``X + a d/dtheta + c d/dtheta~ + xi + b theta`` making ``p*xi - F(X^)`` basic.

    Basic means no ``theta`` component after the ``-F`` transform. That
    component is affine in ``c``; solving it is possible exactly because F is
    nondegenerate on the fibers.
    """
    dd = dd or DualityData()
    _require_frame(u, dd.frame_m)
    x, a, xi, b = u.coeffs
    e = _minus_f_transform(dd)
    # theta-component after transform: b + e[THETA][TH]*a + e[THETA][THD]*c
    coeff_c = e[_THETA][_THD]
    if coeff_c == 0:
        raise DegenerateFormError("no lift exists: F is degenerate on the fibers")
    c = -(b + e[_THETA][_TH] * a + e[_THETA][_X] * x) / coeff_c
    return CorrespondenceVector((x, a, c, xi, b, Fraction(0)))


def phi_apply(u: GVector, dd: Optional[DualityData] = None) -> GVector:
    """Pull back, B-transform by ``-F`` on the correspondence space, push forward."""
    dd = dd or DualityData()
    hat = lift(u, dd)
    w = linalg.matvec(_minus_f_transform(dd), hat.coeffs)
    if w[_THETA] != 0:
        raise InvalidStructureError("lifted form is not basic")
    # pushforward kills d/dtheta; the basic form descends as dx, theta~ components
    return GVector(dd.frame_mdual, (w[_X], w[_THD], w[_DX], w[_THETAD]))


def phi_matrix(dd: Optional[DualityData] = None) -> Matrix:
    """Closed form: fixes the base slots, sends d/dtheta to f theta~ and theta to d/dtheta~ / f."""
    dd = dd or DualityData()
    f = dd.f_coefficient
    m = [[Fraction(0)] * 4 for _ in range(4)]
    m[0][0] = Fraction(1)
    m[2][2] = Fraction(1)
    m[1][3] = 1 / f
    m[3][1] = f
    return linalg.as_matrix(m)


def transport(S: GCStructure, dd: Optional[DualityData] = None) -> GCStructure:
    """Carry ``S`` across the duality as ``phi^-1 . S . phi``."""
    dd = dd or DualityData()
    if S.frame != dd.frame_m:
        raise DimensionError("structure is not on the source torus of this duality")
    phi = phi_matrix(dd)
    out = GCStructure(dd.frame_mdual, linalg.chain(linalg.inverse(phi), S.matrix, phi))
    report = validate(out)
    if not report.ok:
        raise InvalidStructureError(f"transported structure is invalid: {report.reason}")
    return out


@dataclass
class IsomorphismReport:
    passed: bool = True
    checked: int = 0
    counterexamples: List[dict] = field(default_factory=list)


def verify_isomorphism(
    dd: Optional[DualityData] = None,
    samples: Optional[Sequence[Tuple[GVector, GVector]]] = None,
) -> IsomorphismReport:
    """Check pairing and bracket preservation on each sample pair.

    With no samples given, all 16 pairs of the source basis are used. Both
    tori carry H = 0, so bracket preservation compares zero with zero.
    """
    dd = dd or DualityData()
    if samples is None:
        bs = basis(dd.frame_m)
        samples = [(u, v) for u in bs for v in bs]
    report = IsomorphismReport()
    for u, v in samples:
        pu, pv = phi_apply(u, dd), phi_apply(v, dd)
        lhs, rhs = pairing(pu, pv), pairing(u, v)
        report.checked += 1
        if lhs != rhs:
            report.passed = False
            report.counterexamples.append(
                {"u": u.describe(), "v": v.describe(), "check": "pairing",
                 "lhs": format_rational(lhs), "rhs": format_rational(rhs)}
            )
        bracket_lhs = courant_bracket(pu, pv)
        bracket_rhs = phi_apply(courant_bracket(u, v), dd)
        if bracket_lhs != bracket_rhs:
            report.passed = False
            report.counterexamples.append(
                {"u": u.describe(), "v": v.describe(), "check": "bracket",
                 "lhs": bracket_lhs.describe(), "rhs": bracket_rhs.describe()}
            )
    return report


def phi_is_orthogonal(dd: Optional[DualityData] = None) -> bool:
    return is_orthogonal(phi_matrix(dd or DualityData()))
