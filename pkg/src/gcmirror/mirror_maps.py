"""Moduli-level mirror maps for elliptic curves, and a cross-check against matrix transport."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Tuple

from .errors import GeometryError, InvalidStructureError, RoleError
from .gcs import (
    Modulus,
    Role,
    b_symplectic_from_modulus,
    classify,
    complex_from_modulus,
    from_complex,
)
from .scalars import to_rational
from .tduality import DualityData, transport


@dataclass(frozen=True)
class MirrorPair:
    source: Modulus
    target: Modulus

    def __post_init__(self):
        if self.source.role is self.target.role:
            raise RoleError("a mirror pair must exchange complex and symplectic roles")


def _check(m: Modulus, role: Role):
    if m.role is not role:
        raise RoleError(f"expected a {role.value} parameter, got a {m.role.value} one")
    if m.a <= 0:
        raise InvalidStructureError("modulus must lie in the upper half-plane")


def tau_to_rho(tau: Modulus) -> Modulus:
    """``tau = b + ia  ->  rho = ab/(1+b^2) + i a/(1+b^2)``."""
    _check(tau, Role.COMPLEX_PARAMETER)
    b, a = tau.b, tau.a
    d = 1 + b * b
    return Modulus.symplectic(a * b / d, a / d)


def rho_to_tau(rho: Modulus) -> Modulus:
    """``rho = b + ia  ->  tau = b/a + i(a + b^2/a)``."""
    _check(rho, Role.SYMPLECTIC_PARAMETER)
    b, a = rho.b, rho.a
    return Modulus.complex(b / a, a + b * b / a)


def mirror(m: Modulus) -> MirrorPair:
    target = tau_to_rho(m) if m.role is Role.COMPLEX_PARAMETER else rho_to_tau(m)
    return MirrorPair(m, target)


def syz_mirror(gamma, lam) -> Tuple[Fraction, Fraction]:
    """Swap the complex parameter ``gamma`` (tau = i*gamma) with the symplectic area ``lam``."""
    gamma, lam = to_rational(gamma), to_rational(lam)
    if gamma <= 0 or lam <= 0:
        raise InvalidStructureError("both the complex parameter and the area must be positive")
    return lam, gamma


@dataclass(frozen=True)
class ConsistencyReport:
    passed: bool
    source: Modulus
    closed_form: Modulus
    pipeline: Optional[Modulus]
    error: Optional[str] = None


def consistency_check(m: Modulus, dd: Optional[DualityData] = None) -> ConsistencyReport:
    """Compare the closed-form map with build -> transport -> classify -> read off."""
    dd = dd or DualityData()
    closed = mirror(m).target
    try:
        if m.role is Role.COMPLEX_PARAMETER:
            S = from_complex(complex_from_modulus(m))
        else:
            S = b_symplectic_from_modulus(m)
        S = replace(S, frame=dd.frame_m)
        pipeline = classify(transport(S, dd)).modulus()
    except GeometryError as exc:
        return ConsistencyReport(False, m, closed, None, str(exc))
    return ConsistencyReport(pipeline == closed, m, closed, pipeline)
