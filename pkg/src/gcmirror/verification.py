"""Executable property suites behind ``gcmirror verify``.

Each suite returns a JSON-ready report
``{"suite", "passed", "cases": [...], "counterexample"}``.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from . import linalg
from .errors import ParseError
from .gcs import (
    Kind,
    Modulus,
    b_symplectic_from_modulus,
    b_transform,
    classify,
    complex_from_modulus,
    eigenbundle,
    from_complex,
    from_symplectic,
    modulus_from_complex,
    standard_symplectic,
    validate,
)
from .generalized_algebra import (
    GVector,
    ThreeForm,
    TwoForm,
    courant_bracket,
    exp_b,
    flat_frame,
    is_orthogonal,
    pairing,
    pairing_matrix,
)
from .mirror_maps import consistency_check, rho_to_tau, syz_mirror, tau_to_rho
from .scalars import GaussianRational, format_rational
from .serialize import matrix_to_json
from .tduality import DualityData, phi_apply, phi_matrix, transport, verify_isomorphism

DEFAULT_SEED = 20240917

FIXED_MODULI = (
    (Fraction(1), Fraction(1)),
    (Fraction(2), Fraction(1)),
    (Fraction(1), Fraction(2)),
    (Fraction(1, 2), Fraction(3)),
    (Fraction(0), Fraction(5)),
)


def resolve_seed(seed: Optional[int] = None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("GCG_SEED")
    if env is not None and env.strip():
        try:
            return int(env.strip(), 10)
        except ValueError:
            raise ParseError(f"GCG_SEED must be a decimal integer, got {env!r}") from None
    return DEFAULT_SEED


def random_rational(rng: random.Random, lo=-20, hi=20, max_den=12) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_moduli(rng: random.Random, count: int):
    """``count`` pairs ``(b, a)`` with ``a > 0``."""
    return [(random_rational(rng), random_rational(rng, 1, 30)) for _ in range(count)]


def random_two_form(rng: random.Random, n: int) -> TwoForm:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = random_rational(rng)
            m[i][j], m[j][i] = v, -v
    return TwoForm(m)


def random_gvector(rng: random.Random, frame) -> GVector:
    return GVector(frame, tuple(random_rational(rng) for _ in range(frame.dim)))


def transported_complex_expected(b: Fraction, a: Fraction):
    """The transported complex-type matrix for tau = b + ia, written out entry by entry."""
    c = (1 + b * b) / a
    z = Fraction(0)
    return linalg.as_matrix([[-b, z, z, c], [z, -b, -c, z], [z, a, b, z], [-a, z, z, b]])


class Suite:
    def __init__(self, name: str):
        self.name = name
        self.cases: List[dict] = []
        self.counterexample: Optional[dict] = None

    def check(self, case: str, items: Iterable, predicate: Callable[..., bool], describe=None):
        """Run ``predicate`` over ``items``; record the first failure as the counterexample."""
        checked = 0
        ok = True
        for item in items:
            checked += 1
            if not predicate(item):
                ok = False
                if self.counterexample is None:
                    self.counterexample = {"case": case, "input": describe(item) if describe else repr(item)}
                break
        self.cases.append({"name": case, "passed": ok, "checked": checked})
        return ok

    def report(self) -> dict:
        return {
            "suite": self.name,
            "passed": all(c["passed"] for c in self.cases),
            "cases": self.cases,
            "counterexample": self.counterexample,
        }


def _mod(bs):
    b, a = bs
    return f"{format_rational(b)}+{format_rational(a)}i"


def suite_algebra(rng: random.Random) -> dict:
    s = Suite("algebra")
    for n in (2, 3, 4):
        s.check(f"pairing matrix invertible n={n}", [n], lambda k: linalg.det(pairing_matrix(k)) != 0)
    frame4 = flat_frame(4)
    pairs = [(random_gvector(rng, frame4), random_gvector(rng, frame4)) for _ in range(100)]
    s.check("pairing symmetric", pairs, lambda p: pairing(*p) == pairing(p[1], p[0]),
            lambda p: [matrix_to_json([p[0].coeffs]), matrix_to_json([p[1].coeffs])])
    h = ThreeForm.from_components(4, {(0, 1, 2): random_rational(rng), (0, 1, 3): random_rational(rng),
                                      (1, 2, 3): random_rational(rng)})
    s.check("bracket antisymmetric", pairs,
            lambda p: (courant_bracket(p[0], p[1], h) + courant_bracket(p[1], p[0], h)).is_zero())
    forms = [(random_two_form(rng, 4), random_two_form(rng, 4)) for _ in range(50)]
    s.check("exp(B1) exp(B2) = exp(B1 + B2)", forms,
            lambda p: linalg.matmul(exp_b(p[0]), exp_b(p[1])) == exp_b(p[0] + p[1]))
    s.check("exp(B) exp(-B) = 1", forms,
            lambda p: linalg.matmul(exp_b(p[0]), exp_b(-p[0])) == linalg.identity(4 * 2))
    s.check("exp(B) orthogonal", forms, lambda p: is_orthogonal(exp_b(p[0])))
    return s.report()


def suite_gcs(rng: random.Random) -> dict:
    s = Suite("gcs")
    moduli = list(FIXED_MODULI) + random_moduli(rng, 50)
    s.check("complex structures valid", moduli,
            lambda m: validate(from_complex(complex_from_modulus(Modulus.complex(*m)))).ok, _mod)
    s.check("modulus round trip", moduli,
            lambda m: modulus_from_complex(complex_from_modulus(Modulus.complex(*m))) == Modulus.complex(*m), _mod)

    def classify_complex(m):
        J = complex_from_modulus(Modulus.complex(*m))
        c = classify(from_complex(J))
        return c.kind is Kind.COMPLEX and c.J == J

    s.check("classify recovers J", moduli, classify_complex, _mod)

    def classify_bsymp(m):
        b, a = m
        c = classify(b_symplectic_from_modulus(Modulus.symplectic(b, a)))
        expected_kind = Kind.SYMPLECTIC if b == 0 else Kind.B_SYMPLECTIC
        return c.kind is expected_kind and c.omega == TwoForm.standard(a) and c.B == TwoForm.standard(b)

    s.check("classify recovers omega and B", moduli, classify_bsymp, _mod)
    s.check("B-symplectic structures valid", moduli,
            lambda m: validate(b_symplectic_from_modulus(Modulus.symplectic(*m))).ok, _mod)

    def b_preserves(m):
        S = from_complex(complex_from_modulus(Modulus.complex(*m)))
        B = random_two_form(rng, 2)
        T = b_transform(S, B)
        r = validate(T)
        return r.ok and T.matrix == S.matrix and b_transform(T, -B) == S

    s.check("B-transform fixes complex type on T^2", moduli, b_preserves, _mod)

    def eigen(m):
        L = eigenbundle(b_symplectic_from_modulus(Modulus.symplectic(*m)))
        return len(L) == 2 and all(pairing(u, v) == 0 for u in L for v in L)

    s.check("eigenbundle has dimension n and is isotropic", moduli, eigen, _mod)
    return s.report()


def suite_isomorphism(rng: random.Random) -> dict:
    s = Suite("isomorphism")
    for f in (Fraction(1), Fraction(2), Fraction(1, 3)):
        dd = DualityData(f_coefficient=f)
        tag = format_rational(f)
        rep = verify_isomorphism(dd)
        s.check(f"basis pairs preserve pairing and bracket f={tag}", [rep], lambda r: r.passed and r.checked == 16,
                lambda r: r.counterexamples[:1])
        s.check(f"phi orthogonal f={tag}", [dd], lambda d: is_orthogonal(phi_matrix(d)))
        frame = dd.frame_m
        vectors = [random_gvector(rng, frame) for _ in range(20)]
        s.check(f"lift construction matches matrix f={tag}", vectors,
                lambda u: phi_apply(u, dd).coeffs == linalg.matvec(phi_matrix(dd), u.coeffs))
    s.check("phi is an involution", [DualityData()],
            lambda d: linalg.matmul(phi_matrix(d), phi_matrix(d)) == linalg.identity(4))
    return s.report()


def suite_mirror_matrix(rng: random.Random) -> dict:
    s = Suite("mirror_matrix")
    moduli = list(FIXED_MODULI) + random_moduli(rng, 50)
    # (b, a, transported complex type, transported B-symplectic type)
    cases = [(b, a, transport(from_complex(complex_from_modulus(Modulus.complex(b, a)))),
              transport(b_symplectic_from_modulus(Modulus.symplectic(b, a)))) for b, a in moduli]
    describe = lambda c: _mod(c[:2])
    s.check("transported complex matrix", cases,
            lambda c: c[2].matrix == transported_complex_expected(c[0], c[1]), describe)

    def extraction(case):
        b, a, T, _ = case
        d = 1 + b * b
        c = classify(T)
        return (c.omega == TwoForm.standard(a / d) and c.B == TwoForm.standard(a * b / d)
                and c.modulus() == tau_to_rho(Modulus.complex(b, a)))

    s.check("extracted omega and B", cases, extraction, describe)

    def reverse(case):
        b, a, _, T = case
        c = classify(T)
        J = linalg.as_matrix([[b / a, -1 / a], [a + b * b / a, -b / a]])
        return c.kind is Kind.COMPLEX and c.J == J and c.modulus() == rho_to_tau(Modulus.symplectic(b, a))

    s.check("reverse direction yields complex structure", cases, reverse, describe)
    s.check("closed form agrees with pipeline", moduli,
            lambda m: consistency_check(Modulus.complex(*m)).passed
            and consistency_check(Modulus.symplectic(*m)).passed, _mod)
    return s.report()


def suite_structure_axioms(rng: random.Random) -> dict:
    s = Suite("structure_axioms")
    moduli = list(FIXED_MODULI) + random_moduli(rng, 50)

    def all_valid(m):
        structures = [
            from_complex(complex_from_modulus(Modulus.complex(*m))),
            b_symplectic_from_modulus(Modulus.symplectic(*m)),
            from_symplectic(TwoForm.standard(m[1])),
        ]
        structures += [transport(S) for S in structures]
        return all(validate(S).ok for S in structures)

    s.check("constructed and transported structures valid", moduli, all_valid, _mod)
    return s.report()


def suite_round_trip(rng: random.Random) -> dict:
    s = Suite("round_trip")
    moduli = random_moduli(rng, 200)
    s.check("rho_to_tau(tau_to_rho(tau)) = tau", moduli,
            lambda m: rho_to_tau(tau_to_rho(Modulus.complex(*m))) == Modulus.complex(*m), _mod)
    s.check("tau_to_rho(rho_to_tau(rho)) = rho", moduli,
            lambda m: tau_to_rho(rho_to_tau(Modulus.symplectic(*m))) == Modulus.symplectic(*m), _mod)
    s.check("tau_to_rho(tau) = a/(b - i)", moduli,
            lambda m: tau_to_rho(Modulus.complex(*m)).as_gaussian()
            == GaussianRational(m[1]) / GaussianRational(m[0], -1), _mod)
    dd = DualityData()

    def twice(m):
        ok = True
        for S in (from_complex(complex_from_modulus(Modulus.complex(*m))),
                  b_symplectic_from_modulus(Modulus.symplectic(*m))):
            ok &= transport(transport(S, dd), dd.reversed()).matrix == S.matrix
        return ok

    s.check("transport twice is identity", moduli[:50], twice, _mod)
    return s.report()


def suite_pure_imaginary(rng: random.Random) -> dict:
    s = Suite("pure_imaginary")
    gammas = [random_rational(rng, 1, 30) for _ in range(20)]
    lambdas = [random_rational(rng, 1, 30) for _ in range(20)]

    def swap(p):
        gamma, lam = p
        rho = tau_to_rho(Modulus.complex(0, gamma))
        tau = rho_to_tau(Modulus.symplectic(0, lam))
        # E with complex parameter gamma and area lam maps to complex parameter lam and area gamma
        return (rho == Modulus.symplectic(0, gamma) and tau == Modulus.complex(0, lam)
                and syz_mirror(gamma, lam) == (tau.a, rho.a))

    s.check("pure imaginary moduli swap roles", list(zip(gammas, lambdas)), swap,
            lambda p: [format_rational(p[0]), format_rational(p[1])])
    return s.report()


def suite_negative_involutivity(rng: random.Random) -> dict:
    s = Suite("negative_involutivity")
    S = from_symplectic(standard_symplectic(4), flat_frame(4))
    H = ThreeForm.from_components(4, {(0, 1, 2): 1})
    r = validate(S, H)
    s.check("T^4 with constant H is not involutive", [r],
            lambda r: r.squares_to_minus_one and r.orthogonal and not r.involutive)
    s.check("T^4 with H = 0 is involutive", [validate(S)], lambda r: r.ok)
    return s.report()


SUITES: Dict[str, Callable[[random.Random], dict]] = {
    "algebra": suite_algebra,
    "gcs": suite_gcs,
    "isomorphism": suite_isomorphism,
    "mirror_matrix": suite_mirror_matrix,
    "structure_axioms": suite_structure_axioms,
    "round_trip": suite_round_trip,
    "pure_imaginary": suite_pure_imaginary,
    "negative_involutivity": suite_negative_involutivity,
}


def run_suites(names: Optional[Iterable[str]] = None, seed: Optional[int] = None) -> dict:
    seed = resolve_seed(seed)
    names = list(SUITES) if names is None else list(names)
    reports = []
    for name in names:
        # each suite gets its own stream so running one alone reproduces the full run
        rng = random.Random(f"{seed}:{name}")
        reports.append(SUITES[name](rng))
    return {"seed": seed, "passed": all(r["passed"] for r in reports), "reports": reports}
