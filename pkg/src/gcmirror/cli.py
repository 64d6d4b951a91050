"""Command-line entry point: ``gcmirror <command> [options]``.

Exit codes: 0 success, 1 failed verification or invalid structure, 2 usage
or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .errors import GeometryError, InvalidStructureError, ParseError
from .gcs import GCStructure, Role, b_symplectic_from_modulus, classify, complex_from_modulus, from_complex, validate
from .generalized_algebra import GVector, courant_bracket, flat_frame, torus_frame
from .mirror_maps import rho_to_tau, tau_to_rho
from .scalars import format_rational, parse_rational
from .serialize import (
    classified_to_json,
    dumps,
    modulus_to_json,
    parse_coeffs,
    parse_modulus,
    structure_from_json,
    structure_to_json,
    three_form_from_json,
)
from .tduality import DualityData, transport
from .verification import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json_arg(value: str):
    """Inline JSON, or a path to a JSON file."""
    text = value.strip()
    if text[:1] in "[{":
        source = text
    elif os.path.exists(value):
        with open(value) as fh:
            source = fh.read()
    else:
        raise UsageError(f"no such file: {value}")
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def _modulus_pair(key, m):
    return {key: {"re": format_rational(m.b), "im": format_rational(m.a)}, "role": m.role.value}


def cmd_mirror(args):
    if (args.tau is None) == (args.rho is None):
        raise UsageError("give exactly one of --tau or --rho")
    if args.tau is not None:
        rho = tau_to_rho(parse_modulus(args.tau, Role.COMPLEX_PARAMETER))
        return EXIT_OK, _modulus_pair("rho", rho), f"rho = {rho}"
    tau = rho_to_tau(parse_modulus(args.rho, Role.SYMPLECTIC_PARAMETER))
    return EXIT_OK, _modulus_pair("tau", tau), f"tau = {tau}"


def cmd_transport(args):
    f = parse_rational(args.f)
    dd = DualityData(f_coefficient=f)
    role = Role.COMPLEX_PARAMETER if args.structure == "complex" else Role.SYMPLECTIC_PARAMETER
    m = parse_modulus(args.modulus, role)
    if role is Role.COMPLEX_PARAMETER:
        S = from_complex(complex_from_modulus(m))
    else:
        S = b_symplectic_from_modulus(m)
    T = transport(S, dd)
    out = {"source": modulus_to_json(m), "f": format_rational(f),
           "structure": structure_to_json(S), "transported": structure_to_json(T)}
    lines = [f"source {m.role.value} modulus {m}", "transported matrix:"]
    lines += ["  " + "  ".join(format_rational(x) for x in row) for row in T.matrix]
    try:
        c = classify(T)
        out["classification"] = classified_to_json(c)
        target = c.modulus()
        out["target"] = modulus_to_json(target)
        lines.append(f"classified as {c.kind.value}; target {target.role.value} modulus {target}")
    except GeometryError as exc:
        out["classification"] = None
        out["target"] = None
        lines.append(f"not classifiable as a modulus: {exc}")
    return EXIT_OK, out, "\n".join(lines)


def cmd_classify(args):
    S = structure_from_json(_load_json_arg(args.matrix))
    report = validate(S)
    out = {"structure": structure_to_json(S), "validation": _validation_json(report)}
    if not report.ok:
        out["reason"] = report.reason
        return EXIT_FAIL, out, report.reason
    try:
        c = classify(S)
    except (GeometryError, ValueError) as exc:
        out["reason"] = str(exc)
        return EXIT_FAIL, out, str(exc)
    out["classification"] = classified_to_json(c)
    text = [f"kind: {c.kind.value}"]
    try:
        m = c.modulus()
        out["modulus"] = modulus_to_json(m)
        text.append(f"{m.role.value} modulus: {m}")
    except GeometryError as exc:
        out["modulus"] = None
        text.append(f"no modulus: {exc}")
    return EXIT_OK, out, "\n".join(text)


def _validation_json(r):
    return {"squares_to_minus_one": r.squares_to_minus_one, "orthogonal": r.orthogonal,
            "involutive": r.involutive}


def cmd_bracket(args):
    u, v = parse_coeffs(args.u), parse_coeffs(args.v)
    if len(u) != len(v) or len(u) % 2:
        raise UsageError("--u and --v need the same even number of coefficients")
    n = len(u) // 2
    frame = torus_frame() if n == 2 else flat_frame(n)
    H = three_form_from_json(_load_json_arg(args.H)) if args.H else None
    w = courant_bracket(GVector(frame, u), GVector(frame, v), H)
    coeffs = [format_rational(x) for x in w.coeffs]
    return EXIT_OK, {"bracket": coeffs}, "[" + ", ".join(coeffs) + "]"


def cmd_verify(args):
    if args.suite:
        unknown = [s for s in args.suite if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        names = args.suite
    else:
        names = None
    result = run_suites(names, args.seed)
    lines = [f"seed {result['seed']}"]
    for r in result["reports"]:
        lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['suite']}")
        for c in r["cases"]:
            lines.append(f"    {'ok  ' if c['passed'] else 'FAIL'} {c['name']} ({c['checked']})")
        if r["counterexample"] is not None:
            lines.append(f"    counterexample: {json.dumps(r['counterexample'], sort_keys=True)}")
    return (EXIT_OK if result["passed"] else EXIT_FAIL), result, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None, dest="sub_format")

    p = argparse.ArgumentParser(prog="gcmirror", description="Generalized complex geometry and mirror maps on 2-tori.")
    p.add_argument("--format", choices=("text", "json"), default=None, dest="global_format")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mirror", parents=[common], help="closed-form mirror map of a modulus")
    m.add_argument("--tau", help="complex parameter, e.g. '1+1i'")
    m.add_argument("--rho", help="complexified symplectic parameter")
    m.set_defaults(func=cmd_mirror)

    t = sub.add_parser("transport", parents=[common], help="transport a structure across T-duality")
    t.add_argument("--structure", choices=("complex", "symplectic"), required=True)
    t.add_argument("--modulus", required=True)
    t.add_argument("--f", default="1", help="coefficient of F = f theta^theta~ (default 1)")
    t.set_defaults(func=cmd_transport)

    c = sub.add_parser("classify", parents=[common], help="validate and classify a 4x4 structure")
    c.add_argument("--matrix", required=True, help="path to a JSON file or inline JSON")
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("bracket", parents=[common], help="Courant bracket of two constant sections")
    b.add_argument("--u", required=True, help="comma-separated coefficients or JSON list")
    b.add_argument("--v", required=True)
    b.add_argument("--H", default=None, help="3-form as JSON file or inline JSON")
    b.set_defaults(func=cmd_bracket)

    v = sub.add_parser("verify", parents=[common], help="run the property suites")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every suite (default)")
    g.add_argument("--suite", action="append", help=f"one of: {', '.join(SUITES)}")
    v.add_argument("--seed", type=int, default=None, help="seed for randomized suites (env GCG_SEED)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.sub_format or args.global_format or "text"
    try:
        code, payload, text = args.func(args)
    except (UsageError, ParseError) as exc:
        return _error(fmt, EXIT_USAGE, str(exc))
    except InvalidStructureError as exc:
        return _error(fmt, EXIT_FAIL, str(exc))
    except GeometryError as exc:
        return _error(fmt, EXIT_USAGE, str(exc))
    if fmt == "json":
        print(dumps(payload))
    else:
        print(text)
    return code


def _error(fmt: str, code: int, reason: str) -> int:
    if fmt == "json":
        print(dumps({"error": reason, "exit_code": code}))
    else:
        print(f"error: {reason}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
