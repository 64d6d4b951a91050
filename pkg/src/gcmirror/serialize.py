"""Text and canonical-JSON encodings shared by the CLI."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import linalg
from .errors import ParseError
from .gcs import ClassifiedStructure, GCStructure, Modulus, Role, default_frame
from .generalized_algebra import ThreeForm
from .scalars import format_rational, parse_rational

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:/\d+)?|\.\d+(?:/\d+)?")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline omitted."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True)


def _number(s: str, pos: int):
    m = _NUMBER.match(s, pos)
    if not m:
        return None, pos
    try:
        return Fraction(m.group()), m.end()
    except ZeroDivisionError:
        raise ParseError("zero denominator", pos) from None


def parse_modulus(s: str, role=Role.COMPLEX_PARAMETER) -> Modulus:
    """Parse ``"b+ai"`` forms such as ``"i"``, ``"2i"``, ``"1/2+3i"``, ``"0.5+0.5i"``.

    Decimals are read by their literal expansion, so ``"0.1"`` is exactly 1/10.
    """
    text = s.replace(" ", "")
    if not text:
        raise ParseError("empty modulus", 0)
    pos = 0
    sign = 1
    if text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    first, pos_after = _number(text, pos)
    b = Fraction(0)
    if pos_after < len(text) and text[pos_after] in "+-":
        if first is None:
            raise ParseError("expected a real part", pos)
        b = sign * first
        sign = -1 if text[pos_after] == "-" else 1
        pos = pos_after + 1
        coef, pos = _number(text, pos)
    else:
        coef, pos = first, pos_after
    if pos < len(text) and text[pos] == "*":
        pos += 1
    if pos >= len(text) or text[pos] != "i":
        raise ParseError(f"expected 'i' in modulus {s!r}", pos)
    pos += 1
    if pos != len(text):
        raise ParseError(f"trailing characters in modulus {s!r}", pos)
    a = sign * (Fraction(1) if coef is None else coef)
    if a <= 0:
        raise ParseError(f"imaginary part must be positive in {s!r}, got {format_rational(a)}", 0)
    return Modulus(b, a, Role(role))


def modulus_to_json(m: Modulus) -> dict:
    return {"re": format_rational(m.b), "im": format_rational(m.a), "role": m.role.value}


def matrix_to_json(m) -> list:
    return [[format_rational(x) for x in row] for row in m]


def matrix_from_json(rows) -> linalg.Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    out = []
    for row in rows:
        vals = []
        for x in row:
            if isinstance(x, bool) or isinstance(x, float):
                raise ParseError(f"matrix entries must be integers or rational strings, got {x!r}")
            vals.append(Fraction(x) if isinstance(x, int) else parse_rational(str(x)))
        out.append(vals)
    return linalg.as_matrix(out)


def structure_to_json(S: GCStructure) -> dict:
    return {"n": S.n, "matrix": matrix_to_json(S.matrix)}


def structure_from_json(obj) -> GCStructure:
    """Accept ``{"n": 2, "matrix": [...]}`` or a bare row list."""
    rows = obj.get("matrix") if isinstance(obj, dict) else obj
    m = matrix_from_json(rows)
    size = len(m)
    if size == 0 or size % 2 or any(len(r) != size for r in m):
        raise ParseError(f"structure matrix must be square of even size, got {linalg.shape(m)}")
    n = size // 2
    if isinstance(obj, dict) and "n" in obj and obj["n"] != n:
        raise ParseError(f"declared n={obj['n']} does not match a {size}x{size} matrix")
    return GCStructure(default_frame(n), m)


def classified_to_json(c: ClassifiedStructure) -> dict:
    out = {"kind": c.kind.value}
    if c.J is not None:
        out["J"] = matrix_to_json(c.J)
    if c.omega is not None:
        out["omega"] = matrix_to_json(c.omega.matrix)
    if c.B is not None:
        out["B"] = matrix_to_json(c.B.matrix)
    return out


def three_form_from_json(obj) -> ThreeForm:
    """Full nested ``n x n x n`` array, or ``{"n": n, "components": [[i, j, k, "v"], ...]}`` (1-based)."""
    if isinstance(obj, dict):
        n = obj.get("n")
        if not isinstance(n, int) or n < 0:
            raise ParseError("3-form object needs a non-negative integer 'n'")
        comps = {}
        for entry in obj.get("components", []):
            if len(entry) != 4:
                raise ParseError(f"3-form component must be [i, j, k, value], got {entry!r}")
            i, j, k, v = entry
            comps[(i - 1, j - 1, k - 1)] = parse_rational(str(v))
        return ThreeForm.from_components(n, comps)
    if isinstance(obj, list):
        return ThreeForm(len(obj), [[[parse_rational(str(x)) for x in r] for r in p] for p in obj])
    raise ParseError("3-form must be a nested array or a components object")


def parse_coeffs(s: str) -> tuple:
    """Comma-separated rationals, or a JSON list."""
    s = s.strip()
    if s.startswith("["):
        try:
            items = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON coefficient list: {exc.msg}", exc.pos) from None
        return tuple(parse_rational(str(x)) for x in items)
    return tuple(parse_rational(x) for x in s.split(",") if x.strip())
