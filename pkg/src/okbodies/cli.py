"""Command line front end: model loading, expression parsing, dispatch.

Results go to stdout as deterministic JSON (sorted keys, canonical "p/q"
rationals); diagnostics go to stderr. Exit codes: 0 success, 1 domain
error, 2 usage or parse error, 3 model inconsistency. SVG output is a
display-only rendering; exactness lives in the JSON.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import re
import sys
from fractions import Fraction

from . import chambers as chambers_mod
from . import constants as constants_mod
from .errors import (DomainError, InconsistencyError, OkbodiesError,
                     ParseError, UnknownLabel, UnknownModel, UsageError)
from .lattice import (BUILTIN_NAMES, DivisorClass, PointSpec, SurfaceModel,
                      builtin_model, load_model)
from .linalg import format_rational, parse_rational
from .okounkov import (AdmissibleFlag, BodyResult, infinitesimal_limiting_body,
                       limiting_body, okounkov_body_big, valuative_body)
from .polytope import RationalPolygon, similar
from .zariski import (WHOLE_SURFACE, s_decomposition_assemble,
                      zariski_decompose)

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[+\-*]))")


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            if src[pos:].strip():
                raise ParseError(f"unexpected character {src[pos]!r}", pos)
            break
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def _resolve_label(model: SurfaceModel, name: str, position: int) -> DivisorClass:
    if name in model.basis_labels:
        return model.basis_class(name)
    if name in model.curve_index:
        return model.curve_index[name].cls
    raise UnknownLabel(
        f"{name!r} (position {position}) is neither a basis label nor a "
        f"curve of model {model.name!r}")


def parse_divisor_expr(src: str, model: SurfaceModel) -> DivisorClass:
    """Parse sums of rational multiples of basis labels or curve names.

    Grammar: expr := ['+'|'-'] term (('+'|'-') term)*;
    term := [coef ['*']] label | coef; coef := int ['/' int].
    A bare "0" denotes the zero class. Whitespace never matters.
    """
    tokens = _tokenize(src)
    if not tokens:
        raise ParseError("empty divisor expression", 0)
    total = model.divisor([0] * model.rank)
    i = 0
    first = True
    while i < len(tokens):
        sign = Fraction(1)
        kind, text, pos = tokens[i]
        if kind == "op" and text in "+-":
            sign = Fraction(-1) if text == "-" else Fraction(1)
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {text!r}", pos)
        if i >= len(tokens):
            raise ParseError("dangling sign at end of expression", pos)
        kind, text, pos = tokens[i]
        coef = Fraction(1)
        have_coef = False
        if kind == "number":
            coef = parse_rational(text)
            have_coef = True
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                if i >= len(tokens) or tokens[i][0] != "name":
                    raise ParseError("expected a label after '*'", pos)
        if i < len(tokens) and tokens[i][0] == "name":
            kind, text, pos = tokens[i]
            term = _resolve_label(model, text, pos)
            i += 1
        elif have_coef and coef == 0:
            term = model.divisor([0] * model.rank)
            coef = Fraction(1)
        elif have_coef:
            raise ParseError(f"number {text!r} without a label", pos)
        else:
            raise ParseError(f"expected a term, found {text!r}", pos)
        total = total + (sign * coef) * term
        first = False
    return total


def format_divisor_expr(model: SurfaceModel, d: DivisorClass) -> str:
    """Canonical printable form; re-parsing returns the same class."""
    parts = []
    for label, coeff in zip(model.basis_labels, d.coeffs):
        if coeff == 0:
            continue
        mag = format_rational(abs(coeff))
        text = label if abs(coeff) == 1 else f"{mag}*{label}"
        parts.append(("-" if coeff < 0 else "+", text))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {t}" for s, t in parts[1:])


# -- output helpers ----------------------------------------------------------


def _emit_json(payload: dict, out) -> None:
    out.write(json.dumps(payload, sort_keys=True))
    out.write("\n")


def _emit_csv_vertices(polygon: RationalPolygon, out) -> None:
    out.write("x,y\n")
    for x, y in polygon.vertices:
        out.write(f"{format_rational(x)},{format_rational(y)}\n")


def render_polygon_svg(polygon: RationalPolygon, path: str) -> None:
    """Static rendering; vertex labels carry the exact coordinates and
    the drawn positions are decimal approximations for display only."""
    pts = [(float(x), float(y)) for x, y in polygon.vertices]
    xs = [p[0] for p in pts] + [0.0]
    ys = [p[1] for p in pts] + [0.0]
    pad = 0.5
    span_x = max(xs) - min(xs) or 1.0
    span_y = max(ys) - min(ys) or 1.0
    scale = 160.0 / max(span_x, span_y)

    def sx(x):
        return (x - min(xs) + pad) * scale

    def sy(y):
        return (max(ys) - y + pad) * scale

    width = sx(max(xs)) + pad * scale
    height = sy(min(ys)) + pad * scale
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}">',
        "<!-- rendered coordinates are display-only approximations -->",
    ]
    coords = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in pts)
    shape = "polygon" if len(pts) >= 3 else "polyline"
    lines.append(f'<{shape} points="{coords}" fill="#cfe2ff" '
                 f'stroke="#1f4e9c" stroke-width="1.5"/>')
    for (fx, fy), (ex, ey) in zip(pts, polygon.vertices):
        label = f"{format_rational(ex)},{format_rational(ey)}"
        lines.append(f'<circle cx="{sx(fx):.3f}" cy="{sy(fy):.3f}" r="2.5" '
                     f'fill="#1f4e9c"/>')
        lines.append(f'<text x="{sx(fx) + 4:.3f}" y="{sy(fy) - 4:.3f}" '
                     f'font-size="10">{label}</text>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_kv(text: str, value_parser):
    table = {}
    if not text:
        return table
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ParseError(f"expected key=value, found {item!r}")
        key, value = item.split("=", 1)
        table[key.strip()] = value_parser(value.strip())
    return table


def _load_model_arg(args) -> SurfaceModel:
    if getattr(args, "model_file", None):
        return load_model(args.model_file)
    if not args.model:
        raise UnknownModel("no model given and no --model-file")
    return builtin_model(args.model)


def _flag_from_args(model, args) -> AdmissibleFlag:
    orders = _parse_kv(getattr(args, "point_orders", "") or "", int)
    return AdmissibleFlag(args.flag, orders)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="okbodies",
        description="Exact Zariski decompositions, Okounkov bodies and "
                    "chamber structure on lattice surface models.")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--svg", metavar="PATH",
                        help="also write an SVG rendering of the polygon")
    parser.add_argument("--model-file", metavar="PATH",
                        help="load a .surface.json model instead of a builtin")
    sub = parser.add_subparsers(dest="command", required=True)

    models = sub.add_parser("models", help="list builtin models")
    del models

    zar = sub.add_parser("zariski", help="Zariski decomposition of a class")
    zar.add_argument("model", nargs="?")
    zar.add_argument("expr")

    body = sub.add_parser("body", help="Okounkov-type body of a class")
    body.add_argument("--kind", default="limiting",
                      choices=["big", "limiting", "valuative", "infinitesimal"])
    body.add_argument("model", nargs="?")
    body.add_argument("expr")
    body.add_argument("--flag", help="flag curve name (big/limiting/valuative)")
    body.add_argument("--point-orders", default="",
                      help="k=v,... restriction orders at the flag point")
    body.add_argument("--fixed", default="",
                      help="k=v,... fixed part for the valuative body")
    body.add_argument("--through", default="",
                      help="k=v,... curves through the blown-up point "
                           "(infinitesimal)")

    for name in ("mu", "epsilon"):
        c = sub.add_parser(name, help=f"{name} threshold constant")
        c.add_argument("model", nargs="?")
        c.add_argument("expr")
        c.add_argument("--curve", required=True)

    ch = sub.add_parser("chambers", help="Zariski chamber enumeration")
    ch.add_argument("model", nargs="?")

    mb = sub.add_parser("minkowski-basis", help="Minkowski basis for a flag")
    mb.add_argument("model", nargs="?")
    mb.add_argument("--flag", required=True)

    md = sub.add_parser("minkowski-decompose",
                        help="Minkowski decomposition of a nef class")
    md.add_argument("model", nargs="?")
    md.add_argument("expr")
    md.add_argument("--flag", required=True)

    sim = sub.add_parser("similar", help="compare two polygon JSON files")
    sim.add_argument("poly_a")
    sim.add_argument("poly_b")
    return parser


def _cmd_body(model, args, out) -> BodyResult:
    d = parse_divisor_expr(args.expr, model)
    if args.kind == "infinitesimal":
        through = _parse_kv(args.through, int)
        return infinitesimal_limiting_body(model, d, PointSpec(through))
    if not args.flag:
        raise UsageError("--flag is required for this body kind")
    flag = _flag_from_args(model, args)
    if args.kind == "big":
        return okounkov_body_big(model, flag, d)
    if args.kind == "valuative":
        fixed = _parse_kv(args.fixed, parse_rational)
        sdec = s_decomposition_assemble(model, d, fixed)
        return valuative_body(model, flag, d, sdec)
    return limiting_body(model, flag, d)


def run(argv, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "models":
            _emit_json({"models": list(BUILTIN_NAMES)}, out)
            return 0

        if args.command == "similar":
            with open(args.poly_a, encoding="utf-8") as fh:
                a = RationalPolygon.from_json(json.load(fh))
            with open(args.poly_b, encoding="utf-8") as fh:
                b = RationalPolygon.from_json(json.load(fh))
            _emit_json({"similar": similar(a, b)}, out)
            return 0

        model = _load_model_arg(args)

        if args.command == "zariski":
            d = parse_divisor_expr(args.expr, model)
            _emit_json(zariski_decompose(model, d).to_json(), out)
            return 0

        if args.command == "body":
            result = _cmd_body(model, args, out)
            if args.svg:
                render_polygon_svg(result.polygon, args.svg)
            if args.format == "csv":
                _emit_csv_vertices(result.polygon, out)
            else:
                _emit_json(result.to_json(), out)
            return 0

        if args.command in ("mu", "epsilon"):
            d = parse_divisor_expr(args.expr, model)
            if args.command == "mu":
                value = constants_mod.nakayama_constant(model, d, args.curve)
            else:
                value = constants_mod.seshadri_constant(model, d, args.curve)
            _emit_json({args.command: format_rational(value)}, out)
            return 0

        if args.command == "chambers":
            enum = chambers_mod.enumerate_zariski_chambers(model)
            _emit_json({
                "chambers": [
                    {"support": sorted(c.signature.support),
                     "witness": [format_rational(x)
                                 for x in c.witness.coeffs]}
                    for c in enum.realized
                ],
                "rejected": [sorted(s)
                             for s in enum.rejected_not_negative_definite],
                "unrealizable": [[sorted(s), reason]
                                 for s, reason in enum.unrealizable],
            }, out)
            return 0

        if args.command == "minkowski-basis":
            flag = AdmissibleFlag(args.flag)
            basis = chambers_mod.minkowski_basis(model, flag)
            chamber_list = chambers_mod.minkowski_chambers(model, flag, basis)
            _emit_json({
                "minkowski_basis": [
                    {"ray": [format_rational(x) for x in e.cls.coeffs],
                     "body_vertices": e.body.to_json()["vertices"]}
                    for e in basis
                ],
                "minkowski_chambers": [
                    {"rays": [[format_rational(x) for x in r.coeffs]
                              for r in cone]}
                    for cone in chamber_list
                ],
            }, out)
            return 0

        if args.command == "minkowski-decompose":
            flag = AdmissibleFlag(args.flag)
            d = parse_divisor_expr(args.expr, model)
            table = chambers_mod.minkowski_decompose(model, flag, d)
            _emit_json({
                "decomposition": [
                    {"ray": [format_rational(x) for x in ray.coeffs],
                     "coefficient": format_rational(coeff)}
                    for ray, coeff in sorted(
                        table.items(), key=lambda kv: kv[0].coeffs)
                ],
            }, out)
            return 0

        raise UsageError(f"unhandled command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except InconsistencyError as exc:
        print(f"model inconsistency: {exc}", file=err)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except OkbodiesError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
