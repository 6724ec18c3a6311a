"""Okounkov bodies computed through Zariski decompositions.

Bodies of big classes come from a piecewise-linear walk: the negative
part of D - tC is affine in t while its support stays fixed, and walls
occur where the sliding positive part goes orthogonal to a new declared
curve. Non-big pseudoeffective classes produce segments (or a point)
classified by the sign of P.C, then shifted by the contribution of the
negative part at the flag. No section spaces are involved anywhere: the
flag point enters only through its finite table of restriction orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import is_big, is_pseudoeffective, sup_threshold
from .errors import (AnnotationRequired, InvalidInput, ModelInconsistent,
                     NotBig, NotEffectiveInput, NotPseudoeffective,
                     NotSupported)
from .lattice import (DivisorClass, PointSpec, SurfaceModel, blow_up,
                      intersect, pullback, validate_point)
from .linalg import format_rational, frac, is_negative_definite, solve_unique
from .polytope import RationalPolygon, hull, translate
from .zariski import SDecomposition, zariski_decompose

Affine = tuple[Fraction, Fraction]  # value(t) = a[0] + a[1] * t

_USE_DEFAULT = object()


def _affine(c0, c1=0) -> Affine:
    return (frac(c0), frac(c1))


def _eval(f: Affine, t: Fraction) -> Fraction:
    return f[0] + f[1] * t


@dataclass(frozen=True)
class AdmissibleFlag:
    """A flag curve with a symbolic point on it.

    ``point_orders`` records ord_x(C'|_C) for declared curves C' other
    than the flag curve itself; curves absent from the table have order
    zero. A general point has all orders zero.
    """

    curve: str
    point_orders: tuple[tuple[str, int], ...] = ()
    general_point: bool = True

    def __init__(self, curve, point_orders=(), general_point=None):
        orders = tuple(sorted((n, int(k)) for n, k in dict(point_orders).items()
                              if int(k) != 0))
        if general_point is None:
            general_point = not orders
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "point_orders", orders)
        object.__setattr__(self, "general_point", bool(general_point))

    def order(self, name: str) -> int:
        return dict(self.point_orders).get(name, 0)


def validate_flag(model: SurfaceModel, flag: AdmissibleFlag) -> None:
    curve = model.curve(flag.curve)
    if not curve.irreducible:
        raise InvalidInput(f"flag curve {flag.curve!r} is not irreducible")
    if flag.general_point and flag.point_orders:
        raise InvalidInput("general point carries nonzero orders")
    for name, k in flag.point_orders:
        other = model.curve(name)
        if name == flag.curve:
            raise InvalidInput("point orders must not include the flag curve")
        if k < 0:
            raise InvalidInput(f"negative order for {name!r}")
        if k > intersect(model, other.cls, curve.cls):
            raise InvalidInput(
                f"order of {name!r} exceeds its intersection with the flag curve")


def general_flag(model: SurfaceModel, curve: str) -> AdmissibleFlag:
    flag = AdmissibleFlag(curve)
    validate_flag(model, flag)
    return flag


def flag_at_point(model: SurfaceModel, curve: str,
                  point: PointSpec) -> AdmissibleFlag:
    """Flag on a curve through a declared transverse point."""
    validate_point(model, point)
    orders = {n: m for n, m in point.multiplicities().items() if n != curve}
    flag = AdmissibleFlag(curve, orders)
    validate_flag(model, flag)
    return flag


@dataclass(frozen=True)
class WalkPiece:
    t0: Fraction
    t1: Fraction
    alpha: Affine
    beta: Affine
    support: frozenset[str]

    def to_json(self) -> dict:
        return {
            "t0": format_rational(self.t0),
            "t1": format_rational(self.t1),
            "alpha": [format_rational(self.alpha[0]), format_rational(self.alpha[1])],
            "beta": [format_rational(self.beta[0]), format_rational(self.beta[1])],
            "support": sorted(self.support),
        }


@dataclass(frozen=True)
class BodyResult:
    polygon: RationalPolygon
    pieces: tuple[WalkPiece, ...]
    kind: str

    def evaluate(self, t: Fraction) -> tuple[Fraction, Fraction]:
        """(alpha(t), beta(t)) from the piece containing t."""
        t = frac(t)
        for piece in self.pieces:
            if piece.t0 <= t <= piece.t1:
                return _eval(piece.alpha, t), _eval(piece.beta, t)
        raise ValueError(f"t={t} outside the body's first-coordinate range")

    def dimension(self) -> int:
        return self.polygon.dimension()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": [[format_rational(x), format_rational(y)]
                         for x, y in self.polygon.vertices],
            "pieces": [p.to_json() for p in self.pieces],
        }


def _retag(body: BodyResult, kind: str) -> BodyResult:
    return BodyResult(body.polygon, body.pieces, kind)


def _ord_at_flag(flag: AdmissibleFlag, table: dict[str, Fraction]) -> Fraction:
    """ord_x of an effective combination restricted to the flag curve."""
    total = Fraction(0)
    for name, coeff in table.items():
        if name != flag.curve:
            total += coeff * flag.order(name)
    return total


def okounkov_body_big(model: SurfaceModel, flag: AdmissibleFlag,
                      d: DivisorClass) -> BodyResult:
    """Piecewise walk over t in [mult_C N, mu(D;C)] for a big class."""
    validate_flag(model, flag)
    if not is_big(model, d):
        raise NotBig(f"{d!r} is not big in the declared model")
    curve = model.curve(flag.curve)
    z = zariski_decompose(model, d)
    a = z.coefficient(flag.curve)
    mu = sup_threshold(model, d, curve.cls, "pseudoeffective")
    if a > mu:
        raise ModelInconsistent("negative-part multiplicity exceeds the "
                                "pseudoeffective threshold")

    start = zariski_decompose(model, d - a * curve.cls)
    support = [model.curve(name) for name in sorted(start.support)]
    candidates = [c for c in model.negative_curves() if c.name != flag.curve]
    pieces = []
    t = a
    while True:
        # parametric solve on the fixed support: N(t) = n0 + t*n1
        if support:
            gram = tuple(tuple(intersect(model, ci.cls, cj.cls)
                               for cj in support) for ci in support)
            if not is_negative_definite(gram):
                raise ModelInconsistent(
                    "walk support {%s} is not negative definite"
                    % ", ".join(c.name for c in support))
            n0 = solve_unique(gram, tuple(intersect(model, d, c.cls)
                                          for c in support))
            n1 = solve_unique(gram, tuple(-intersect(model, curve.cls, c.cls)
                                          for c in support))
        else:
            n0, n1 = (), ()

        def positive_part_products(other: DivisorClass) -> Affine:
            # (D - tC - N(t)) . other as an affine function of t
            c0 = intersect(model, d, other)
            c1 = -intersect(model, curve.cls, other)
            for c, x0, x1 in zip(support, n0, n1):
                prod = intersect(model, c.cls, other)
                c0 -= x0 * prod
                c1 -= x1 * prod
            return (c0, c1)

        alpha = (sum((x0 * flag.order(c.name) for c, x0 in zip(support, n0)),
                     Fraction(0)),
                 sum((x1 * flag.order(c.name) for c, x1 in zip(support, n1)),
                     Fraction(0)))
        pc = positive_part_products(curve.cls)
        beta = (alpha[0] + pc[0], alpha[1] + pc[1])

        # next wall: earliest t* where the positive part starts meeting a
        # declared curve negatively
        wall = mu
        entering = []
        for c in candidates:
            if any(c.name == s.name for s in support):
                continue
            g = positive_part_products(c.cls)
            if g[1] >= 0:
                continue
            t_star = -g[0] / g[1]
            if t < t_star < wall:
                wall, entering = t_star, [c]
            elif t_star == wall and wall < mu:
                entering.append(c)
            elif t_star <= t and _eval(g, t) == 0:
                # already orthogonal and strictly decreasing: enters now
                wall, entering = t, [c]
                break

        if entering and wall == t:
            support.extend(entering)
            continue
        pieces.append(WalkPiece(t, wall, alpha, beta,
                                frozenset(c.name for c in support)))
        if wall >= mu:
            break
        support.extend(entering)
        t = wall

    points = []
    for piece in pieces:
        for tt in (piece.t0, piece.t1):
            points.append((tt, _eval(piece.alpha, tt)))
            points.append((tt, _eval(piece.beta, tt)))
    return BodyResult(hull(points), tuple(pieces), "big")


def limiting_body(model: SurfaceModel, flag: AdmissibleFlag,
                  d: DivisorClass) -> BodyResult:
    """Limiting body of a pseudoeffective class.

    Big classes delegate to the walk. Otherwise the body is the body of
    the positive part, a segment or point determined by P.C, translated
    by (mult_C N, ord_x of the rest of N along C).
    """
    validate_flag(model, flag)
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(f"{d!r} is not pseudoeffective in the model")
    if is_big(model, d):
        return _retag(okounkov_body_big(model, flag, d), "limiting")

    z = zariski_decompose(model, d)
    shift_x = z.coefficient(flag.curve)
    shift_y = _ord_at_flag(flag, dict(z.negative))
    p = z.positive
    # at t past mult_C N the flag curve leaves the support for good
    residual = frozenset(z.support) - {flag.curve}
    return _positive_part_segment(model, flag, p, shift_x, shift_y,
                                  "limiting", residual)


def _positive_part_segment(model, flag, p, shift_x, shift_y, kind,
                           base_support) -> BodyResult:
    """Body of a non-big nef-side class p, shifted to (shift_x, shift_y)."""
    curve = model.curve(flag.curve)
    pc = intersect(model, p, curve.cls)
    if pc > 0:
        verts = [(shift_x, shift_y), (shift_x, shift_y + pc)]
        piece = WalkPiece(shift_x, shift_x,
                          _affine(shift_y), _affine(shift_y + pc),
                          base_support)
        return BodyResult(hull(verts), (piece,), kind)

    mu = sup_threshold(model, p, curve.cls, "pseudoeffective")
    if mu == 0:
        piece = WalkPiece(shift_x, shift_x, _affine(shift_y), _affine(shift_y),
                          base_support)
        return BodyResult(hull([(shift_x, shift_y)]), (piece,), kind)

    # p = mu*C + N' with N' the negative part of p - mu*C; its positive
    # part must vanish, otherwise the declared model is inconsistent
    end = zariski_decompose(model, p - mu * curve.cls)
    if not end.positive.is_zero():
        raise ModelInconsistent(
            "positive part survives at the pseudoeffective threshold; "
            "the declared effective cone is too large")
    rise = _ord_at_flag(flag, dict(end.negative))
    slope = rise / mu
    alpha = (shift_y - slope * shift_x, slope)
    piece = WalkPiece(shift_x, shift_x + mu, alpha, alpha,
                      frozenset(end.support) | base_support)
    verts = [(shift_x, shift_y), (shift_x + mu, shift_y + rise)]
    return BodyResult(hull(verts), (piece,), kind)


def valuative_body(model: SurfaceModel, flag: AdmissibleFlag, d: DivisorClass,
                   sdec: SDecomposition,
                   restricted_volume=_USE_DEFAULT) -> BodyResult:
    """Valuative body of an effective class with a supplied s-decomposition.

    For big classes this equals the Okounkov body. Otherwise: shift by
    the fixed part at the flag; a flag curve met positively by P_s gives
    a vertical segment of length vol_{S|C}(D) (defaulting to P_s.C, an
    override hook is provided since the lattice has no general formula);
    a flag curve orthogonal to P_s reproduces the limiting body of P_s.
    """
    validate_flag(model, flag)
    reassembled = sdec.positive
    for name, coeff in sdec.fixed:
        reassembled = reassembled + coeff * model.curve(name).cls
    if reassembled != d:
        raise NotEffectiveInput("s-decomposition does not reassemble the class")
    if is_big(model, d):
        return _retag(okounkov_body_big(model, flag, d), "valuative")
    if not is_pseudoeffective(model, d):
        raise NotEffectiveInput(f"{d!r} is not effective in the model")

    curve = model.curve(flag.curve)
    ps = sdec.positive
    shift_x = sdec.fixed_coefficient(flag.curve)
    shift_y = _ord_at_flag(flag, dict(sdec.fixed))
    psc = intersect(model, ps, curve.cls)
    if psc > 0:
        if restricted_volume is _USE_DEFAULT:
            length = psc
        elif restricted_volume is None:
            raise NotSupported(
                "restricted-volume default declined but no value supplied")
        else:
            length = frac(restricted_volume)
        verts = [(shift_x, shift_y), (shift_x, shift_y + length)]
        piece = WalkPiece(shift_x, shift_x, _affine(shift_y),
                          _affine(shift_y + length),
                          frozenset(n for n, _ in sdec.fixed))
        return BodyResult(hull(verts), (piece,), "valuative")

    inner = limiting_body(model, flag, ps)
    shifted = translate(inner.polygon, (shift_x, shift_y))
    pieces = tuple(
        WalkPiece(p.t0 + shift_x, p.t1 + shift_x,
                  (p.alpha[0] + shift_y - p.alpha[1] * shift_x, p.alpha[1]),
                  (p.beta[0] + shift_y - p.beta[1] * shift_x, p.beta[1]),
                  p.support | frozenset(n for n, _ in sdec.fixed))
        for p in inner.pieces)
    return BodyResult(shifted, pieces, "valuative")


def infinitesimal_limiting_body(model: SurfaceModel, d: DivisorClass,
                                point: PointSpec,
                                require_dimension_check: bool = False
                                ) -> BodyResult:
    """Body of the pullback along a point blow-up, flagged on the
    exceptional curve at a general point of it.

    For non-big classes the result is a horizontal segment of length
    mu(D; x). When a kappa_max annotation for the class is present the
    segment's dimension is checked against max(0, kappa_max); with
    ``require_dimension_check`` a missing annotation is an error instead
    of a skipped check.
    """
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(f"{d!r} is not pseudoeffective in the model")
    blown = blow_up(model, point)
    exceptional = blown.curves[-1].name
    lifted = pullback(d)
    flag = general_flag(blown, exceptional)
    if is_big(model, d):
        return _retag(okounkov_body_big(blown, flag, lifted), "infinitesimal")
    body = _retag(limiting_body(blown, flag, lifted), "infinitesimal")
    if any(y != body.polygon.vertices[0][1] for _, y in body.polygon.vertices):
        raise ModelInconsistent(
            "infinitesimal body is not horizontal; the blow-up's declared "
            "effective cone is inconsistent")
    annotation = model.annotation_for(d) or {}
    if "kappa_max" not in annotation:
        if require_dimension_check:
            raise AnnotationRequired(
                f"kappa_max annotation required for {d!r}")
        return body
    expected = max(0, annotation["kappa_max"])
    if body.dimension() != expected:
        raise ModelInconsistent(
            f"infinitesimal body dimension {body.dimension()} contradicts "
            f"kappa_max={annotation['kappa_max']}")
    return body
