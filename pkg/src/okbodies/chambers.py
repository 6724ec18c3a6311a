"""Chamber structure of the big cone and Minkowski machinery for bodies.

Zariski chambers are indexed by the support of the negative part;
stability chambers by the augmented base locus. For each realized
chamber (every negative-definite subset of declared negative curves) a
witness divisor is constructed from an interior nef class. The Minkowski
basis with respect to an ample flag collects the nef extremal rays plus
one orthogonality-solved class per chamber; peeling along these elements
decomposes any nef class so that limiting bodies add up exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cones import (Cone, is_big, is_nef, is_pseudoeffective, minimal_face,
                    nef_cone, sup_threshold)
from .errors import (InvalidInput, ModelInconsistent, NonNonnegativeSolution,
                     NotBig, NotNef, RankLimitExceeded)
from .lattice import CurveDecl, DivisorClass, SurfaceModel, intersect
from .linalg import (is_negative_definite, nonneg_combination, primitive,
                     solve_exact, solve_unique)
from .okounkov import AdmissibleFlag, limiting_body, validate_flag
from .polytope import RationalPolygon, is_indecomposable
from .zariski import b_plus, zariski_decompose

EXTREMAL_RAY = "EXTREMAL_RAY"


@dataclass(frozen=True)
class ChamberSignature:
    support: frozenset[str]
    null_locus: frozenset[str]

    def __init__(self, support, null_locus):
        object.__setattr__(self, "support", frozenset(support))
        object.__setattr__(self, "null_locus", frozenset(null_locus))


@dataclass(frozen=True)
class RealizedChamber:
    signature: ChamberSignature
    witness: DivisorClass


@dataclass(frozen=True)
class ChamberEnumeration:
    realized: tuple[RealizedChamber, ...]
    rejected_not_negative_definite: tuple[frozenset[str], ...]
    unrealizable: tuple[tuple[frozenset[str], str], ...]


@dataclass(frozen=True)
class MinkowskiBasisElement:
    cls: DivisorClass                # primitive ray representative
    body: RationalPolygon
    origin_chamber: object           # ChamberSignature or EXTREMAL_RAY


def zariski_chamber_signature(model: SurfaceModel,
                              d: DivisorClass) -> ChamberSignature:
    """Support and null locus identifying the chamber of a big class."""
    if not is_big(model, d):
        raise NotBig(f"{d!r} is not big in the declared model")
    z = zariski_decompose(model, d)
    null = frozenset(c.name for c in model.curves
                     if intersect(model, z.positive, c.cls) == 0)
    return ChamberSignature(z.support, null)


def same_stability_chamber(model: SurfaceModel, d1: DivisorClass,
                           d2: DivisorClass) -> bool:
    """Equal augmented base loci."""
    for d in (d1, d2):
        if not is_big(model, d):
            raise NotBig(f"{d!r} is not big in the declared model")
    return b_plus(model, d1) == b_plus(model, d2)


def _interior_nef_class(model: SurfaceModel) -> DivisorClass:
    rays = nef_cone(model).generators
    total = model.divisor([0] * model.rank)
    for r in rays:
        total = total + DivisorClass(r)
    return total


def _orthogonalized(model: SurfaceModel, base: DivisorClass,
                    support: list[CurveDecl]) -> DivisorClass:
    """The unique base + sum n_i C_i orthogonal to every support curve.

    Solvable exactly because the support's intersection matrix is
    negative definite; the n_i must come out nonnegative for the result
    to be meaningful, which is reported, never silently patched.
    """
    if not support:
        return base
    gram = tuple(tuple(intersect(model, ci.cls, cj.cls) for cj in support)
                 for ci in support)
    rhs = tuple(-intersect(model, base, c.cls) for c in support)
    coeffs = solve_unique(gram, rhs)
    if any(n < 0 for n in coeffs):
        raise NonNonnegativeSolution(
            "orthogonalization against {%s} needs negative coefficients"
            % ", ".join(c.name for c in support))
    out = base
    for c, n in zip(support, coeffs):
        out = out + n * c.cls
    return out


def enumerate_zariski_chambers(model: SurfaceModel) -> ChamberEnumeration:
    """Try every subset of declared negative curves as a chamber support.

    Negative-definite subsets get a witness big divisor with exactly that
    support (interior nef class pushed orthogonal to the subset, plus the
    subset's curves); subsets failing definiteness are rejected, failed
    witness constructions are reported as unrealizable with a reason.
    """
    negatives = list(model.negative_curves())
    interior = _interior_nef_class(model)
    realized, rejected, unrealizable = [], [], []
    for size in range(len(negatives) + 1):
        for subset in combinations(negatives, size):
            names = frozenset(c.name for c in subset)
            gram = tuple(tuple(intersect(model, ci.cls, cj.cls)
                               for cj in subset) for ci in subset)
            if not is_negative_definite(gram):
                rejected.append(names)
                continue
            try:
                p = _orthogonalized(model, interior, list(subset))
            except NonNonnegativeSolution as exc:
                unrealizable.append((names, str(exc)))
                continue
            if not is_nef(model, p):
                unrealizable.append((names, "orthogonalized class not nef"))
                continue
            if intersect(model, p, p) <= 0:
                unrealizable.append((names, "orthogonalized class not big"))
                continue
            off = [c for c in model.curves
                   if c.name not in names
                   and intersect(model, p, c.cls) == 0]
            if off:
                unrealizable.append(
                    (names, "null locus exceeds the support: "
                     + ", ".join(c.name for c in off)))
                continue
            witness = p
            for c in subset:
                witness = witness + c.cls
            realized.append(RealizedChamber(ChamberSignature(names, names),
                                            witness))
    return ChamberEnumeration(tuple(realized), tuple(rejected),
                              tuple(unrealizable))


def _primitive_class(d: DivisorClass) -> DivisorClass:
    return DivisorClass(primitive(d.coeffs))


def minkowski_basis(model: SurfaceModel,
                    flag: AdmissibleFlag) -> list[MinkowskiBasisElement]:
    """Nef extremal rays plus one solved class per realized chamber.

    Elements are stored by primitive ray representative and carry their
    limiting body with respect to the flag; every body is checked to be
    indecomposable (segment or triangle).
    """
    validate_flag(model, flag)
    if not flag.general_point:
        raise InvalidInput("Minkowski basis needs a general flag point")
    c_class = model.curve(flag.curve).cls
    if not is_nef(model, c_class):
        raise InvalidInput("Minkowski basis needs a nef (very ample) flag curve")

    elements: dict[DivisorClass, MinkowskiBasisElement] = {}

    def add(ray: DivisorClass, origin) -> None:
        key = _primitive_class(ray)
        if key in elements:
            return
        body = limiting_body(model, flag, key).polygon
        if not is_indecomposable(body):
            raise ModelInconsistent(
                f"basis element {key!r} has a decomposable body")
        elements[key] = MinkowskiBasisElement(key, body, origin)

    for ray in nef_cone(model).generators:
        add(DivisorClass(ray), EXTREMAL_RAY)
    for chamber in enumerate_zariski_chambers(model).realized:
        support = [model.curve(name) for name in sorted(chamber.signature.support)]
        solved = _orthogonalized(model, c_class, support)
        add(solved, chamber.signature)
    return list(elements.values())


def _chamber_element_map(model, flag, basis):
    """support set -> basis element solved from that chamber."""
    c_class = model.curve(flag.curve).cls
    by_class = {e.cls: e for e in basis}
    out = {}
    for chamber in enumerate_zariski_chambers(model).realized:
        support = [model.curve(name) for name in sorted(chamber.signature.support)]
        solved = _primitive_class(_orthogonalized(model, c_class, support))
        out[chamber.signature.support] = by_class[solved]
    return out


def minkowski_decompose(model: SurfaceModel, flag: AdmissibleFlag,
                        d: DivisorClass,
                        basis: list[MinkowskiBasisElement] | None = None
                        ) -> dict[DivisorClass, Fraction]:
    """Peel d over the Minkowski basis; keys are primitive basis rays.

    Pseudoeffective input is replaced by its positive part first (the
    body only sees the positive part anyway). Big classes repeatedly
    shed the element of their stability chamber until a nef-boundary
    class remains, which decomposes over its minimal face.
    """
    if not is_nef(model, d):
        if not is_pseudoeffective(model, d):
            raise NotNef(f"{d!r} is not nef (nor pseudoeffective)")
        d = zariski_decompose(model, d).positive
    if basis is None:
        basis = minkowski_basis(model, flag)
    by_support = _chamber_element_map(model, flag, basis)
    by_class = {e.cls: e for e in basis}

    coefficients: dict[DivisorClass, Fraction] = {}
    remaining = d
    rounds = 0
    limit = len(by_support) + len(basis) + 2
    while not remaining.is_zero():
        rounds += 1
        if rounds > limit:
            raise ModelInconsistent(
                "Minkowski peeling failed to terminate; chamber structure "
                "inconsistent with the declared model")
        if intersect(model, remaining, remaining) == 0:
            face = minimal_face(nef_cone(model), remaining)
            combo = nonneg_combination([list(r) for r in face],
                                       remaining.coeffs)
            if combo is None:
                raise ModelInconsistent(
                    "nef-boundary class does not decompose over its face")
            for ray, coeff in zip(face, combo):
                if coeff:
                    key = _primitive_class(DivisorClass(ray))
                    if key not in by_class:
                        raise ModelInconsistent(
                            f"face ray {key!r} missing from the basis")
                    coefficients[key] = coefficients.get(key, Fraction(0)) + coeff
            break
        null = frozenset(c.name for c in model.curves
                         if intersect(model, remaining, c.cls) == 0)
        element = by_support.get(null)
        if element is None:
            raise ModelInconsistent(
                f"no basis element for stability chamber {sorted(null)}")
        step = sup_threshold(model, remaining, element.cls, "nef")
        if step == 0 or step != step or step == float("inf"):
            raise ModelInconsistent("peeling makes no progress")
        coefficients[element.cls] = (coefficients.get(element.cls, Fraction(0))
                                     + step)
        remaining = remaining - step * element.cls

    reassembled = model.divisor([0] * model.rank)
    for key, coeff in coefficients.items():
        reassembled = reassembled + coeff * key
    if reassembled != d:
        raise ModelInconsistent("Minkowski decomposition fails to reassemble")
    return coefficients


# -- fan subdivision ---------------------------------------------------------


def _triangulate_rays(model: SurfaceModel, rays: list[tuple]) -> list[tuple]:
    """Split a full-dimensional rank-3 nef cone into simplicial cones."""
    if len(rays) == 3:
        return [tuple(rays)]
    facets = Cone(rays).facets
    edges = set()
    for phi in facets:
        tight = [r for r in rays
                 if sum(p * x for p, x in zip(phi, r)) == 0]
        if len(tight) == 2:
            edges.add(frozenset(map(tuple, tight)))
    # walk the edge cycle and fan out from the first ray
    adjacency: dict[tuple, list[tuple]] = {tuple(r): [] for r in rays}
    for e in edges:
        a, b = tuple(e)
        adjacency[a].append(b)
        adjacency[b].append(a)
    if any(len(v) != 2 for v in adjacency.values()):
        raise ModelInconsistent("nef cone boundary is not a ray cycle")
    start = tuple(rays[0])
    cycle = [start, adjacency[start][0]]
    while len(cycle) < len(rays):
        nxt = [r for r in adjacency[cycle[-1]] if r != cycle[-2]][0]
        cycle.append(nxt)
    return [(cycle[0], cycle[i], cycle[i + 1])
            for i in range(1, len(cycle) - 1)]


def minkowski_chambers(model: SurfaceModel, flag: AdmissibleFlag,
                       basis: list[MinkowskiBasisElement] | None = None
                       ) -> list[tuple[DivisorClass, ...]]:
    """Subdivide the nef cone along non-extremal basis rays.

    Rays are inserted in order of their chamber's support size, i.e. in
    the order the peeling algorithm meets them; each simplicial cone
    containing an inserted ray is stellarly split along the minimal face
    holding the ray. The resulting full-dimensional subcones are the
    Minkowski chambers: body shapes are constant on their interiors.
    """
    if model.rank > 3:
        raise RankLimitExceeded(
            "chamber subdivision implemented for rank <= 3 only")
    if basis is None:
        basis = minkowski_basis(model, flag)

    nef_rays = [tuple(r) for r in nef_cone(model).generators]
    if model.rank <= 2 or len(nef_rays) <= 2:
        fan = [tuple(nef_rays)]
    else:
        fan = _triangulate_rays(model, nef_rays)

    ray_set = {tuple(primitive(r)) for r in nef_rays}
    ordered = sorted(
        (e for e in basis if e.origin_chamber is not EXTREMAL_RAY),
        key=lambda e: (len(e.origin_chamber.support),
                       sorted(e.origin_chamber.support)))
    for element in ordered:
        ray = tuple(primitive(element.cls.coeffs))
        if ray in ray_set:
            continue
        ray_set.add(ray)
        new_fan = []
        for cone_rays in fan:
            sol = solve_exact([list(r) for r in cone_rays], list(ray))
            if sol is None or any(x < 0 for x in sol):
                new_fan.append(cone_rays)
                continue
            face = [i for i, x in enumerate(sol) if x > 0]
            if len(face) <= 1:
                new_fan.append(cone_rays)
                continue
            for drop in face:
                kept = tuple(r for i, r in enumerate(cone_rays) if i != drop)
                new_fan.append(kept + (ray,))
        fan = new_fan
    return [tuple(DivisorClass(r) for r in cone_rays) for cone_rays in fan]
