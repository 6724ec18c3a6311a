"""Zariski decompositions, volumes, numerical dimension, base loci.

The decomposition D = P + N is computed relative to the declared negative
curves: P nef against every declared curve, N supported on curves with a
negative definite intersection matrix, P orthogonal to the support. A
brute-force enumeration over supports serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cones import is_nef, is_pseudoeffective
from .errors import (InvalidFixedPart, ModelInconsistent, NotPseudoeffective,
                     OracleAmbiguous)
from .lattice import NEG_INF, CurveDecl, DivisorClass, SurfaceModel, intersect
from .linalg import format_rational, is_negative_definite, solve_unique


class WholeSurface:
    """Sentinel for an augmented base locus equal to the whole surface."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WHOLE_SURFACE"


WHOLE_SURFACE = WholeSurface()


@dataclass(frozen=True)
class ZariskiDecomposition:
    positive: DivisorClass
    negative: tuple[tuple[str, Fraction], ...]

    def __init__(self, positive, negative):
        object.__setattr__(self, "positive", positive)
        object.__setattr__(self, "negative",
                           tuple(sorted(dict(negative).items())))

    @property
    def support(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.negative)

    def coefficient(self, name: str) -> Fraction:
        return dict(self.negative).get(name, Fraction(0))

    def negative_class(self, model: SurfaceModel) -> DivisorClass:
        total = model.divisor([0] * model.rank)
        for name, coeff in self.negative:
            total = total + coeff * model.curve(name).cls
        return total

    def to_json(self) -> dict:
        return {
            "P": [format_rational(c) for c in self.positive.coeffs],
            "N": {name: format_rational(c) for name, c in self.negative},
        }


@dataclass(frozen=True)
class SDecomposition:
    """An s-decomposition D = P_s + N_s with a user-supplied fixed part."""

    positive: DivisorClass
    fixed: tuple[tuple[str, Fraction], ...]

    def __init__(self, positive, fixed):
        object.__setattr__(self, "positive", positive)
        object.__setattr__(self, "fixed", tuple(sorted(dict(fixed).items())))

    def fixed_coefficient(self, name: str) -> Fraction:
        return dict(self.fixed).get(name, Fraction(0))


def _solve_support(model: SurfaceModel, d: DivisorClass,
                   support: list[CurveDecl]):
    """Coefficients a with (d - sum a_i C_i) . C_j = 0, or None if the
    support's intersection matrix is not negative definite."""
    gram = tuple(tuple(intersect(model, ci.cls, cj.cls) for cj in support)
                 for ci in support)
    if not is_negative_definite(gram):
        return None
    rhs = tuple(intersect(model, d, c.cls) for c in support)
    return solve_unique(gram, rhs)


def _assemble(model, d, support, coeffs) -> ZariskiDecomposition:
    table = {c.name: a for c, a in zip(support, coeffs) if a != 0}
    negative = model.divisor([0] * model.rank)
    for c, a in zip(support, coeffs):
        negative = negative + a * c.cls
    return ZariskiDecomposition(d - negative, table)


def zariski_decompose(model: SurfaceModel, d: DivisorClass) -> ZariskiDecomposition:
    """Iteratively grown decomposition of a pseudoeffective class.

    Start with the declared negative curves met negatively by d; solve the
    orthogonality system on that support; enlarge the support by any
    declared curve the candidate positive part still meets negatively and
    repeat. The support can only grow, so this terminates.
    """
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(
            f"{d!r} is outside the declared pseudoeffective cone")
    candidates = list(model.negative_curves())
    support = [c for c in candidates if intersect(model, d, c.cls) < 0]
    while True:
        if not support:
            coeffs = ()
        else:
            coeffs = _solve_support(model, d, support)
            if coeffs is None:
                raise ModelInconsistent(
                    "support {%s} has a non-negative-definite intersection "
                    "matrix; the declared curve list cannot be consistent"
                    % ", ".join(c.name for c in support))
        result = _assemble(model, d, support, coeffs)
        newly = [c for c in candidates
                 if c not in support
                 and intersect(model, result.positive, c.cls) < 0]
        if not newly:
            break
        support.extend(newly)
    if any(a < 0 for _, a in result.negative):
        raise ModelInconsistent(
            "negative part with negative coefficients; the declared curve "
            "list cannot describe a surface")
    return result


def zariski_brute(model: SurfaceModel, d: DivisorClass) -> ZariskiDecomposition:
    """Independent oracle: try every negative-definite support set.

    A candidate passes when the solved coefficients are strictly positive
    and the complementary part is nef against every declared curve; the
    decomposition is unique, so anything other than exactly one survivor
    means the model itself is inconsistent.
    """
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(
            f"{d!r} is outside the declared pseudoeffective cone")
    candidates = list(model.negative_curves())
    survivors = []
    for size in range(len(candidates) + 1):
        for subset in combinations(candidates, size):
            coeffs = _solve_support(model, d, list(subset)) if subset else ()
            if coeffs is None:
                continue
            if any(a <= 0 for a in coeffs):
                continue
            cand = _assemble(model, d, list(subset), coeffs)
            if all(intersect(model, cand.positive, c.cls) >= 0
                   for c in model.curves):
                survivors.append(cand)
    if len(survivors) != 1:
        raise OracleAmbiguous(
            f"{len(survivors)} candidate decompositions found; expected 1")
    return survivors[0]


def s_decomposition_assemble(model: SurfaceModel, d: DivisorClass,
                             fixed: dict[str, Fraction]) -> SDecomposition:
    """Package a user-supplied fixed part; no inference is performed.

    The fixed part of a linear series depends on section-level data the
    lattice cannot see, so it is input, checked only for coherence.
    """
    fixed = {name: Fraction(v) for name, v in fixed.items()}
    for name, coeff in fixed.items():
        model.curve(name)
        if coeff < 0:
            raise InvalidFixedPart(f"negative fixed coefficient for {name!r}")
    fixed = {name: c for name, c in fixed.items() if c != 0}
    remainder = d
    for name, coeff in fixed.items():
        remainder = remainder - coeff * model.curve(name).cls
    if not is_pseudoeffective(model, remainder):
        raise InvalidFixedPart(
            "class minus fixed part leaves the pseudoeffective cone")
    return SDecomposition(remainder, fixed)


def volume(model: SurfaceModel, d: DivisorClass) -> Fraction:
    """Self-intersection of the positive part; zero when not big."""
    if not is_pseudoeffective(model, d):
        return Fraction(0)
    p = zariski_decompose(model, d).positive
    sq = intersect(model, p, p)
    return sq if sq > 0 else Fraction(0)


def kappa_nu(model: SurfaceModel, d: DivisorClass):
    """Numerical dimension: -inf, 0, 1 or 2, read off the positive part."""
    if not is_pseudoeffective(model, d):
        return NEG_INF
    p = zariski_decompose(model, d).positive
    if p.is_zero():
        return 0
    return 2 if intersect(model, p, p) > 0 else 1


def b_minus(model: SurfaceModel, d: DivisorClass) -> frozenset[str]:
    """Restricted base locus: the support of the negative part."""
    return zariski_decompose(model, d).support


def b_plus(model: SurfaceModel, d: DivisorClass):
    """Augmented base locus: null locus of P for big d, else everything."""
    z = zariski_decompose(model, d)
    if intersect(model, z.positive, z.positive) <= 0:
        return WHOLE_SURFACE
    return frozenset(c.name for c in model.curves
                     if intersect(model, z.positive, c.cls) == 0)
