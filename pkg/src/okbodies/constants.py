"""Nakayama and Seshadri constants, positive-volume predicates.

Both constants are cone thresholds: how far a class can slide against a
curve (or against the exceptional class over a point) before leaving the
pseudoeffective respectively nef cone. On rational polyhedral models
these are finite minima of facet ratios, hence exact rationals.
"""

from __future__ import annotations

from fractions import Fraction

from .cones import is_big, is_nef, is_pseudoeffective, sup_threshold
from .errors import CurveInBMinus, NotNef, NotPseudoeffective
from .lattice import (DivisorClass, PointSpec, SurfaceModel, blow_up,
                      intersect, pullback)
from .okounkov import AdmissibleFlag, limiting_body, validate_flag
from .zariski import kappa_nu, zariski_decompose


def nakayama_constant(model: SurfaceModel, d: DivisorClass,
                      curve_name: str) -> Fraction:
    """Pseudoeffective threshold of d against a declared curve."""
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(f"{d!r} is not pseudoeffective in the model")
    curve = model.curve(curve_name)
    return sup_threshold(model, d, curve.cls, "pseudoeffective")


def nakayama_constant_point(model: SurfaceModel, d: DivisorClass,
                            point: PointSpec) -> Fraction:
    """Pseudoeffective threshold against the exceptional class over a point."""
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(f"{d!r} is not pseudoeffective in the model")
    blown = blow_up(model, point)
    exceptional = blown.curves[-1].cls
    return sup_threshold(blown, pullback(d), exceptional, "pseudoeffective")


def seshadri_constant(model: SurfaceModel, d: DivisorClass,
                      curve_name: str) -> Fraction:
    """Nef threshold of d against a declared curve."""
    if not is_nef(model, d):
        raise NotNef(f"{d!r} is not nef in the model")
    curve = model.curve(curve_name)
    return sup_threshold(model, d, curve.cls, "nef")


def _horizontal_extent(polygon) -> Fraction:
    """sup{s : (s, 0) in polygon}, zero when the x-axis is missed."""
    onaxis = [x for x, y in polygon.vertices if y == 0]
    return max(onaxis) if onaxis else Fraction(0)


def seshadri_via_body(model: SurfaceModel, d: DivisorClass,
                      curve_name: str) -> Fraction:
    """The same nef threshold, read off limiting bodies instead.

    The body's intersection with the first axis shrinks exactly when the
    walk's negative part starts passing through the flag point, so
    minimizing the horizontal extent over the finitely many transverse
    point types on the curve recovers the constant. Serves as the
    cross-validation route for ``seshadri_constant``.
    """
    if not is_nef(model, d):
        raise NotNef(f"{d!r} is not nef in the model")
    curve = model.curve(curve_name)
    flags = [AdmissibleFlag(curve_name)]
    for other in model.curves:
        if other.name == curve_name:
            continue
        if intersect(model, other.cls, curve.cls) > 0:
            flags.append(AdmissibleFlag(curve_name, {other.name: 1}))
    best = None
    for flag in flags:
        validate_flag(model, flag)
        body = limiting_body(model, flag, d)
        extent = _horizontal_extent(body.polygon)
        if best is None or extent < best:
            best = extent
    return best


def vol_plus_restricted(model: SurfaceModel, d: DivisorClass,
                        curve_name: str) -> Fraction:
    """Augmented restricted volume along a curve off the restricted base
    locus: the pairing of the positive part with the curve."""
    if not is_pseudoeffective(model, d):
        raise NotPseudoeffective(f"{d!r} is not pseudoeffective in the model")
    curve = model.curve(curve_name)
    z = zariski_decompose(model, d)
    if curve_name in z.support:
        raise CurveInBMinus(
            f"curve {curve_name!r} lies in the restricted base locus")
    return intersect(model, z.positive, curve.cls)


def is_positive_volume_subvariety(model: SurfaceModel, d: DivisorClass,
                                  curve_name: str) -> bool:
    """Whether the curve computes the positive asymptotic geometry of d.

    Only the whole surface qualifies for big classes, so curves return
    False there; for numerical dimension one the criterion is a positive
    pairing with the positive part.
    """
    vol = vol_plus_restricted(model, d, curve_name)
    if is_big(model, d):
        return False
    return kappa_nu(model, d) == 1 and vol > 0
