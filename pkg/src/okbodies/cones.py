"""Exact rational polyhedral cones: duality, membership, thresholds.

The H-description of a generated cone is the set of extreme rays of its
dual cone, computed by the double description method with the
combinatorial adjacency test. Non-full-dimensional cones are handled by
carrying the dual's lineality space as paired opposite functionals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (DimensionMismatch, InfeasibleStart, NotInCone)
from .lattice import DivisorClass, SurfaceModel, intersect
from .linalg import (Vec, dot, is_zero_vec, mat_vec, nonneg_combination,
                     primitive, vec, vscale, vsub)

INFINITY = math.inf


def dual_rays(vectors: list[Vec], dim: int) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and lineality basis of {y : y . v >= 0 for all v}.

    Incremental double description: start from all of R^dim and cut with
    one halfspace at a time. Each ray carries the set of constraints tight
    on it; a (+,-) ray pair is combined only when adjacent, which keeps
    the description irredundant throughout.
    """
    lineality = [vec([Fraction(i == j) for j in range(dim)]) for i in range(dim)]
    rays: list[tuple[Vec, frozenset[int]]] = []
    seen: list[Vec] = []

    for idx, a in enumerate(vectors):
        if is_zero_vec(a):
            continue
        products = [dot(l, a) for l in lineality]
        pivot = next((i for i, d in enumerate(products) if d != 0), None)
        if pivot is not None:
            l0, d0 = lineality[pivot], products[pivot]
            if d0 < 0:
                l0, d0 = vscale(-1, l0), -d0
            lineality = [vsub(l, vscale(dot(l, a) / d0, l0))
                         for i, l in enumerate(lineality) if i != pivot]
            rays = [(vsub(r, vscale(dot(r, a) / d0, l0)), zs | {idx})
                    for r, zs in rays]
            prior = frozenset(range(idx))
            rays.append((primitive(l0), prior - {idx}))
            seen.append(a)
            continue

        plus, zero, minus = [], [], []
        for r, zs in rays:
            d = dot(r, a)
            if d > 0:
                plus.append((r, zs, d))
            elif d == 0:
                zero.append((r, zs | {idx}))
            else:
                minus.append((r, zs, d))
        new_rays = [(r, zs) for r, zs, _ in plus] + zero
        for rp, zp, dp in plus:
            for rm, zm, dm in minus:
                common = zp & zm
                adjacent = not any(
                    common <= zs for r, zs in rays
                    if r is not rp and r is not rm)
                if not adjacent:
                    continue
                w = primitive(vsub(vscale(dp, rm), vscale(dm, rp)))
                new_rays.append((w, common | {idx}))
        rays = new_rays
        seen.append(a)

    return [r for r, _ in rays], lineality


@dataclass(frozen=True)
class Cone:
    """A cone given by generators, with a lazily computed H-description."""

    generators: tuple[Vec, ...]

    def __init__(self, generators):
        gens = tuple(vec(g.coeffs if isinstance(g, DivisorClass) else g)
                     for g in generators)
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        if not self.generators:
            raise ValueError("cone with no generators has no ambient dimension")
        return len(self.generators[0])

    @cached_property
    def facets(self) -> tuple[Vec, ...]:
        """Irredundant functionals phi with cone = {v : phi(v) >= 0 all phi}.

        For non-full-dimensional cones the implicit equalities appear as
        opposite pairs of functionals.
        """
        rays, lineality = dual_rays(list(self.generators), self.dim)
        out = list(rays)
        for l in lineality:
            out.append(primitive(l))
            out.append(primitive(vscale(-1, l)))
        return tuple(out)


def _as_vec(v) -> Vec:
    return v.coeffs if isinstance(v, DivisorClass) else vec(v)


def contains(cone: Cone, v, witness: bool = False):
    """Membership test against the facet description.

    With witness=True returns (bool, data): an exact nonnegative
    combination over the generators on success, a violated facet
    functional on failure.
    """
    x = _as_vec(v)
    if len(x) != cone.dim:
        raise DimensionMismatch(
            f"vector of length {len(x)} against cone in dimension {cone.dim}")
    for phi in cone.facets:
        if dot(phi, x) < 0:
            return (False, ("violated_facet", phi)) if witness else False
    if not witness:
        return True
    combo = nonneg_combination(list(cone.generators), x)
    if combo is None:
        # facet test passed, so this indicates numerical impossibility;
        # keep the contract honest rather than claim a missing witness
        raise NotInCone("facets accept the vector but no combination exists")
    return True, ("combination", tuple(combo))


def minimal_face(cone: Cone, v) -> tuple[Vec, ...]:
    """Generators of the smallest face of the cone containing v."""
    x = _as_vec(v)
    if not contains(cone, x):
        raise NotInCone("vector outside the cone has no containing face")
    tight = [phi for phi in cone.facets if dot(phi, x) == 0]
    return tuple(g for g in cone.generators
                 if all(dot(phi, g) == 0 for phi in tight))


def sup_threshold(model: SurfaceModel, d: DivisorClass, c: DivisorClass,
                  mode: str):
    """max{s >= 0 : d - s*c stays in the mode's cone}; may be infinity.

    Realized as a finite minimum over facet functionals: for each facet
    phi with phi(c) > 0 the constraint caps s at phi(d)/phi(c). Exact.
    """
    if mode == "pseudoeffective":
        functionals = eff_cone(model).facets
    elif mode == "nef":
        functionals = nef_functionals(model)
    else:
        raise ValueError(f"unknown threshold mode {mode!r}")
    dv, cv = d.coeffs, c.coeffs
    best = INFINITY
    for phi in functionals:
        pd = dot(phi, dv)
        if pd < 0:
            raise InfeasibleStart(
                f"divisor outside the {mode} cone; threshold undefined")
        pc = dot(phi, cv)
        if pc > 0:
            cap = pd / pc
            if cap < best:
                best = cap
    return best


# -- model-level cones and predicates ---------------------------------------

_CONE_CACHE: dict[int, tuple[SurfaceModel, Cone]] = {}


def eff_cone(model: SurfaceModel) -> Cone:
    """The declared pseudoeffective cone, cached per model instance."""
    hit = _CONE_CACHE.get(id(model))
    if hit is not None and hit[0] is model:
        return hit[1]
    cone = Cone(model.eff_generators)
    _CONE_CACHE[id(model)] = (model, cone)
    return cone


def nef_functionals(model: SurfaceModel) -> tuple[Vec, ...]:
    """H-description of the nef cone: pairing against each eff generator."""
    return tuple(mat_vec(model.gram, g.coeffs) for g in model.eff_generators)


def nef_cone(model: SurfaceModel) -> Cone:
    """The nef cone as a generated cone (dual rays of the eff cone)."""
    rays, lineality = dual_rays(list(nef_functionals(model)), model.rank)
    gens = list(rays)
    for l in lineality:
        gens.append(primitive(l))
        gens.append(primitive(vscale(-1, l)))
    return Cone(gens)


def is_pseudoeffective(model: SurfaceModel, d: DivisorClass) -> bool:
    return contains(eff_cone(model), d)


def is_nef(model: SurfaceModel, d: DivisorClass) -> bool:
    return all(intersect(model, d, g) >= 0 for g in model.eff_generators)


def is_big(model: SurfaceModel, d: DivisorClass) -> bool:
    """Pseudoeffective with positive-part self-intersection > 0."""
    if not is_pseudoeffective(model, d):
        return False
    from .zariski import zariski_decompose
    z = zariski_decompose(model, d)
    return intersect(model, z.positive, z.positive) > 0
