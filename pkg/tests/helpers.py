"""Deterministic random sampling of classes and flags for the test suite."""

from fractions import Fraction

import okbodies as ok


def rational(rng, lo=0, hi=4, max_den=3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_psef(rng, model, hi=4):
    """A random nonzero nonnegative combination of the eff generators."""
    while True:
        coeffs = [rational(rng, 0, hi) for _ in model.eff_generators]
        if any(coeffs):
            break
    d = model.divisor([0] * model.rank)
    for c, g in zip(coeffs, model.eff_generators):
        d = d + c * g
    return d


def random_big(rng, model):
    for _ in range(500):
        d = random_psef(rng, model)
        if ok.is_big(model, d):
            return d
    raise AssertionError(f"no big class found on {model.name}")


def random_nef(rng, model, hi=4):
    rays = ok.nef_cone(model).generators
    while True:
        coeffs = [rational(rng, 0, hi) for _ in rays]
        if any(coeffs):
            break
    d = model.divisor([0] * model.rank)
    for c, r in zip(coeffs, rays):
        d = d + c * ok.DivisorClass(r)
    return d


def random_flag(rng, model):
    """A random declared irreducible flag curve with random point orders."""
    curve = rng.choice([c for c in model.curves if c.irreducible])
    orders = {}
    for other in model.curves:
        if other.name == curve.name:
            continue
        bound = ok.intersect(model, other.cls, curve.cls)
        if bound > 0 and rng.random() < 0.4:
            orders[other.name] = rng.randint(1, int(bound))
    return ok.AdmissibleFlag(curve.name, orders)


def origin_in(body) -> bool:
    return ok.contains_point(body.polygon, (0, 0))


def x_axis_extent(body) -> Fraction:
    on = [x for x, y in body.polygon.vertices if y == 0]
    return max(on) if on else Fraction(0)


def y_axis_extent(body) -> Fraction:
    on = [y for x, y in body.polygon.vertices if x == 0]
    return max(on) if on else Fraction(0)


def fixtures():
    return [ok.builtin_model(name) for name in ok.BUILTIN_NAMES]
