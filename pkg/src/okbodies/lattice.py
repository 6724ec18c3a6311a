"""Finite lattice models of projective surfaces.

A model is a rank-r lattice with an exact rational intersection form, a
declared list of irreducible curves and a declared generating set of the
pseudoeffective cone. All computations downstream are correct relative to
these declarations: the user owns the completeness of the curve list and
of the cone generators. That contract is what makes surfaces with
infinitely many negative curves usable through a finite slice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from math import gcd as _gcd

from . import linalg
from .errors import (DimensionMismatch, InvalidInput, ModelInconsistent,
                     UnknownCurve, UnknownModel)
from .linalg import (Vec, dot, format_rational, frac, mat_vec, parse_rational,
                     primitive, vec)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class DivisorClass:
    """A rational class in the model basis, immutable and hashable."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", vec(coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(linalg.vadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(linalg.vsub(self.coeffs, other.coeffs))

    def __mul__(self, scalar) -> "DivisorClass":
        return DivisorClass(linalg.vscale(frac(scalar), self.coeffs))

    __rmul__ = __mul__

    def __neg__(self) -> "DivisorClass":
        return self * -1

    def primitive(self) -> "DivisorClass":
        return DivisorClass(primitive(self.coeffs))

    def __repr__(self):
        return "DivisorClass(%s)" % ", ".join(format_rational(c) for c in self.coeffs)


@dataclass(frozen=True)
class CurveDecl:
    """A declared irreducible (or at least integral) curve class."""

    name: str
    cls: DivisorClass
    negative: bool
    irreducible: bool = True


@dataclass(frozen=True)
class PointSpec:
    """A point described by which declared curves pass through it.

    ``through`` maps curve name -> multiplicity of the curve at the point;
    an empty table is a general point. Only transverse multiplicity data is
    supported; tangency orders beyond multiplicity are not modelled.
    """

    through: tuple[tuple[str, int], ...] = ()

    def __init__(self, through=()):
        items = tuple(sorted(dict(through).items()))
        object.__setattr__(self, "through", items)

    def multiplicities(self) -> dict[str, int]:
        return dict(self.through)

    def is_general(self) -> bool:
        return not self.through


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    basis_labels: tuple[str, ...]
    gram: tuple[Vec, ...]
    curves: tuple[CurveDecl, ...]
    eff_generators: tuple[DivisorClass, ...]
    annotations: dict = field(default_factory=dict, compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    @cached_property
    def curve_index(self) -> dict[str, CurveDecl]:
        return {c.name: c for c in self.curves}

    def curve(self, name: str) -> CurveDecl:
        try:
            return self.curve_index[name]
        except KeyError:
            raise UnknownCurve(f"model {self.name!r} has no curve {name!r}") from None

    def basis_class(self, label: str) -> DivisorClass:
        i = self.basis_labels.index(label)
        return DivisorClass([Fraction(j == i) for j in range(self.rank)])

    def divisor(self, coeffs) -> DivisorClass:
        d = DivisorClass(coeffs)
        if d.rank != self.rank:
            raise DimensionMismatch(
                f"class of length {d.rank} in rank-{self.rank} model")
        return d

    def negative_curves(self) -> tuple[CurveDecl, ...]:
        return tuple(c for c in self.curves if c.negative)

    def with_curve(self, curve: CurveDecl) -> "SurfaceModel":
        """A copy of the model with one more declared curve."""
        if curve.name in self.curve_index:
            raise InvalidInput(f"curve name {curve.name!r} already declared")
        return replace(self, curves=self.curves + (curve,))

    # -- annotations -------------------------------------------------

    def annotation_for(self, d: DivisorClass):
        """The kappa table declared for the ray of d, or None.

        Iitaka dimensions are invariant under positive scaling, so keys
        are canonicalized to the primitive ray representative.
        """
        return self.annotations.get(_ray_key(d))

    def with_annotation(self, d: DivisorClass, kappa=None, kappa_max=None) -> "SurfaceModel":
        table = dict(self.annotations)
        entry = dict(table.get(_ray_key(d), {}))
        if kappa is not None:
            entry["kappa"] = kappa
        if kappa_max is not None:
            entry["kappa_max"] = kappa_max
        table[_ray_key(d)] = entry
        return replace(self, annotations=table)


def _ray_key(d: DivisorClass) -> str:
    return ",".join(format_rational(c) for c in primitive(d.coeffs))


def intersect(model: SurfaceModel, a: DivisorClass, b: DivisorClass) -> Fraction:
    """The intersection pairing a . b, exact."""
    if a.rank != model.rank or b.rank != model.rank:
        raise DimensionMismatch(
            f"classes of rank {a.rank}, {b.rank} in rank-{model.rank} model")
    return dot(a.coeffs, mat_vec(model.gram, b.coeffs))


def self_intersection(model: SurfaceModel, a: DivisorClass) -> Fraction:
    return intersect(model, a, a)


def validate_model(model: SurfaceModel) -> list[str]:
    """All invariant violations of the model; empty list means valid."""
    violations = []
    r = model.rank
    if len(model.gram) != r or any(len(row) != r for row in model.gram):
        violations.append("gram shape does not match rank")
        return violations
    for i in range(r):
        for j in range(i + 1, r):
            if model.gram[i][j] != model.gram[j][i]:
                violations.append(f"gram not symmetric at ({i},{j})")
    if r >= 2:
        pos, _, neg = linalg.eigenvalue_signs(model.gram)
        if not (pos == 1 and neg == r - 1):
            violations.append("signature not (1, rank-1)")
    names = [c.name for c in model.curves]
    if len(set(names)) != len(names):
        violations.append("curve names not unique")
    if not model.eff_generators:
        violations.append("eff_generators empty")
    for g in model.eff_generators:
        if g.rank != r:
            violations.append(f"eff generator of wrong rank {g.rank}")
    for c in model.curves:
        if c.cls.rank != r:
            violations.append(f"curve {c.name}: class of wrong rank")
            continue
        if c.cls.is_zero():
            violations.append(f"curve {c.name}: zero class")
            continue
        sq = self_intersection(model, c.cls)
        if c.negative != (sq < 0):
            violations.append(f"curve {c.name}: negativity flag mismatch")
    if model.eff_generators and not violations:
        # membership needs the cone machinery; imported late to avoid a cycle
        from .cones import contains, eff_cone
        cone = eff_cone(model)
        for c in model.curves:
            if not contains(cone, c.cls):
                violations.append(
                    f"curve {c.name}: class outside declared effective cone")
    return violations


def require_valid(model: SurfaceModel) -> SurfaceModel:
    violations = validate_model(model)
    if violations:
        raise ModelInconsistent(f"model {model.name!r}: " + "; ".join(violations))
    return model


def validate_point(model: SurfaceModel, point: PointSpec) -> None:
    for name, mult in point.through:
        curve = model.curve(name)
        if not curve.irreducible:
            raise InvalidInput(f"point through non-irreducible curve {name!r}")
        if mult < 1:
            raise InvalidInput(f"multiplicity of {name!r} must be positive")


def _fresh_exceptional_label(model: SurfaceModel) -> str:
    used = set(model.basis_labels) | {c.name for c in model.curves}
    k = 1
    while f"E{k}" in used:
        k += 1
    return f"E{k}"


def pullback(d: DivisorClass) -> DivisorClass:
    """Extend a class by a zero coefficient on the new exceptional basis."""
    return DivisorClass(d.coeffs + (Fraction(0),))


def blow_up(model: SurfaceModel, point: PointSpec) -> SurfaceModel:
    """Blow up a declared point; rank grows by one.

    Curves through the point are replaced by their strict transforms
    (class minus multiplicity times the exceptional class); everything
    else pulls back unchanged. The new generator list (pullbacks + the
    exceptional curve + strict transforms) is declared, not proven
    complete: completeness stays the caller's responsibility.
    """
    validate_point(model, point)
    label = _fresh_exceptional_label(model)
    r = model.rank
    gram = tuple(tuple(row) + (Fraction(0),) for row in model.gram)
    gram += (vec([0] * r + [-1]),)
    exc_class = DivisorClass([0] * r + [1])
    mults = point.multiplicities()

    new_curves = []
    for c in model.curves:
        cls = pullback(c.cls)
        if c.name in mults:
            cls = cls - mults[c.name] * exc_class
        sq = dot(cls.coeffs, mat_vec(gram, cls.coeffs))
        new_curves.append(CurveDecl(c.name, cls, sq < 0, c.irreducible))
    new_curves.append(CurveDecl(label, exc_class, True, True))

    generators = [pullback(g) for g in model.eff_generators]
    generators.append(exc_class)
    for c in new_curves[:-1]:
        if c.name in mults:
            generators.append(c.cls)

    annotations = {}  # kappa data does not transport along blow-ups
    return SurfaceModel(
        name=f"{model.name}^{label}",
        basis_labels=model.basis_labels + (label,),
        gram=gram,
        curves=tuple(new_curves),
        eff_generators=tuple(generators),
        annotations=annotations,
    )


def build_fiber_model(p: int, q: int):
    """A fibered surface whose fiber splits as p*C1 + q*C2 + (rest).

    Successive blow-ups of P1 x P1 along the subtractive gcd chain make
    one fiber contain two components of coprime multiplicities p and q
    meeting transversally at one point. Returns
    (model, F, C1, C2, x) with F the total fiber class, C1, C2 the two
    tracked components and x their intersection point.
    """
    if p < 1 or q < 1 or _gcd(p, q) != 1:
        raise InvalidInput(f"multiplicities must be coprime positive, got ({p}, {q})")

    # chain of unordered multiplicity pairs from (1, 1) up to {p, q}
    chain = []
    a, b = p, q
    while (a, b) != (1, 1):
        chain.append((a, b))
        if a > b:
            a -= b
        else:
            b -= a
    chain.reverse()

    model = builtin_model("p1xp1")
    point = PointSpec({"F": 1})
    model = blow_up(model, point)
    # after one blow-up the fiber is F~ + E with both multiplicities 1
    comp1, mult1 = "F", 1       # strict transform keeps the name
    comp2, mult2 = model.curves[-1].name, 1

    for (u, v) in chain:
        x = PointSpec({comp1: 1, comp2: 1})
        model = blow_up(model, x)
        exc = model.curves[-1].name
        total = mult1 + mult2
        if total != max(u, v) or min(u, v) not in (mult1, mult2):
            raise ModelInconsistent("fiber chain bookkeeping failed")
        if mult1 != min(u, v):
            comp1, mult1 = comp2, mult2
        comp2, mult2 = exc, total

    c1_name, c2_name = (comp1, comp2) if mult1 == p else (comp2, comp1)
    fiber = DivisorClass([1] + [0] * (model.rank - 1))
    c1 = model.curve(c1_name)
    c2 = model.curve(c2_name)
    x = PointSpec({c1_name: 1, c2_name: 1})
    return model, fiber, c1, c2, x


def builtin_model(name: str) -> SurfaceModel:
    """The five bundled fixtures."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise UnknownModel(
            f"unknown model {name!r}; available: {', '.join(sorted(_BUILTINS))}"
        ) from None
    return factory()


def _blp1() -> SurfaceModel:
    # plane blown up at one point: basis (H, E)
    return SurfaceModel(
        name="blp1",
        basis_labels=("H", "E"),
        gram=linalg.mat([[1, 0], [0, -1]]),
        curves=(
            CurveDecl("E", DivisorClass([0, 1]), True),
            CurveDecl("L1", DivisorClass([1, -1]), False),
        ),
        eff_generators=(DivisorClass([0, 1]), DivisorClass([1, -1])),
    )


def _blp2() -> SurfaceModel:
    # plane blown up at two points: basis (H, E1, E2); L12 is the line
    # through both points
    return SurfaceModel(
        name="blp2",
        basis_labels=("H", "E1", "E2"),
        gram=linalg.mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        curves=(
            CurveDecl("E1", DivisorClass([0, 1, 0]), True),
            CurveDecl("E2", DivisorClass([0, 0, 1]), True),
            CurveDecl("L12", DivisorClass([1, -1, -1]), True),
        ),
        eff_generators=(
            DivisorClass([0, 1, 0]),
            DivisorClass([0, 0, 1]),
            DivisorClass([1, -1, -1]),
        ),
    )


def _mumford() -> SurfaceModel:
    # ruled surface with coinciding nef and pseudoeffective cones; H is
    # nef with H^2 = 0 and numerically-movable but rigid multiples
    m = SurfaceModel(
        name="mumford",
        basis_labels=("H", "F"),
        gram=linalg.mat([[0, 1], [1, 0]]),
        curves=(
            CurveDecl("Ca", DivisorClass([2, 0]), False),
            CurveDecl("F", DivisorClass([0, 1]), False),
        ),
        eff_generators=(DivisorClass([1, 0]), DivisorClass([0, 1])),
    )
    return m.with_annotation(DivisorClass([1, 0]), kappa_max=0)


def _ell9() -> SurfaceModel:
    # rank-2 slice of the plane blown up at nine general points on a
    # cubic: C0 is the anticanonical curve, G a (-1)-section
    m = SurfaceModel(
        name="ell9",
        basis_labels=("C0", "G"),
        gram=linalg.mat([[0, 1], [1, -1]]),
        curves=(
            CurveDecl("C0", DivisorClass([1, 0]), False),
            CurveDecl("G", DivisorClass([0, 1]), True),
        ),
        eff_generators=(DivisorClass([1, 0]), DivisorClass([0, 1])),
    )
    return m.with_annotation(DivisorClass([1, 0]), kappa=0)


def _p1xp1() -> SurfaceModel:
    return SurfaceModel(
        name="p1xp1",
        basis_labels=("F", "G"),
        gram=linalg.mat([[0, 1], [1, 0]]),
        curves=(
            CurveDecl("F", DivisorClass([1, 0]), False),
            CurveDecl("G", DivisorClass([0, 1]), False),
        ),
        eff_generators=(DivisorClass([1, 0]), DivisorClass([0, 1])),
    )


_BUILTINS = {
    "blp1": _blp1,
    "blp2": _blp2,
    "mumford": _mumford,
    "ell9": _ell9,
    "p1xp1": _p1xp1,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


# -- JSON schema (.surface.json) ------------------------------------------

def model_to_json(model: SurfaceModel) -> dict:
    return {
        "name": model.name,
        "basis": list(model.basis_labels),
        "gram": [[format_rational(x) for x in row] for row in model.gram],
        "curves": [
            {
                "name": c.name,
                "class": [format_rational(x) for x in c.cls.coeffs],
                "negative": c.negative,
                "irreducible": c.irreducible,
            }
            for c in model.curves
        ],
        "eff_generators": [[format_rational(x) for x in g.coeffs]
                           for g in model.eff_generators],
        "annotations": {
            key: {k: ("-inf" if v == NEG_INF else v) for k, v in entry.items()}
            for key, entry in model.annotations.items()
        },
    }


def model_from_json(data: dict) -> SurfaceModel:
    try:
        annotations = {}
        for key, entry in data.get("annotations", {}).items():
            annotations[key] = {
                k: (NEG_INF if v == "-inf" else int(v)) for k, v in entry.items()
            }
        return SurfaceModel(
            name=data["name"],
            basis_labels=tuple(data["basis"]),
            gram=tuple(vec(parse_rational(x) for x in row) for row in data["gram"]),
            curves=tuple(
                CurveDecl(
                    c["name"],
                    DivisorClass([parse_rational(x) for x in c["class"]]),
                    bool(c["negative"]),
                    bool(c.get("irreducible", True)),
                )
                for c in data["curves"]
            ),
            eff_generators=tuple(
                DivisorClass([parse_rational(x) for x in g])
                for g in data["eff_generators"]
            ),
            annotations=annotations,
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidInput(f"malformed surface model JSON: {exc}") from exc


def load_model(path: str) -> SurfaceModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def save_model(model: SurfaceModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, sort_keys=True)
