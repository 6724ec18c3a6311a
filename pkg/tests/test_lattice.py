import json
from fractions import Fraction as F

import pytest

import okbodies as ok
from okbodies.errors import (InvalidInput, UnknownCurve, UnknownModel)
from okbodies.lattice import model_from_json, model_to_json

from helpers import fixtures


BLP1 = ok.builtin_model("blp1")
H = BLP1.divisor([1, 0])
E = BLP1.divisor([0, 1])


class TestIntersect:
    def test_h_squared(self):
        assert ok.intersect(BLP1, H, H) == 1

    def test_h_plus_e_dot_e(self):
        assert ok.intersect(BLP1, H + E, E) == -1

    def test_mumford_fiber(self):
        m = ok.builtin_model("mumford")
        assert ok.intersect(m, m.divisor([1, 0]), m.divisor([0, 1])) == 1

    def test_symmetry(self):
        m = ok.builtin_model("blp2")
        a, b = m.divisor([3, -1, 2]), m.divisor([F(1, 2), 5, -7])
        assert ok.intersect(m, a, b) == ok.intersect(m, b, a)

    def test_dimension_mismatch(self):
        with pytest.raises(ok.errors.DimensionMismatch):
            ok.intersect(BLP1, H, ok.DivisorClass([1, 0, 0]))


class TestValidate:
    def test_builtins_valid(self):
        for model in fixtures():
            assert ok.validate_model(model) == []

    def test_negativity_flag_mismatch(self):
        bad = ok.SurfaceModel(
            name="bad", basis_labels=("H", "E"),
            gram=BLP1.gram,
            curves=(ok.CurveDecl("E", ok.DivisorClass([0, 1]), False),),
            eff_generators=BLP1.eff_generators)
        assert any("negativity flag mismatch" in v for v in ok.validate_model(bad))

    def test_wrong_signature(self):
        bad = ok.SurfaceModel(
            name="bad", basis_labels=("A", "B"),
            gram=((F(1), F(0)), (F(0), F(1))),
            curves=(),
            eff_generators=(ok.DivisorClass([1, 0]),))
        assert any("signature" in v for v in ok.validate_model(bad))

    def test_curve_outside_cone(self):
        bad = ok.SurfaceModel(
            name="bad", basis_labels=("H", "E"),
            gram=BLP1.gram,
            curves=(ok.CurveDecl("X", ok.DivisorClass([-1, 0]), False),),
            eff_generators=BLP1.eff_generators)
        assert any("outside" in v for v in ok.validate_model(bad))


class TestBlowUp:
    def test_strict_transform_of_fiber(self):
        m = ok.builtin_model("p1xp1")
        blown = ok.blow_up(m, ok.PointSpec({"F": 1}))
        assert blown.rank == 3
        ft = blown.curve("F")
        assert ft.cls.coeffs == (F(1), F(0), F(-1))
        assert ok.intersect(blown, ft.cls, ft.cls) == -1
        assert ft.negative

    def test_general_point(self):
        m = ok.builtin_model("mumford")
        blown = ok.blow_up(m, ok.PointSpec())
        assert [c.name for c in blown.curves if c.negative] == ["E1"]

    def test_blow_up_along_declared_curve(self):
        blown = ok.blow_up(BLP1, ok.PointSpec({"L1": 1}))
        lt = blown.curve("L1")
        assert lt.cls.coeffs == (F(1), F(-1), F(-1))
        assert ok.intersect(blown, lt.cls, lt.cls) == -1

    def test_unknown_curve(self):
        with pytest.raises(UnknownCurve):
            ok.blow_up(BLP1, ok.PointSpec({"Z": 1}))

    def test_pullback_products_preserved(self):
        m = ok.builtin_model("blp2")
        blown = ok.blow_up(m, ok.PointSpec({"E1": 1}))
        for i in range(m.rank):
            for j in range(m.rank):
                a = [F(k == i) for k in range(m.rank)]
                b = [F(k == j) for k in range(m.rank)]
                assert ok.intersect(m, m.divisor(a), m.divisor(b)) == \
                    ok.intersect(blown, blown.divisor(a + [0]),
                                 blown.divisor(b + [0]))

    def test_blown_up_model_validates(self):
        blown = ok.blow_up(BLP1, ok.PointSpec({"E": 1}))
        assert ok.validate_model(blown) == []


class TestFiberModel:
    def test_coprimality_required(self):
        with pytest.raises(InvalidInput):
            ok.build_fiber_model(2, 4)

    def test_one_one(self):
        model, fiber, c1, c2, x = ok.build_fiber_model(1, 1)
        assert model.rank == 3
        assert ok.intersect(model, fiber, fiber) == 0
        assert fiber == c1.cls + c2.cls
        assert ok.intersect(model, c1.cls, c2.cls) == 1

    @pytest.mark.parametrize("p,q", [(1, 2), (2, 3), (3, 4), (5, 3)])
    def test_fiber_decomposes(self, p, q):
        model, fiber, c1, c2, x = ok.build_fiber_model(p, q)
        rest = fiber - p * c1.cls - q * c2.cls
        assert ok.intersect(model, fiber, fiber) == 0
        assert ok.intersect(model, fiber, c1.cls) == 0
        assert ok.is_pseudoeffective(model, rest)
        # the remaining components meet neither tracked component at x
        mults = x.multiplicities()
        assert mults == {c1.name: 1, c2.name: 1}
        assert ok.validate_model(model) == []


class TestBuiltins:
    def test_unknown(self):
        with pytest.raises(UnknownModel):
            ok.builtin_model("nope")

    def test_mumford_nef_equals_eff(self):
        m = ok.builtin_model("mumford")
        nef_rays = sorted(tuple(r) for r in ok.nef_cone(m).generators)
        eff_rays = sorted(tuple(g.primitive().coeffs) for g in m.eff_generators)
        assert nef_rays == eff_rays

    def test_blp2_nef_cone(self):
        m = ok.builtin_model("blp2")
        rays = sorted(tuple(int(x) for x in r) for r in ok.nef_cone(m).generators)
        assert rays == [(1, -1, 0), (1, 0, -1), (1, 0, 0)]

    def test_annotations(self):
        m = ok.builtin_model("mumford")
        assert m.annotation_for(m.divisor([1, 0])) == {"kappa_max": 0}
        assert m.annotation_for(m.divisor([3, 0])) == {"kappa_max": 0}
        assert m.annotation_for(m.divisor([0, 1])) is None
        e = ok.builtin_model("ell9")
        assert e.annotation_for(e.divisor([1, 0])) == {"kappa": 0}


class TestModelJson:
    def test_round_trip(self, tmp_path):
        for model in fixtures():
            data = model_to_json(model)
            again = model_from_json(json.loads(json.dumps(data)))
            assert again == model or (
                again.basis_labels == model.basis_labels
                and again.gram == model.gram
                and again.curves == model.curves
                and again.eff_generators == model.eff_generators
                and again.annotations == model.annotations)

    def test_save_load(self, tmp_path):
        path = tmp_path / "m.surface.json"
        ok.save_model(BLP1, str(path))
        again = ok.load_model(str(path))
        assert again.gram == BLP1.gram
        assert again.curves == BLP1.curves

    def test_rationals_bit_exact(self):
        m = ok.SurfaceModel(
            name="frac", basis_labels=("A", "B"),
            gram=((F(1), F(1, 3)), (F(1, 3), F(-2, 7))),
            curves=(),
            eff_generators=(ok.DivisorClass([F(5, 3), F(-1, 2)]),))
        again = model_from_json(model_to_json(m))
        assert again.gram == m.gram
        assert again.eff_generators == m.eff_generators
