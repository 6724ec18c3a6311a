import random
from fractions import Fraction as F

import pytest

import okbodies as ok
from okbodies.errors import (InvalidInput, ModelInconsistent, NotBig,
                             NotSupported)
from okbodies.okounkov import valuative_body

from helpers import (fixtures, origin_in, random_big, random_flag,
                     random_psef, x_axis_extent, y_axis_extent)

BLP1 = ok.builtin_model("blp1")
BLP2 = ok.builtin_model("blp2")
MUMFORD = ok.builtin_model("mumford")
ELL9 = ok.builtin_model("ell9")


def verts(body):
    return tuple((x, y) for x, y in body.polygon.vertices)


def walk_matches_fresh_decompositions(model, flag, d, body, samples=20):
    """Grid oracle: piece data must agree with independent decompositions."""
    rng = random.Random(97)
    t_min = body.pieces[0].t0
    t_max = body.pieces[-1].t1
    curve = model.curve(flag.curve)
    for i in range(samples):
        t = t_min + (t_max - t_min) * F(i, samples - 1) if samples > 1 else t_min
        z = ok.zariski_decompose(model, d - t * curve.cls)
        alpha_expected = sum(
            (coeff * flag.order(name) for name, coeff in z.negative
             if name != flag.curve), F(0))
        beta_expected = alpha_expected + ok.intersect(model, z.positive,
                                                      curve.cls)
        alpha, beta = body.evaluate(t)
        assert alpha == alpha_expected, (t, alpha, alpha_expected)
        assert beta == beta_expected, (t, beta, beta_expected)
    del rng


class TestBigBodies:
    def test_blp1_h_general_line_flag(self):
        flag = ok.general_flag(BLP1, "L1")
        body = ok.okounkov_body_big(BLP1, flag, BLP1.divisor([1, 0]))
        assert verts(body) == ((0, 0), (1, 0), (0, 1))
        assert len(body.pieces) == 1
        piece = body.pieces[0]
        assert (piece.t0, piece.t1) == (0, 1)
        walk_matches_fresh_decompositions(BLP1, flag, BLP1.divisor([1, 0]), body)

    def test_blp1_h_exceptional_flag(self):
        flag = ok.general_flag(BLP1, "E")
        body = ok.okounkov_body_big(BLP1, flag, BLP1.divisor([1, 0]))
        assert verts(body) == ((0, 0), (1, 0), (1, 1))
        assert 2 * ok.area(body.polygon) == ok.volume(BLP1, BLP1.divisor([1, 0]))
        walk_matches_fresh_decompositions(BLP1, flag, BLP1.divisor([1, 0]), body)

    def test_blp2_worked_polygon(self):
        m = BLP2.with_curve(ok.CurveDecl("A", ok.DivisorClass([1, 0, 0]), False))
        flag = ok.general_flag(m, "A")
        d = m.divisor([3, -1, -1])
        body = ok.okounkov_body_big(m, flag, d)
        assert verts(body) == ((0, 0), (2, 0), (1, 2), (0, 3))
        assert [(p.t0, p.t1) for p in body.pieces] == [(0, 1), (1, 2)]
        assert body.pieces[0].support == frozenset()
        assert body.pieces[1].support == {"L12"}
        walk_matches_fresh_decompositions(m, flag, d, body)

    def test_not_big_rejected(self):
        flag = ok.general_flag(MUMFORD, "Ca")
        with pytest.raises(NotBig):
            ok.okounkov_body_big(MUMFORD, flag, MUMFORD.divisor([1, 0]))

    def test_area_law_random(self):
        rng = random.Random(53)
        for model in fixtures():
            curves = [c.name for c in model.curves if c.irreducible]
            for _ in range(15):
                d = random_big(rng, model)
                flag = ok.general_flag(model, rng.choice(curves))
                body = ok.okounkov_body_big(model, flag, d)
                assert 2 * ok.area(body.polygon) == ok.volume(model, d)

    def test_piecewise_consistency_random(self):
        rng = random.Random(59)
        for model in (BLP1, BLP2):
            for _ in range(8):
                d = random_big(rng, model)
                flag = random_flag(rng, model)
                body = ok.okounkov_body_big(model, flag, d)
                walk_matches_fresh_decompositions(model, flag, d, body)


class TestLimitingBodies:
    def test_mumford_horizontal(self):
        # flag classes a*H give segments of length 1/a
        for a in (1, 2, 3):
            m = MUMFORD.with_curve(
                ok.CurveDecl("Xa", ok.DivisorClass([a, 0]), False))
            body = ok.limiting_body(m, ok.general_flag(m, "Xa"),
                                    m.divisor([1, 0]))
            assert verts(body) == ((0, 0), (F(1, a), 0))

    def test_mumford_vertical(self):
        for (a, b) in ((0, 1), (1, 2)):
            m = MUMFORD.with_curve(
                ok.CurveDecl("Xab", ok.DivisorClass([a, b]), False))
            body = ok.limiting_body(m, ok.general_flag(m, "Xab"),
                                    m.divisor([1, 0]))
            assert verts(body) == ((0, 0), (0, b))

    def test_ell9_horizontal_unit(self):
        body = ok.limiting_body(ELL9, ok.general_flag(ELL9, "C0"),
                                ELL9.divisor([1, 0]))
        assert verts(body) == ((0, 0), (1, 0))

    def test_fiber_slope(self):
        model, fiber, c1, c2, x = ok.build_fiber_model(1, 1)
        flag = ok.flag_at_point(model, c1.name, x)
        body = ok.limiting_body(model, flag, fiber)
        assert verts(body) == ((0, 0), (1, 1))

    def test_big_delegation_keeps_kind(self):
        flag = ok.general_flag(BLP1, "L1")
        body = ok.limiting_body(BLP1, flag, BLP1.divisor([1, 0]))
        assert body.kind == "limiting"
        assert verts(body) == ((0, 0), (1, 0), (0, 1))

    def test_translation_law_random(self):
        rng = random.Random(61)
        for model in fixtures():
            for _ in range(15):
                d = random_psef(rng, model)
                flag = random_flag(rng, model)
                z = ok.zariski_decompose(model, d)
                body = ok.limiting_body(model, flag, d)
                pbody = ok.limiting_body(model, flag, z.positive)
                shift_x = z.coefficient(flag.curve)
                shift_y = sum(
                    (coeff * flag.order(name) for name, coeff in z.negative
                     if name != flag.curve), F(0))
                assert body.polygon == ok.translate(pbody.polygon,
                                                    (shift_x, shift_y))

    def test_origin_criterion_random(self):
        rng = random.Random(67)
        for model in fixtures():
            for _ in range(20):
                d = random_psef(rng, model)
                flag = random_flag(rng, model)
                z = ok.zariski_decompose(model, d)
                body = ok.limiting_body(model, flag, d)
                point_on_support = (
                    flag.curve in z.support
                    or any(flag.order(name) > 0 for name in z.support))
                assert origin_in(body) == (not point_on_support)

    def test_dimension_law_with_annotations(self):
        # kappa_max(H) = 0 on the ruled fixture, kappa_nu(H) = 1
        body = ok.limiting_body(MUMFORD, ok.general_flag(MUMFORD, "Ca"),
                                MUMFORD.divisor([1, 0]))
        kmax = MUMFORD.annotation_for(MUMFORD.divisor([1, 0]))["kappa_max"]
        knu = ok.kappa_nu(MUMFORD, MUMFORD.divisor([1, 0]))
        assert kmax <= body.dimension() <= knu


class TestValuativeBodies:
    def test_ell9_point(self):
        sdec = ok.s_decomposition_assemble(ELL9, ELL9.divisor([1, 0]),
                                           {"C0": F(1)})
        body = valuative_body(ELL9, ok.general_flag(ELL9, "C0"),
                              ELL9.divisor([1, 0]), sdec)
        assert verts(body) == ((1, 0),)
        kappa = ELL9.annotation_for(ELL9.divisor([1, 0]))["kappa"]
        assert body.dimension() == kappa

    def test_big_shifted_delegate(self):
        d = BLP1.divisor([1, 1])
        sdec = ok.s_decomposition_assemble(BLP1, d, {"E": F(1)})
        flag = ok.general_flag(BLP1, "E")
        body = valuative_body(BLP1, flag, d, sdec)
        assert body.kind == "valuative"
        limiting = ok.limiting_body(BLP1, flag, d)
        assert ok.contains_polygon(limiting.polygon, body.polygon)
        assert verts(body) == ((1, 0), (2, 0), (2, 1))

    def test_zero_class_is_origin(self):
        sdec = ok.s_decomposition_assemble(BLP1, BLP1.divisor([0, 0]), {})
        body = valuative_body(BLP1, ok.general_flag(BLP1, "L1"),
                              BLP1.divisor([0, 0]), sdec)
        assert verts(body) == ((0, 0),)

    def test_vertical_case_default_and_override(self):
        m = MUMFORD.with_curve(ok.CurveDecl("S", ok.DivisorClass([1, 1]), False))
        d = m.divisor([1, 0])
        sdec = ok.s_decomposition_assemble(m, d, {})
        flag = ok.general_flag(m, "S")
        body = valuative_body(m, flag, d, sdec)
        assert verts(body) == ((0, 0), (0, 1))  # P_s . C = 1
        custom = valuative_body(m, flag, d, sdec, restricted_volume=F(1, 2))
        assert verts(custom) == ((0, 0), (0, F(1, 2)))
        with pytest.raises(NotSupported):
            valuative_body(m, flag, d, sdec, restricted_volume=None)

    def test_containment_in_limiting_random(self):
        rng = random.Random(71)
        for model in (BLP1, BLP2, ELL9):
            for _ in range(12):
                d = random_psef(rng, model)
                z = ok.zariski_decompose(model, d)
                flag = random_flag(rng, model)
                # use the Zariski parts as a legitimate s-decomposition input
                sdec = ok.s_decomposition_assemble(model, d, dict(z.negative))
                body = valuative_body(model, flag, d, sdec)
                limiting = ok.limiting_body(model, flag, d)
                assert ok.contains_polygon(limiting.polygon, body.polygon)


class TestInfinitesimalBodies:
    def test_mumford_origin_point(self):
        body = ok.infinitesimal_limiting_body(MUMFORD, MUMFORD.divisor([1, 0]),
                                              ok.PointSpec({"F": 1}))
        assert verts(body) == ((0, 0),)
        assert body.kind == "infinitesimal"

    def test_p1xp1_unit_segment(self):
        m = ok.builtin_model("p1xp1")
        body = ok.infinitesimal_limiting_body(m, m.divisor([1, 0]),
                                              ok.PointSpec({"F": 1}))
        assert verts(body) == ((0, 0), (1, 0))

    def test_zero_class(self):
        body = ok.infinitesimal_limiting_body(BLP1, BLP1.divisor([0, 0]),
                                              ok.PointSpec())
        assert verts(body) == ((0, 0),)

    def test_length_is_point_nakayama_constant(self):
        m = ok.builtin_model("p1xp1")
        point = ok.PointSpec({"F": 1})
        body = ok.infinitesimal_limiting_body(m, m.divisor([1, 0]), point)
        assert x_axis_extent(body) == \
            ok.nakayama_constant_point(m, m.divisor([1, 0]), point)

    def test_big_case_is_two_dimensional(self):
        # the point must carry a declared curve, otherwise the blown-up
        # model's declared cone honestly reports a zero threshold
        body = ok.infinitesimal_limiting_body(BLP1, BLP1.divisor([1, 0]),
                                              ok.PointSpec({"L1": 1}))
        assert body.dimension() == 2
        assert 2 * ok.area(body.polygon) == ok.volume(BLP1, BLP1.divisor([1, 0]))

    def test_annotation_checked_when_required(self):
        m = ok.builtin_model("p1xp1")
        with pytest.raises(ok.errors.AnnotationRequired):
            ok.infinitesimal_limiting_body(m, m.divisor([1, 0]),
                                           ok.PointSpec({"F": 1}),
                                           require_dimension_check=True)


class TestFlags:
    def test_order_bound_enforced(self):
        with pytest.raises(InvalidInput):
            ok.okounkov_body_big(BLP1, ok.AdmissibleFlag("E", {"L1": 2}),
                                 BLP1.divisor([1, 0]))

    def test_flag_curve_must_exist_and_be_irreducible(self):
        m = BLP1.with_curve(
            ok.CurveDecl("R", ok.DivisorClass([2, 0]), False, irreducible=False))
        with pytest.raises(InvalidInput):
            ok.general_flag(m, "R")

    def test_flag_point_from_pointspec(self):
        model, fiber, c1, c2, x = ok.build_fiber_model(2, 3)
        flag = ok.flag_at_point(model, c1.name, x)
        assert flag.order(c2.name) == 1
        assert not flag.general_point


class TestBPlusCriterion:
    def test_flags_on_and_off_null_locus(self):
        # D = H on blp1 is big with null locus {E}
        d = BLP1.divisor([1, 0])
        on_curve = ok.general_flag(BLP1, "E")
        body = ok.limiting_body(BLP1, on_curve, d)
        assert origin_in(body)
        assert y_axis_extent(body) == 0 and x_axis_extent(body) > 0

        through = ok.AdmissibleFlag("L1", {"E": 1})
        body = ok.limiting_body(BLP1, through, d)
        assert origin_in(body)
        assert x_axis_extent(body) == 0 and y_axis_extent(body) > 0

        off = ok.general_flag(BLP1, "L1")
        body = ok.limiting_body(BLP1, off, d)
        assert x_axis_extent(body) > 0 and y_axis_extent(body) > 0
