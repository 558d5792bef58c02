import random
from fractions import Fraction

import pytest

from valuedfields.errors import (
    HypothesisError,
    ParamError,
    PoleError,
    PrecisionError,
    SpanError,
    UnsupportedError,
)
from valuedfields.fields import GF, QQ
from valuedfields.groups import LexGroup, QQ_GROUP, QuadGroup, ZZ_GROUP, one_over_m
from valuedfields.hensel import eval_poly_at_series
from valuedfields.places import (
    ComposePlace,
    EvalPlace,
    MonomialPlace,
    SeriesEmbedPlace,
    TrivialPlace,
    UniformizationWitness,
    ZERO,
    compose,
    place_from_json,
    place_invariants,
    place_residue,
    place_to_json,
    place_value,
    place_vars,
    value_group,
    verify_uniformization_witness,
)
from valuedfields.polys import MPoly, RatFn, mpoly
from valuedfields.series import (
    POLE,
    bad_value_group,
    frobenius_root,
    make_series,
    t_pow,
    unit_nth_root,
    valuation,
)

QUAD = QuadGroup()


def _poly(vars, term_map, field=QQ):
    out = {}
    for exps, c in term_map.items():
        out[exps] = field.elem(c) if isinstance(c, (int, Fraction)) else c
    return MPoly.make(tuple(vars), out)


def _rf(num, den=None, field=QQ):
    if den is None:
        return RatFn.from_poly(num, field)
    return RatFn.make(num, den)


def _quad_place(field=QQ):
    return MonomialPlace(
        field,
        QUAD,
        (("x1", QUAD.elem((1, 0))), ("x2", QUAD.elem((0, 1)))),
    )


# ---------------------------------------------------------------------------
# monomial places


def test_monomial_quad_value_positive():
    P = _quad_place()
    f = _rf(_poly(("x1", "x2"), {(3, 0): 1}), _poly(("x1", "x2"), {(0, 2): 1}))
    v = place_value(P, f)
    assert v.is_exact and str(v.value) == "3+-2*sqrt2"
    assert v.value.sign() > 0
    assert place_residue(P, f) is ZERO


def test_monomial_quad_pole_side():
    P = _quad_place()
    f = _rf(_poly(("x1", "x2"), {(1, 0): 1}), _poly(("x1", "x2"), {(0, 1): 1}))
    v = place_value(P, f)
    assert v.value.sign() < 0
    assert place_residue(P, f) is POLE


def test_monomial_value_is_min_over_monomials():
    P = MonomialPlace(QQ, ZZ_GROUP, (("x", ZZ_GROUP.elem(1)),))
    g = _poly(("x",), {(5,): 2, (2,): 3, (7,): -1})
    v = place_value(P, g)
    assert str(v.value) == "2"


def test_monomial_residue_indeterminate():
    P = MonomialPlace(
        QQ, ZZ_GROUP, (("x", ZZ_GROUP.elem(1)),), (("y", "z"),)
    )
    f = _rf(
        _poly(("x", "y"), {(1, 1): 1, (1, 0): 1}),
        _poly(("x", "y"), {(1, 0): 1}),
    )
    r = place_residue(P, f)
    assert isinstance(r, MPoly)
    assert r.vars == ("z",)
    assert sorted((e[0], str(c)) for e, c in r.terms) == [(0, "1"), (1, "1")]


def test_monomial_residue_square_of_indeterminate():
    P = MonomialPlace(QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("y", "z"),))
    g = _poly(("x1", "y"), {(0, 2): 1, (1, 0): 1})
    r = place_residue(P, g)
    assert isinstance(r, MPoly)
    assert [(e, str(c)) for e, c in r.terms] == [((2,), "1")]


def test_monomial_rejects_dependent_values():
    with pytest.raises(SpanError):
        MonomialPlace(QQ, QQ_GROUP, (("x1", QQ_GROUP.elem(1)), ("x2", QQ_GROUP.elem(2))))
    with pytest.raises(SpanError):
        MonomialPlace(
            QQ, QUAD, (("x1", QUAD.elem((1, 1))), ("x2", QUAD.elem((2, 2))))
        )


def test_monomial_rejects_nonpositive_value():
    with pytest.raises(ParamError):
        MonomialPlace(QQ, ZZ_GROUP, (("x", ZZ_GROUP.elem(-1)),))


def test_value_of_zero_function_rejected():
    P = _quad_place()
    with pytest.raises(ParamError):
        place_value(P, _poly(("x1", "x2"), {}))


def test_uncovered_variable_rejected():
    P = MonomialPlace(QQ, ZZ_GROUP, (("x", ZZ_GROUP.elem(1)),))
    with pytest.raises(ParamError):
        place_value(P, _poly(("x", "w"), {(1, 1): 1}))


def test_monomial_substitution_oracle():
    # weighted-minimum value must match substitution of exact monomial series
    rng = random.Random(51)
    P = _quad_place()
    x1 = t_pow(QQ, QUAD, QUAD.elem((1, 0)))
    x2 = t_pow(QQ, QUAD, QUAD.elem((0, 1)))
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            e = (rng.randint(0, 5), rng.randint(0, 5))
            c = rng.randint(-9, 9)
            if c:
                terms[e] = QQ.elem(c)
        if not terms:
            continue
        g = MPoly.make(("x1", "x2"), terms)
        if not g.terms:
            continue
        v = place_value(P, g)
        s = eval_poly_at_series(g, {"x1": x1, "x2": x2}, QQ, QUAD)
        sv = valuation(s)
        assert sv.is_exact and sv.value == v.value


def test_place_value_laws():
    rng = random.Random(52)
    P = _quad_place()

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 5)):
            terms[(rng.randint(0, 4), rng.randint(0, 4))] = QQ.elem(rng.randint(1, 9))
        return MPoly.make(("x1", "x2"), terms)

    for _ in range(60):
        f, g = rand_poly(), rand_poly()
        vf = place_value(P, f).value
        vg = place_value(P, g).value
        assert place_value(P, f * g).value == vf + vg
        h = f + g
        if h.terms:
            vh = place_value(P, h).value
            assert not vh < min(vf, vg)
            if vf != vg:
                assert vh == min(vf, vg)


def test_residue_multiplicative_at_value_zero():
    rng = random.Random(53)
    P = EvalPlace(QQ, (("x", QQ.elem(3)),))

    def rand_poly():
        return _poly(
            ("x",),
            {(0,): rng.randint(-5, 5), (1,): rng.randint(-3, 3), (2,): rng.randint(-3, 3)},
        )

    checked = 0
    for _ in range(60):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        if not (a.terms and b.terms and c.terms):
            continue
        f, g = _rf(a, b), _rf(c, b)
        rf, rg = place_residue(P, f), place_residue(P, g)
        if rf in (ZERO, POLE) or rg in (ZERO, POLE):
            continue
        assert place_residue(P, f * g) == rf * rg
        checked += 1
    assert checked >= 20


# ---------------------------------------------------------------------------
# evaluation places


def test_eval_residue_cancels_removable_pole():
    P = EvalPlace(QQ, (("x", QQ.elem(2)),))
    f = _rf(_poly(("x",), {(2,): 1, (0,): -1}), _poly(("x",), {(1,): 1, (0,): 1}))
    v = place_value(P, f)
    assert v.is_exact and str(v.value) == "0"
    assert str(place_residue(P, f)) == "1"


def test_eval_vanishing_order():
    P = EvalPlace(QQ, (("x", QQ.elem(2)),))
    # (x-2)^3 * (x+1)
    g = _poly(("x",), {(4,): 1, (3,): -5, (2,): 6, (1,): 4, (0,): -8})
    v = place_value(P, g)
    assert str(v.value) == "3"
    assert value_group(P) == ZZ_GROUP


def test_eval_two_variables_lex_order():
    P = EvalPlace(QQ, (("x", QQ.elem(0)), ("y", QQ.elem(0))))
    assert value_group(P) == LexGroup(2)
    g = _poly(("x", "y"), {(2, 0): 1, (0, 1): 1})
    v = place_value(P, g)
    assert str(v.value) == "(0,1)"
    h = _poly(("x", "y"), {(2, 0): 1, (1, 3): 1})
    assert str(place_value(P, h).value) == "(1,3)"


def test_eval_residue_is_point_evaluation():
    P = EvalPlace(QQ, (("x", QQ.elem(1)), ("y", QQ.elem(2))))
    g = _poly(("x", "y"), {(1, 1): 1, (0, 0): 5})
    assert str(place_residue(P, g)) == "7"


# ---------------------------------------------------------------------------
# composition


def _two_step():
    first = MonomialPlace(
        QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("x2", "z2"),)
    )
    second = MonomialPlace(QQ, ZZ_GROUP, (("z2", ZZ_GROUP.elem(1)),))
    return compose(first, second)


def test_compose_lex_values():
    P = _two_step()
    assert value_group(P) == LexGroup(2)
    x1 = _poly(("x1", "x2"), {(1, 0): 1})
    x2 = _poly(("x1", "x2"), {(0, 1): 1})
    assert str(place_value(P, x1).value) == "(1,0)"
    assert str(place_value(P, x2).value) == "(0,1)"
    f = _rf(x1, _poly(("x1", "x2"), {(0, 5): 1}))
    v = place_value(P, f)
    assert str(v.value) == "(1,-5)"
    assert v.value.sign() > 0  # first coordinate dominates


def test_compose_residue_is_double_evaluation():
    P = _two_step()
    g = _poly(("x1", "x2"), {(0, 0): 7, (1, 0): 2, (0, 1): 3, (2, 2): 1})
    r = place_residue(P, g)
    assert str(r) == "7"  # g(0, 0)


def test_compose_with_trivial_second_pads_with_zero():
    first = MonomialPlace(QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("x2", "z2"),))
    P = compose(first, TrivialPlace(("z2",), QQ))
    x1 = _poly(("x1", "x2"), {(1, 0): 1})
    x2 = _poly(("x1", "x2"), {(0, 1): 1})
    assert str(place_value(P, x1).value) == "(1,0)"
    assert str(place_value(P, x2).value) == "(0,0)"
    r = place_residue(P, x2)
    assert isinstance(r, MPoly) and r.vars == ("z2",)


def test_compose_variable_mismatch():
    first = MonomialPlace(QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("x2", "z2"),))
    second = MonomialPlace(QQ, ZZ_GROUP, (("w", ZZ_GROUP.elem(1)),))
    with pytest.raises(ParamError):
        compose(first, second)


def test_compose_needs_residue_variables():
    first = EvalPlace(QQ, (("x", QQ.elem(0)),))
    second = MonomialPlace(QQ, ZZ_GROUP, (("z", ZZ_GROUP.elem(1)),))
    with pytest.raises(UnsupportedError):
        compose(first, second)


def test_compose_rejects_irrational_stage():
    first = MonomialPlace(QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("x2", "z2"),))
    second = MonomialPlace(QQ, QUAD, (("z2", QUAD.elem((0, 1))),))
    with pytest.raises(UnsupportedError):
        compose(first, second)


def test_eval_agrees_with_composed_coordinate_places():
    # evaluation at the origin is the composition of the coordinate stages
    rng = random.Random(54)
    P_eval = EvalPlace(QQ, (("x1", QQ.elem(0)), ("x2", QQ.elem(0))))
    P_comp = _two_step()
    for _ in range(50):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            terms[(rng.randint(0, 3), rng.randint(0, 3))] = QQ.elem(rng.randint(-5, 5))
        g = MPoly.make(("x1", "x2"), terms)
        if not g.terms:
            continue
        ve = place_value(P_eval, g)
        vc = place_value(P_comp, g)
        assert ve.value.coords() == vc.value.coords()


def test_compose_associativity_on_random_functions():
    rng = random.Random(55)
    Q = MonomialPlace(
        QQ, ZZ_GROUP, (("x1", ZZ_GROUP.elem(1)),), (("x2", "y2"), ("x3", "y3"))
    )
    Qb = MonomialPlace(QQ, ZZ_GROUP, (("y2", ZZ_GROUP.elem(1)),), (("y3", "w3"),))
    Qbb = MonomialPlace(QQ, ZZ_GROUP, (("w3", ZZ_GROUP.elem(1)),))
    left = compose(compose(Q, Qb), Qbb)
    right = compose(Q, compose(Qb, Qbb))
    assert value_group(left) == value_group(right) == LexGroup(3)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = tuple(rng.randint(0, 3) for _ in range(3))
            terms[e] = QQ.elem(rng.randint(1, 7))
        return MPoly.make(("x1", "x2", "x3"), terms)

    for _ in range(100):
        f = RatFn.make(rand_poly(), rand_poly())
        vl, vr = place_value(left, f), place_value(right, f)
        assert vl.value.coords() == vr.value.coords()
        rl, rr = place_residue(left, f), place_residue(right, f)
        if rl in (ZERO, POLE):
            assert rl is rr
        else:
            assert rl == rr


# ---------------------------------------------------------------------------
# series embeddings


def _cusp_place():
    group = one_over_m(2)
    x = t_pow(QQ, group, 1)
    y = t_pow(QQ, group, Fraction(3, 2))
    return SeriesEmbedPlace(QQ, group, (("x", x), ("y", y)))


def test_series_embed_cusp_value():
    P = _cusp_place()
    y = _poly(("x", "y"), {(0, 1): 1})
    v = place_value(P, y)
    assert v.is_exact and str(v.value) == "3/2"


def test_series_embed_kernel_gives_infinite_value():
    P = _cusp_place()
    rel = _poly(("x", "y"), {(0, 2): 1, (3, 0): -1})  # the defining relation
    v = place_value(P, rel)
    assert v.kind == "infinity"
    assert place_residue(P, rel) is ZERO


def test_series_embed_ratio_residue():
    P = _cusp_place()
    f = _rf(_poly(("x", "y"), {(0, 2): 1}), _poly(("x", "y"), {(3, 0): 1}))
    v = place_value(P, f)
    assert v.is_exact and str(v.value) == "0"
    assert str(place_residue(P, f)) == "1"


def test_series_embed_denominator_in_kernel_is_a_pole_error():
    P = _cusp_place()
    rel = _poly(("x", "y"), {(0, 2): 1, (3, 0): -1})
    f = RatFn.make(_poly(("x", "y"), {(1, 0): 1}), rel)
    with pytest.raises(PoleError):
        place_value(P, f)


def test_series_embed_stream_refinement_reports_at_least():
    # x satisfies x^2 + x = t exactly, so x^2 + x + t vanishes in char 2;
    # truncations can only ever bound the value from below
    F2 = GF(2)
    s = frobenius_root(2)
    u = t_pow(F2, ZZ_GROUP, 1)
    P = SeriesEmbedPlace(F2, ZZ_GROUP, (("x", s), ("u", u)))
    g = _poly(("x", "u"), {(1, 0): 1}, field=F2)
    assert str(place_value(P, g).value) == "1"
    rel = _poly(("x", "u"), {(2, 0): 1, (1, 0): 1, (0, 1): 1}, field=F2)
    v = place_value(P, rel)
    assert v.kind == "at_least"
    assert place_residue(P, rel) is ZERO


def test_series_embed_exact_series_no_refinement_loop():
    group = ZZ_GROUP
    a = make_series(QQ, group, [(2, 3)], precision=5)
    P = SeriesEmbedPlace(QQ, group, (("x", a),))
    g = _poly(("x",), {(1,): 1, (0,): 0})
    v = place_value(P, g)
    assert v.is_exact and str(v.value) == "2"


# ---------------------------------------------------------------------------
# invariants


def test_invariants_quad_monomial():
    P = _quad_place()
    inv = place_invariants(P, ambient_trdeg=2)
    assert (inv.rank, inv.rational_rank, inv.dim) == (1, 2, 0)
    assert inv.is_abhyankar and not inv.is_maximal_rank
    assert inv.value_group_fg and inv.residue_fg


def test_invariants_composite_divisors_maximal_rank():
    P = _two_step()
    inv = place_invariants(P, ambient_trdeg=2)
    assert (inv.rank, inv.rational_rank, inv.dim) == (2, 2, 0)
    assert inv.is_abhyankar and inv.is_maximal_rank


def test_invariants_bad_value_group_stream():
    F2 = GF(2)
    stream = bad_value_group(2, [3, 5, 7])
    x1 = t_pow(F2, QQ_GROUP, 1)
    P = SeriesEmbedPlace(F2, QQ_GROUP, (("x1", x1), ("x2", stream)))
    inv = place_invariants(P, ambient_trdeg=2)
    assert (inv.rank, inv.rational_rank, inv.dim) == (1, 1, 0)
    assert not inv.is_abhyankar
    assert not inv.value_group_fg
    assert inv.residue_fg


def test_invariants_trivial_place():
    P = TrivialPlace(("x", "y"), QQ)
    inv = place_invariants(P, ambient_trdeg=2)
    assert (inv.rank, inv.rational_rank, inv.dim) == (0, 0, 2)
    assert inv.is_abhyankar


def test_invariants_reject_overdeclared_dim():
    P = SeriesEmbedPlace(QQ, ZZ_GROUP, (("x", t_pow(QQ, ZZ_GROUP, 1)),), residue_dim=5)
    with pytest.raises(HypothesisError):
        place_invariants(P, ambient_trdeg=2)


# ---------------------------------------------------------------------------
# uniformization witness


def _smooth_cusp_place():
    F7 = GF(7)
    group = ZZ_GROUP
    x = make_series(F7, group, [(0, 2), (1, 1)])  # x -> 2 + s
    y = unit_nth_root(x * x * x, 2, precision=8)  # 8 = 1 is a square in F_7
    return SeriesEmbedPlace(F7, group, (("x", x), ("y", y)))


def test_witness_passes_at_smooth_point():
    P = _smooth_cusp_place()
    f = _poly(("x", "y"), {(0, 2): 1, (3, 0): -1}, field=GF(7))
    w = UniformizationWitness(("x",), ("y",), (f,))
    out = verify_uniformization_witness(w, P)
    assert out == {"U1": True, "U2": True, "U3": True, "smooth_center": True}


def test_witness_fails_jacobian_at_singular_origin():
    F7 = GF(7)
    group = one_over_m(2)
    P = SeriesEmbedPlace(
        F7,
        group,
        (("x", t_pow(F7, group, 1)), ("y", t_pow(F7, group, Fraction(3, 2)))),
    )
    f = _poly(("x", "y"), {(0, 2): 1, (3, 0): -1}, field=F7)
    w = UniformizationWitness(("x",), ("y",), (f,))
    out = verify_uniformization_witness(w, P)
    assert out["U1"] and out["U2"]
    assert not out["U3"] and not out["smooth_center"]


def test_witness_empty_algebraic_part_vacuous():
    P = _cusp_place()
    w = UniformizationWitness(("x",), (), ())
    out = verify_uniformization_witness(w, P)
    assert out == {"U1": True, "U2": True, "U3": True, "smooth_center": True}


def test_witness_rejects_negative_value_generator():
    group = ZZ_GROUP
    P = SeriesEmbedPlace(QQ, group, (("x", t_pow(QQ, group, -1)),))
    f = _poly(("x",), {(1,): 1})
    w = UniformizationWitness((), ("x",), (f,))
    with pytest.raises(HypothesisError):
        verify_uniformization_witness(w, P)


def test_witness_triangularity_detected():
    F7 = GF(7)
    P = EvalPlace(F7, (("a", F7.elem(1)), ("b", F7.elem(1))))
    # f1 involves the later generator b: triangularity fails
    f1 = _poly(("a", "b"), {(1, 1): 1, (0, 0): -1}, field=F7)
    f2 = _poly(("a", "b"), {(0, 1): 1, (0, 0): -1}, field=F7)
    w = UniformizationWitness((), ("a", "b"), (f1, f2))
    out = verify_uniformization_witness(w, P)
    assert not out["U1"]
    # positive-but-finite value is point vanishing, not field-level vanishing
    assert not out["U2"]
    assert not out["smooth_center"]


# ---------------------------------------------------------------------------
# JSON round trips


def test_json_roundtrip_all_variants():
    F4 = GF(2, 2)
    g = F4.generator()
    places = [
        TrivialPlace(("x", "y"), QQ),
        EvalPlace(QQ, (("x", QQ.elem(Fraction(2, 3))),)),
        EvalPlace(F4, (("x", g),)),
        _quad_place(),
        MonomialPlace(QQ, ZZ_GROUP, (("x", ZZ_GROUP.elem(1)),), (("y", "z"),)),
        _cusp_place(),
        _two_step(),
    ]
    for P in places:
        blob = place_to_json(P)
        back = place_from_json(blob)
        assert back == P, blob


def test_json_roundtrip_stream_assignment():
    F2 = GF(2)
    P = SeriesEmbedPlace(
        F2,
        QQ_GROUP,
        (("x", t_pow(F2, QQ_GROUP, 1)), ("y", bad_value_group(2, [3, 5]))),
    )
    back = place_from_json(place_to_json(P))
    assert back == P


def test_json_rejects_unknown_variant():
    with pytest.raises(ParamError):
        place_from_json({"variant": "mystery"})


def test_place_vars_accessors():
    P = _two_step()
    assert place_vars(P) == ("x1", "x2")
    assert place_vars(_cusp_place()) == ("x", "y")
