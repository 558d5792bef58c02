import random

import pytest

from valuedfields.errors import PoleError, UnsupportedError
from valuedfields.fields import GF, QQ
from valuedfields.polys import MPoly, RatFn, const_poly, mpoly, var_poly


def test_zero_coefficients_dropped():
    F = GF(3)
    p = mpoly(("X",), {(2,): F.elem(3), (0,): F.elem(1)})
    # 3 == 0 in F_3, so only the constant survives
    assert p.terms == (((0,), F.elem(1)),)


def test_like_terms_merge_and_cancel():
    p = mpoly(("X", "Y"), [((1, 0), QQ.elem(2)), ((1, 0), QQ.elem(-2)), ((0, 1), QQ.elem(5))])
    assert p.terms == (((0, 1), QQ.elem(5)),)


def test_ring_axioms_random():
    F = GF(5)
    rng = random.Random(11)

    def rand_poly():
        n = rng.randrange(4)
        return mpoly(
            ("X", "Y"),
            [((rng.randrange(3), rng.randrange(3)), F.elem(rng.randrange(5))) for _ in range(n)],
        )

    for _ in range(60):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a - a).is_zero()


def test_partial_derivative():
    # d/dY of Y^2 - X^3 is 2Y
    p = mpoly(("X", "Y"), {(0, 2): QQ.elem(1), (3, 0): QQ.elem(-1)})
    assert p.partial("Y") == mpoly(("X", "Y"), {(0, 1): QQ.elem(2)})
    assert p.partial("X") == mpoly(("X", "Y"), {(2, 0): QQ.elem(-3)})


def test_derivative_of_product_rule_random():
    F = GF(7)
    rng = random.Random(12)

    def rand_poly():
        n = rng.randrange(1, 4)
        return mpoly(
            ("X",),
            [((rng.randrange(4),), F.elem(rng.randrange(7))) for _ in range(n)],
        )

    for _ in range(40):
        a, b = rand_poly(), rand_poly()
        lhs = (a * b).partial("X")
        rhs = a.partial("X") * b + a * b.partial("X")
        assert lhs == rhs


def test_full_substitution():
    # X^2 + X*Y at X=2, Y=3 over Q is 4 + 6 = 10
    p = mpoly(("X", "Y"), {(2, 0): QQ.elem(1), (1, 1): QQ.elem(1)})
    v = p.subst({"X": QQ.elem(2), "Y": QQ.elem(3)}, QQ)
    assert v == QQ.elem(10)


def test_partial_substitution():
    p = mpoly(("X", "Y"), {(2, 1): QQ.elem(1), (0, 1): QQ.elem(4)})
    q = p.subst({"X": QQ.elem(3)}, QQ)
    assert isinstance(q, MPoly)
    assert q == mpoly(("Y",), {(1,): QQ.elem(13)})


def test_derivative_commutes_with_linear_substitution():
    # for f(X, c) with c constant: (df/dX)(a, c) equals d/dX of f(X, c) at a
    F = GF(5)
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randrange(1, 5)
        p = mpoly(
            ("X", "Y"),
            [((rng.randrange(3), rng.randrange(3)), F.elem(rng.randrange(5))) for _ in range(n)],
        )
        c = F.elem(rng.randrange(5))
        a = F.elem(rng.randrange(5))
        one_var = p.subst({"Y": c}, F)
        lhs = one_var.partial("X").subst({"X": a}, F)
        rhs = p.partial("X").subst({"X": a, "Y": c}, F)
        assert lhs == rhs


def test_ratfn_cancellation_by_cross_multiplication():
    # (X^2 - 1)/(X - 1) equals (X + 1)/1 without any gcd computation
    X = var_poly(("X",), "X", QQ)
    one = const_poly(("X",), QQ.elem(1))
    f = RatFn.make(X * X - one, X - one)
    g = RatFn.from_poly(X + one, QQ)
    assert f.eq(g)
    assert not f.eq(RatFn.from_poly(X, QQ))


def test_ratfn_pole_detection():
    X = var_poly(("X",), "X", QQ)
    one = const_poly(("X",), QQ.elem(1))
    f = RatFn.make(X * X - one, X - one)
    # the unreduced form has a pole at X = 1 even though the reduced form does not
    with pytest.raises(PoleError):
        f.subst({"X": QQ.elem(1)}, QQ)
    assert f.subst({"X": QQ.elem(3)}, QQ) == QQ.elem(4)


def test_ratfn_arithmetic():
    X = var_poly(("X",), "X", QQ)
    one = const_poly(("X",), QQ.elem(1))
    f = RatFn.make(one, X)
    g = RatFn.from_poly(X, QQ)
    s = f + g  # (1 + X^2)/X
    assert s.subst({"X": QQ.elem(2)}, QQ) == QQ.elem("5/2")
    assert (f * g).eq(RatFn.from_poly(one, QQ))
    assert (f / f).eq(RatFn.from_poly(one, QQ))
    assert (f ** -2).eq(RatFn.from_poly(X * X, QQ))
    assert (g ** 0).eq(RatFn.from_poly(one, QQ))


def test_variable_mismatch_rejected():
    p = mpoly(("X",), {(1,): QQ.elem(1)})
    q = mpoly(("Y",), {(1,): QQ.elem(1)})
    with pytest.raises(UnsupportedError):
        p + q


def test_restrict_vars():
    p = mpoly(("X",), {(2,): QQ.elem(1)})
    q = p.restrict_vars(("X", "Y"))
    assert q == mpoly(("X", "Y"), {(2, 0): QQ.elem(1)})
    r = mpoly(("X", "Y"), {(1, 1): QQ.elem(1)})
    with pytest.raises(UnsupportedError):
        r.restrict_vars(("X",))


def test_render():
    p = mpoly(("X", "Y"), {(2, 1): QQ.elem(3), (0, 0): QQ.elem(-1)})
    assert str(p) == "3*X^2*Y + -1"
    assert str(MPoly(("X",), ())) == "0"
