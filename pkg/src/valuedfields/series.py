"""Truncated generalized power series over an ordered value group.

A Series is a finite sum of terms c*t^(e) with exponents e drawn from an
ordered abelian group and coefficients from an exact field, together with a
precision bound: the series is known modulo terms of exponent >= precision.
Precision None means the sum is exact.  All arithmetic tracks precision
soundly: a result never carries a term the inputs do not determine.

Valuation is the least exponent present.  A series with no terms is either
exactly zero (infinite precision) or merely zero to its precision bound; the
two are never conflated.

The stream catalog at the bottom provides named infinite series that can be
materialized at any requested truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    CharacteristicError,
    FamilyMismatchError,
    HypothesisError,
    IterationCapError,
    ParamError,
    PrecisionError,
)
from .fields import GF, FieldDesc, FieldElement, _is_prime, embed, frobenius
from .groups import GroupDesc, GroupElem, ZZ_GROUP, QQ_GROUP, p_power_hull

__all__ = [
    "Series",
    "ValuationResult",
    "PoleSignal",
    "POLE",
    "make_series",
    "zero_series",
    "one_series",
    "t_pow",
    "add_series",
    "sub_series",
    "mul_series",
    "ring_op",
    "invert",
    "valuation",
    "residue",
    "truncate",
    "shift",
    "scale_series",
    "frobenius_series",
    "unit_nth_root",
    "render_series",
    "series_to_json",
    "Stream",
    "StreamMeta",
    "theta_defect",
    "frobenius_root",
    "bad_value_group",
    "bad_residue",
    "z_series",
    "stream_expand",
    "DEFAULT_STREAM_CAP",
]


# ---------------------------------------------------------------------------
# valuation results and the pole sentinel


@dataclass(frozen=True)
class ValuationResult:
    """Exact(g), Infinity (exact zero), or AtLeast(g) (zero to precision g)."""

    kind: str  # "exact" | "infinity" | "at_least"
    value: GroupElem | None

    @staticmethod
    def exact(g: GroupElem) -> "ValuationResult":
        return ValuationResult("exact", g)

    @staticmethod
    def infinity() -> "ValuationResult":
        return ValuationResult("infinity", None)

    @staticmethod
    def at_least(g: GroupElem) -> "ValuationResult":
        return ValuationResult("at_least", g)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self):
        if self.kind == "exact":
            return str(self.value)
        if self.kind == "infinity":
            return "oo"
        return f">= {self.value}"

    def __repr__(self):
        return f"ValuationResult({self})"


class PoleSignal:
    """Sentinel returned by residue() on negative valuation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"


POLE = PoleSignal()


# ---------------------------------------------------------------------------
# the series type


@dataclass(frozen=True)
class Series:
    field: FieldDesc
    group: GroupDesc
    terms: tuple[tuple[GroupElem, FieldElement], ...]
    precision: GroupElem | None  # None = exact

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if e.group != self.group:
                raise FamilyMismatchError(f"exponent {e} not in group {self.group}")
            if c.field != self.field:
                raise FamilyMismatchError(f"coefficient {c} not in field {self.field}")
            if c.is_zero():
                raise FamilyMismatchError("zero coefficient stored in a series")
            if prev is not None and not prev < e:
                raise FamilyMismatchError("exponents not strictly increasing")
            if self.precision is not None and not e < self.precision:
                raise FamilyMismatchError("term at or beyond the precision bound")
            prev = e

    def is_zero_to_precision(self) -> bool:
        return not self.terms

    def is_exact_zero(self) -> bool:
        return not self.terms and self.precision is None

    def times_int(self, n: int) -> "Series":
        return scale_series(self, self.field.elem(n))

    def __add__(self, other):
        return add_series(self, other)

    def __sub__(self, other):
        return sub_series(self, other)

    def __neg__(self):
        return Series(self.field, self.group, tuple((e, -c) for e, c in self.terms), self.precision)

    def __mul__(self, other):
        return mul_series(self, other)

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        result = one_series(self.field, self.group)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __str__(self):
        return render_series(self)

    def __repr__(self):
        return f"Series({render_series(self)})"


def _as_group_elem(group: GroupDesc, e) -> GroupElem:
    return e if isinstance(e, GroupElem) else group.elem(e)


def _as_field_elem(field: FieldDesc, c) -> FieldElement:
    return c if isinstance(c, FieldElement) else field.elem(c)


def make_series(field: FieldDesc, group: GroupDesc, terms, precision=None) -> Series:
    """Canonical constructor: merges duplicate exponents, drops zeros and
    terms at or beyond the precision bound."""
    prec = None if precision is None else _as_group_elem(group, precision)
    acc: dict[GroupElem, FieldElement] = {}
    for e, c in terms:
        e = _as_group_elem(group, e)
        c = _as_field_elem(field, c)
        acc[e] = acc[e] + c if e in acc else c
    kept = [
        (e, c)
        for e, c in acc.items()
        if not c.is_zero() and (prec is None or e < prec)
    ]
    kept.sort(key=lambda t: t[0])
    return Series(field, group, tuple(kept), prec)


def zero_series(field: FieldDesc, group: GroupDesc, precision=None) -> Series:
    return make_series(field, group, (), precision)


def one_series(field: FieldDesc, group: GroupDesc, precision=None) -> Series:
    return make_series(field, group, [(group.zero(), field.one())], precision)


def t_pow(field: FieldDesc, group: GroupDesc, e, c=1, precision=None) -> Series:
    """The monomial c*t^(e)."""
    return make_series(field, group, [(e, c)], precision)


# ---------------------------------------------------------------------------
# precision combinators


def _prec_min(p1: GroupElem | None, p2: GroupElem | None) -> GroupElem | None:
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    return p1 if p1 < p2 else p2


def _low_bound(a: Series) -> GroupElem | None:
    """Lower bound for the valuation: least exponent, else the precision
    bound, else None for the exact zero (valuation +oo)."""
    if a.terms:
        return a.terms[0][0]
    return a.precision


def _check_same_ring(a: Series, b: Series):
    if a.field != b.field or a.group != b.group:
        raise FamilyMismatchError(
            f"series rings differ: {a.field}/{a.group} vs {b.field}/{b.group}"
        )


def add_series(a: Series, b: Series) -> Series:
    _check_same_ring(a, b)
    prec = _prec_min(a.precision, b.precision)
    return make_series(a.field, a.group, list(a.terms) + list(b.terms), prec)


def sub_series(a: Series, b: Series) -> Series:
    return add_series(a, -b)


def mul_series(a: Series, b: Series) -> Series:
    _check_same_ring(a, b)
    la, lb = _low_bound(a), _low_bound(b)
    if la is None or lb is None:
        # an exact zero annihilates regardless of the other factor
        return zero_series(a.field, a.group)
    cand1 = None if a.precision is None else a.precision + lb
    cand2 = None if b.precision is None else b.precision + la
    prec = _prec_min(cand1, cand2)
    out = []
    for e1, c1 in a.terms:
        for e2, c2 in b.terms:
            e = e1 + e2
            if prec is None or e < prec:
                out.append((e, c1 * c2))
    return make_series(a.field, a.group, out, prec)


def ring_op(a: Series, b: Series, op: str) -> Series:
    if op == "add":
        return add_series(a, b)
    if op == "sub":
        return sub_series(a, b)
    if op == "mul":
        return mul_series(a, b)
    raise ParamError(f"unknown ring op {op!r}")


def truncate(a: Series, precision) -> Series:
    if precision is None:
        return a
    prec = _as_group_elem(a.group, precision)
    new_prec = _prec_min(a.precision, prec)
    return Series(
        a.field, a.group, tuple((e, c) for e, c in a.terms if e < new_prec), new_prec
    )


def shift(a: Series, g) -> Series:
    """Multiply by the monomial t^(g)."""
    g = _as_group_elem(a.group, g)
    prec = None if a.precision is None else a.precision + g
    return Series(a.field, a.group, tuple((e + g, c) for e, c in a.terms), prec)


def scale_series(a: Series, c: FieldElement) -> Series:
    if c.field != a.field:
        raise FamilyMismatchError("scalar from the wrong field")
    if c.is_zero():
        return zero_series(a.field, a.group)
    return Series(a.field, a.group, tuple((e, k * c) for e, k in a.terms), a.precision)


# ---------------------------------------------------------------------------
# valuation, residue, inversion


def valuation(a: Series) -> ValuationResult:
    if a.terms:
        return ValuationResult.exact(a.terms[0][0])
    if a.precision is None:
        return ValuationResult.infinity()
    return ValuationResult.at_least(a.precision)


def residue(a: Series):
    """Image in the residue field: 0 for positive valuation, the t^0
    coefficient for valuation 0, POLE for negative valuation."""
    v = valuation(a)
    if v.kind == "infinity":
        return a.field.zero()
    if v.kind == "at_least":
        if v.value.sign() > 0:
            return a.field.zero()
        raise PrecisionError(
            f"residue undecidable: series known only to O(t^({v.value}))"
        )
    s = v.value.sign()
    if s > 0:
        return a.field.zero()
    if s < 0:
        return POLE
    return a.terms[0][1]


def invert(a: Series, precision=None) -> Series:
    """Multiplicative inverse by geometric expansion of the 1-unit part.

    The result precision is capped by what the input determines: an input
    known modulo t^(P) with valuation g pins its inverse only modulo
    t^(P - 2g).  Inverting an exact series with more than one term needs an
    explicit precision bound.
    """
    v = valuation(a)
    if not v.is_exact:
        raise PrecisionError(f"cannot invert a series with valuation {v}")
    g = v.value
    c = a.terms[0][1]
    cinv = c.inverse()
    inherent = None if a.precision is None else a.precision - g - g
    target = _prec_min(
        None if precision is None else _as_group_elem(a.group, precision), inherent
    )
    if target is None:
        if len(a.terms) == 1:
            return Series(a.field, a.group, ((-g, cinv),), None)
        raise PrecisionError("inverting an exact multi-term series needs a precision bound")
    # a = c t^g (1 + u) with v(u) > 0; 1/a = c^(-1) t^(-g) sum (-u)^k
    rel = target + g
    u_terms = tuple((e - g, cinv * k) for e, k in a.terms[1:])
    u = truncate(Series(a.field, a.group, u_terms, None), rel)
    neg_u = -u
    s = one_series(a.field, a.group, rel)
    power = one_series(a.field, a.group, rel)
    while True:
        power = truncate(mul_series(power, neg_u), rel)
        if not power.terms:
            break
        s = add_series(s, power)
    return shift(scale_series(s, cinv), -g)


def frobenius_series(a: Series) -> Series:
    """Termwise p-th power: coefficients c -> c^p, exponents g -> p*g."""
    p = a.field.characteristic
    if p == 0:
        raise CharacteristicError("frobenius needs positive characteristic")
    prec = None if a.precision is None else a.precision.scale(p)
    terms = tuple((e.scale(p), frobenius(c)) for e, c in a.terms)
    return Series(a.field, a.group, terms, prec)


def unit_nth_root(u: Series, n: int, precision=None) -> Series:
    """The unique n-th root with residue 1 of a 1-unit, for n prime to the
    characteristic, by Newton iteration on X^n - u starting at 1."""
    if n < 1:
        raise ParamError("root index must be positive")
    p = u.field.characteristic
    if p and n % p == 0:
        raise CharacteristicError(f"root index {n} is divisible by the characteristic {p}")
    r = residue(u)
    if r is POLE or not (r - u.field.one()).is_zero():
        raise HypothesisError("unit_nth_root needs a 1-unit (residue exactly 1)")
    if n == 1:
        return u
    target = _prec_min(
        None if precision is None else _as_group_elem(u.group, precision), u.precision
    )
    if target is None:
        if len(u.terms) == 1:
            return one_series(u.field, u.group)
        raise PrecisionError("exact multi-term input needs an explicit precision bound")
    n_const = u.field.elem(n)
    a = one_series(u.field, u.group, target)
    uu = truncate(u, target)
    for _ in range(200):
        res = sub_series(truncate(a ** n, target), uu)
        if not res.terms:
            return a
        deriv = scale_series(truncate(a ** (n - 1), target), n_const)
        a = truncate(sub_series(a, mul_series(res, invert(deriv, target))), target)
    raise IterationCapError("unit_nth_root did not converge", 200)


# ---------------------------------------------------------------------------
# rendering and JSON


def render_series(a: Series) -> str:
    parts = [f"{c}*t^({e})" for e, c in a.terms]
    if a.precision is not None:
        parts.append(f"O(t^({a.precision}))")
    if not parts:
        return "0"
    return " + ".join(parts)


def series_to_json(a: Series) -> dict:
    return {
        "field": str(a.field),
        "group": str(a.group),
        "terms": [[str(e), str(c)] for e, c in a.terms],
        "precision": None if a.precision is None else str(a.precision),
    }


# ---------------------------------------------------------------------------
# stream catalog
#
# Streams are named infinite series with a deterministic term generator;
# expansions at increasing precision agree on common terms.


@dataclass(frozen=True)
class StreamMeta:
    """Declared place-theoretic data of the valued object the stream models:
    rational rank of the value group its exponents generate, whether that
    group is finitely generated, and the residue transcendence it contributes
    (0 for every catalog stream) with finite-generation of the residue
    extension."""

    value_rr: int
    value_group_fg: bool
    residue_dim: int
    residue_fg: bool


@dataclass(frozen=True)
class Stream:
    name: str
    params: tuple[tuple[str, object], ...]
    field: FieldDesc | None  # None when the coefficient field depends on the truncation
    group: GroupDesc
    meta: StreamMeta

    def param(self, key):
        for k, v in self.params:
            if k == key:
                return v
        raise ParamError(f"stream {self.name} has no param {key!r}")

    def __str__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({ps})"


def theta_defect(p: int) -> Stream:
    """Sum of t^(-1/p^i) for i >= 1, exponents in (1/p^oo)Z."""
    _check_prime(p)
    return Stream(
        "ThetaDefect",
        (("p", p),),
        GF(p),
        p_power_hull(p),
        StreamMeta(1, False, 0, True),
    )


def frobenius_root(p: int) -> Stream:
    """Sum of (-t)^(p^i) for i >= 0, exponents in Z."""
    _check_prime(p)
    return Stream(
        "FrobeniusRoot",
        (("p", p),),
        GF(p),
        ZZ_GROUP,
        StreamMeta(1, True, 0, True),
    )


def bad_value_group(p: int, S) -> Stream:
    """Sum of t^(-1/n) over n in S, each n prime to p; exponents in Q."""
    _check_prime(p)
    S = tuple(sorted(set(int(n) for n in S)))
    if not S:
        raise ParamError("empty denominator set")
    for n in S:
        if n < 1 or gcd(n, p) != 1:
            raise ParamError(f"denominator {n} must be positive and prime to {p}")
    return Stream(
        "BadValueGroup",
        (("p", p), ("S", S)),
        GF(p),
        QQ_GROUP,
        StreamMeta(1, False, 0, True),
    )


def bad_residue(p: int, lcm_degree: int | None = None) -> Stream:
    """Sum of a_n*t^n with a_n the canonical generator of F_{p^n}, all
    embedded into F_{p^L}; L is lcm(1..N) for the truncation's largest N, or
    the pinned lcm_degree."""
    _check_prime(p)
    if lcm_degree is not None and lcm_degree < 1:
        raise ParamError("lcm_degree must be positive")
    return Stream(
        "BadResidue",
        (("p", p), ("lcm_degree", lcm_degree)),
        None,
        ZZ_GROUP,
        StreamMeta(1, True, 0, False),
    )


def z_series(p: int) -> Stream:
    """Sum of t^(p^(nu_i) - 1/p^(nu_i)) with nu_i = i(i+1)/2, exponents in
    (1/p^oo)Z."""
    _check_prime(p)
    return Stream(
        "ZSeries",
        (("p", p),),
        GF(p),
        p_power_hull(p),
        StreamMeta(1, False, 0, True),
    )


def _check_prime(p: int):
    if not _is_prime(p):
        raise ParamError(f"{p} is not prime")


DEFAULT_STREAM_CAP = 64


def _stream_terms(s: Stream):
    """Yield (exponent: GroupElem, coeff: FieldElement) in increasing
    exponent order.  BadResidue is handled separately (field depends on the
    truncation)."""
    if s.name == "ThetaDefect":
        p = s.param("p")
        one = s.field.one()
        for i in itertools.count(1):
            yield s.group.elem(Fraction(-1, p ** i)), one
    elif s.name == "FrobeniusRoot":
        p = s.param("p")
        coeff = s.field.one() if p == 2 else -s.field.one()
        for i in itertools.count(0):
            yield s.group.elem(p ** i), coeff
    elif s.name == "BadValueGroup":
        one = s.field.one()
        for n in s.param("S"):
            yield s.group.elem(Fraction(-1, n)), one
    elif s.name == "ZSeries":
        p = s.param("p")
        one = s.field.one()
        for i in itertools.count(1):
            nu = i * (i + 1) // 2
            yield s.group.elem(p ** nu - Fraction(1, p ** nu)), one
    else:
        raise ParamError(f"unknown stream {s.name}")


def stream_expand(s: Stream, precision, max_terms: int | None = None) -> Series:
    """Materialize the stream below the requested precision, up to max_terms
    terms (default DEFAULT_STREAM_CAP).  When the term cap bites first, the
    reported precision is the first omitted exponent, so the result is exact
    below its own bound."""
    cap = DEFAULT_STREAM_CAP if max_terms is None else max_terms
    if cap < 1:
        raise ParamError("max_terms must be positive")
    prec = _as_group_elem(s.group, precision)
    if s.name == "BadResidue":
        return _expand_bad_residue(s, prec, cap)
    kept = []
    honest = prec
    for e, c in _stream_terms(s):
        if not e < prec:
            break
        if len(kept) == cap:
            honest = e  # first omitted exponent
            break
        kept.append((e, c))
    return Series(s.field, s.group, tuple(kept), honest)


def _expand_bad_residue(s: Stream, prec: GroupElem, cap: int) -> Series:
    p = s.param("p")
    pinned = s.param("lcm_degree")
    ns = []
    honest = prec
    for n in itertools.count(1):
        if not s.group.elem(n) < prec:
            break
        if len(ns) == cap:
            honest = s.group.elem(n)
            break
        ns.append(n)
    L = lcm(*ns) if ns else 1
    if pinned is not None:
        if pinned % L:
            raise ParamError(
                f"lcm_degree {pinned} cannot host degree-{max(ns)} coefficients (needs a multiple of {L})"
            )
        L = pinned
    big = GF(p, L)
    terms = tuple((s.group.elem(n), embed(GF(p, n).generator(), big)) for n in ns)
    return Series(big, s.group, terms, honest)