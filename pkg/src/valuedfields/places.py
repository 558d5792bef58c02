"""Places of rational function fields K(x1,...,xn) given by finite data.

A place is described declaratively and evaluated exactly:

* ``TrivialPlace``   -- value 0 on every nonzero function, residue the
  function itself.
* ``EvalPlace``      -- evaluation at a point; the value is the vector of
  vanishing orders along the listed coordinates (first listed dominates).
* ``MonomialPlace``  -- prescribed positive, rationally independent values
  on some variables and fresh residue indeterminates for the others; the
  value of a polynomial is the least weighted exponent sum over its
  monomials, and the residue is the sum of the minimal monomials' images.
* ``SeriesEmbedPlace`` -- substitute explicit series (or catalog streams,
  expanded adaptively) for the variables and read value and residue off the
  resulting series.
* ``ComposePlace``   -- place on the residue field applied after a first
  place; values are lexicographic tuples with the first stage dominant.

Composite values are flattened to integer lex tuples, so every stage of a
composition must have an integer-coordinate value group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (
    FieldMismatchError,
    HypothesisError,
    ParamError,
    PoleError,
    PrecisionError,
    SpanError,
    UnsupportedError,
)
from .fields import GF, QQ, FieldDesc, FieldElement, RationalField
from .groups import (
    GroupDesc,
    GroupElem,
    LexGroup,
    QQ_GROUP,
    QuadGroup,
    RationalGroup,
    ZZ_GROUP,
    one_over_m,
    p_power_hull,
    parse_elem,
)
from .groups import invariants as group_invariants
from .hensel import eval_poly_at_series
from .polys import MPoly, RatFn, const_poly, mpoly
from .series import (
    DEFAULT_STREAM_CAP,
    POLE,
    Series,
    Stream,
    ValuationResult,
    bad_residue,
    bad_value_group,
    frobenius_root,
    make_series,
    stream_expand,
    theta_defect,
    valuation,
    z_series,
)

__all__ = [
    "ZERO",
    "TrivialPlace",
    "EvalPlace",
    "MonomialPlace",
    "SeriesEmbedPlace",
    "ComposePlace",
    "PlaceInvariants",
    "UniformizationWitness",
    "place_vars",
    "residue_vars",
    "value_group",
    "place_value",
    "place_residue",
    "compose",
    "place_invariants",
    "verify_uniformization_witness",
    "place_to_json",
    "place_from_json",
]


class ZeroSignal:
    """Sentinel: the residue of an element of positive value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"


ZERO = ZeroSignal()

REFINE_ROUNDS = 4
BASE_PRECISION = 8


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class TrivialPlace:
    vars: tuple[str, ...]
    field: FieldDesc

    def __post_init__(self):
        _check_distinct(self.vars)


@dataclass(frozen=True)
class EvalPlace:
    field: FieldDesc
    assignments: tuple[tuple[str, FieldElement], ...]

    def __post_init__(self):
        _check_distinct([v for v, _ in self.assignments])
        for v, a in self.assignments:
            if a.field != self.field:
                raise FieldMismatchError(f"point coordinate {v} lies in {a.field}")


@dataclass(frozen=True)
class MonomialPlace:
    field: FieldDesc
    group: GroupDesc
    values: tuple[tuple[str, GroupElem], ...]
    residues: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        names = [v for v, _ in self.values] + [v for v, _ in self.residues]
        _check_distinct(names)
        _check_distinct([z for _, z in self.residues])
        for _, z in self.residues:
            if z in names:
                raise ParamError(f"residue indeterminate {z} collides with a variable")
        if not self.values:
            raise ParamError("a monomial place needs at least one valued variable")
        for v, g in self.values:
            if g.group != self.group:
                raise ParamError(f"value of {v} lies outside the declared group")
            if g.sign() <= 0:
                raise ParamError(f"value of {v} must be positive")
        _check_rational_independence([g for _, g in self.values])


@dataclass(frozen=True)
class SeriesEmbedPlace:
    field: FieldDesc
    group: GroupDesc
    assignments: tuple[tuple[str, Series | Stream], ...]
    residue_dim: int = 0  # declared, never inferred from truncations

    def __post_init__(self):
        _check_distinct([v for v, _ in self.assignments])
        for v, s in self.assignments:
            if isinstance(s, Stream):
                if s.group != self.group:
                    raise ParamError(f"stream for {v} lives in {s.group}, place in {self.group}")
                if s.field is not None and s.field != self.field:
                    raise FieldMismatchError(f"stream for {v} has coefficients in {s.field}")
            else:
                if s.group != self.group or s.field != self.field:
                    raise FieldMismatchError(f"series for {v} lies in a different ring")


@dataclass(frozen=True)
class ComposePlace:
    first: "PlaceDesc"
    second: "PlaceDesc"


PlaceDesc = TrivialPlace | EvalPlace | MonomialPlace | SeriesEmbedPlace | ComposePlace


def _check_distinct(names):
    seen = set()
    for n in names:
        if n in seen:
            raise ParamError(f"repeated name {n!r}")
        seen.add(n)


def _check_rational_independence(values: list[GroupElem]):
    """Supported families: a single value; values on distinct lex axes; or up
    to two rationally independent elements of Q + Q*sqrt2."""
    if len(values) == 1:
        return
    group = values[0].group
    if isinstance(group, LexGroup):
        axes = set()
        for g in values:
            support = [i for i, c in enumerate(g.coords()) if c != 0]
            if len(support) != 1:
                raise SpanError(f"lex value {g} is not on a single axis")
            if support[0] in axes:
                raise SpanError("two values share a lex axis")
            axes.add(support[0])
        return
    if isinstance(group, QuadGroup):
        if len(values) > 2:
            raise SpanError("at most two independent values fit in Q + Q*sqrt2")
        (a1, b1), (a2, b2) = values[0].coords(), values[1].coords()
        if a1 * b2 - a2 * b1 == 0:
            raise SpanError(f"{values[0]} and {values[1]} are rationally dependent")
        return
    raise SpanError("several values in a rank-1 rational group are never independent")


# ---------------------------------------------------------------------------
# structural accessors


def place_vars(P: PlaceDesc) -> tuple[str, ...]:
    if isinstance(P, TrivialPlace):
        return P.vars
    if isinstance(P, EvalPlace):
        return tuple(v for v, _ in P.assignments)
    if isinstance(P, MonomialPlace):
        return tuple(v for v, _ in P.values) + tuple(v for v, _ in P.residues)
    if isinstance(P, SeriesEmbedPlace):
        return tuple(v for v, _ in P.assignments)
    return place_vars(P.first)


def residue_vars(P: PlaceDesc) -> tuple[str, ...]:
    """Indeterminates of the residue field description (empty when the
    residue field is the coefficient field)."""
    if isinstance(P, TrivialPlace):
        return P.vars
    if isinstance(P, MonomialPlace):
        return tuple(z for _, z in P.residues)
    if isinstance(P, ComposePlace):
        return residue_vars(P.second)
    return ()


def base_field(P: PlaceDesc) -> FieldDesc:
    if isinstance(P, ComposePlace):
        return base_field(P.first)
    return P.field


def _depth(P: PlaceDesc) -> int:
    """Number of lex coordinates the place contributes inside a composition."""
    if isinstance(P, TrivialPlace):
        return 1
    if isinstance(P, EvalPlace):
        return len(P.assignments)
    if isinstance(P, (MonomialPlace, SeriesEmbedPlace)):
        if P.group == ZZ_GROUP:
            return 1
        if isinstance(P.group, LexGroup):
            return P.group.r
        raise UnsupportedError(
            f"{P.group} has non-integer coordinates; it cannot join a composition"
        )
    return _depth(P.first) + _depth(P.second)


def value_group(P: PlaceDesc) -> GroupDesc:
    if isinstance(P, TrivialPlace):
        return ZZ_GROUP
    if isinstance(P, EvalPlace):
        n = len(P.assignments)
        return ZZ_GROUP if n == 1 else LexGroup(n)
    if isinstance(P, (MonomialPlace, SeriesEmbedPlace)):
        return P.group
    d = _depth(P)
    return LexGroup(d)


def _flatten(g: GroupElem) -> tuple[int, ...]:
    out = []
    for q in g.coords():
        if q.denominator != 1:
            raise UnsupportedError(f"non-integer coordinate {q} in a composite value")
        out.append(int(q))
    return tuple(out)


# ---------------------------------------------------------------------------
# polynomial preliminaries


def _taylor_shift(g: MPoly, var: str, a: FieldElement) -> MPoly:
    """Substitute var -> var + a."""
    if a.is_zero() or var not in g.vars:
        return g
    idx = g.vars.index(var)
    out: dict[tuple[int, ...], FieldElement] = {}
    pow_cache = {0: a.field.one()}

    def a_pow(k):
        if k not in pow_cache:
            pow_cache[k] = a_pow(k - 1) * a
        return pow_cache[k]

    for exps, coeff in g.terms:
        e = exps[idx]
        for k in range(e + 1):
            new = list(exps)
            new[idx] = k
            contrib = (coeff * a_pow(e - k)).times_int(comb(e, k))
            key = tuple(new)
            acc = out.get(key)
            out[key] = contrib if acc is None else acc + contrib
    return MPoly.make(g.vars, out)


def _split_by_var(g: MPoly, var: str) -> dict[int, MPoly]:
    """Coefficient polynomials of g viewed as a polynomial in var."""
    if var not in g.vars:
        return {0: g}
    idx = g.vars.index(var)
    rest = tuple(v for v in g.vars if v != var)
    buckets: dict[int, dict[tuple[int, ...], FieldElement]] = {}
    for exps, coeff in g.terms:
        k = exps[idx]
        key = tuple(e for i, e in enumerate(exps) if i != idx)
        bucket = buckets.setdefault(k, {})
        acc = bucket.get(key)
        bucket[key] = coeff if acc is None else acc + coeff
    out = {}
    for k, term_map in buckets.items():
        mp = MPoly.make(rest, term_map)
        if mp.terms:
            out[k] = mp
    return out


def _const_value(g: MPoly) -> FieldElement | None:
    """The coefficient when g is a constant polynomial, else None."""
    if not g.terms:
        return None
    if len(g.terms) == 1 and all(e == 0 for e in g.terms[0][0]):
        return g.terms[0][1]
    return None


# ---------------------------------------------------------------------------
# exact leading data (value + residue representative), per variant


def _lead(P: PlaceDesc, g: MPoly):
    """For nonzero g return (value: GroupElem of value_group(P), leading),
    where leading represents the residue of g divided by its value part:
    a FieldElement for Eval, an MPoly over the residue indeterminates for
    Trivial and Monomial, and whatever the final stage yields for Compose."""
    if not g.terms:
        raise ParamError("the zero polynomial has no value")
    if isinstance(P, TrivialPlace):
        return ZZ_GROUP.zero(), g
    if isinstance(P, EvalPlace):
        coords, lead = _eval_lead(list(P.assignments), g)
        vg = value_group(P)
        val = vg.elem(coords[0]) if vg == ZZ_GROUP else vg.elem(coords)
        return val, lead
    if isinstance(P, MonomialPlace):
        return _monomial_lead(P, g)
    if isinstance(P, SeriesEmbedPlace):
        s = _substitute(P, g, 0)
        v = valuation(s)
        if not v.is_exact:
            raise PrecisionError(f"value of an inner stage undecidable: {v}")
        return v.value, s.terms[0][1]
    v1, lead1 = _lead(P.first, g)
    inner_vars = residue_vars(P.first)
    if isinstance(lead1, FieldElement):
        lead1 = const_poly(inner_vars, lead1)
    v2, lead2 = _lead(P.second, lead1)
    coords = _flatten(v1) + _flatten(v2)
    return LexGroup(len(coords)).elem(coords), lead2


def _eval_lead(assignments, g: MPoly):
    if not assignments:
        c = _const_value(g)
        if c is None:  # pragma: no cover - covered-variable check prevents this
            raise ParamError(f"{g} involves variables the place does not cover")
        return (), c
    var, a = assignments[0]
    shifted = _taylor_shift(g, var, a)
    buckets = _split_by_var(shifted, var)
    k0 = min(buckets)
    coords, lead = _eval_lead(assignments[1:], buckets[k0])
    return (k0,) + coords, lead


def _monomial_lead(P: MonomialPlace, g: MPoly):
    weights = dict(P.values)
    res_names = dict(P.residues)
    zvars = tuple(z for _, z in P.residues)
    best = None
    collided: dict[tuple[int, ...], FieldElement] = {}
    for exps, coeff in g.terms:
        val = P.group.zero()
        zexp = [0] * len(zvars)
        for name, e in zip(g.vars, exps):
            if e == 0:
                continue
            if name in weights:
                val = val + weights[name].scale(e)
            elif name in res_names:
                zexp[zvars.index(res_names[name])] = e
            else:
                raise ParamError(f"variable {name} is not covered by the place")
        if best is None or val < best:
            best = val
            collided = {}
        if val == best:
            key = tuple(zexp)
            acc = collided.get(key)
            collided[key] = coeff if acc is None else acc + coeff
    lead = MPoly.make(zvars, collided)
    if not lead.terms:
        raise HypothesisError(
            "minimal monomials cancel; the independence hypothesis fails"
        )
    return best, lead


# ---------------------------------------------------------------------------
# series embedding with adaptive stream refinement


def _substitute(P: SeriesEmbedPlace, g: MPoly, round_: int) -> Series:
    values = {}
    for v, s in P.assignments:
        if isinstance(s, Stream):
            prec = P.group.elem(BASE_PRECISION * (2 ** round_))
            values[v] = stream_expand(s, prec, DEFAULT_STREAM_CAP * (2 ** round_))
        else:
            values[v] = s
    return eval_poly_at_series(g, values, P.field, P.group)


def _has_stream(P: SeriesEmbedPlace) -> bool:
    return any(isinstance(s, Stream) for _, s in P.assignments)


def _embed_valuations(P: SeriesEmbedPlace, num: MPoly, den: MPoly):
    """(v_num, v_den, s_num, s_den) with exact v_den, refining streams."""
    rounds = REFINE_ROUNDS if _has_stream(P) else 1
    for r in range(rounds):
        s_num = _substitute(P, num, r)
        s_den = _substitute(P, den, r)
        v_num, v_den = valuation(s_num), valuation(s_den)
        if v_den.kind == "infinity":
            raise PoleError("denominator vanishes under the embedding")
        if v_den.is_exact and (v_num.is_exact or v_num.kind == "infinity"):
            return v_num, v_den, s_num, s_den
        if r == rounds - 1:
            if not v_den.is_exact:
                raise PrecisionError(
                    f"denominator valuation undecidable: {v_den} after refinement"
                )
            return v_num, v_den, s_num, s_den
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# public evaluation


def _as_ratfn(f: RatFn | MPoly, field: FieldDesc) -> RatFn:
    if isinstance(f, MPoly):
        return RatFn.from_poly(f, field)
    return f


def _check_covered(P: PlaceDesc, f: RatFn):
    covered = set(place_vars(P))
    for name in f.num.vars:
        if name not in covered:
            raise ParamError(f"variable {name} is not covered by the place")


def place_value(P: PlaceDesc, f: RatFn | MPoly) -> ValuationResult:
    """Value of a nonzero rational function: v(num) - v(den)."""
    f = _as_ratfn(f, base_field(P))
    _check_covered(P, f)
    if not f.num.terms:
        raise ParamError("the zero function has no value")
    if isinstance(P, SeriesEmbedPlace):
        v_num, v_den, _, _ = _embed_valuations(P, f.num, f.den)
        if v_num.kind == "infinity":
            return ValuationResult.infinity()
        if v_num.is_exact:
            return ValuationResult.exact(v_num.value - v_den.value)
        return ValuationResult.at_least(v_num.value - v_den.value)
    v_num, _ = _lead(P, f.num)
    v_den, _ = _lead(P, f.den)
    return ValuationResult.exact(v_num - v_den)


def place_residue(P: PlaceDesc, f: RatFn | MPoly):
    """ZERO for positive value, POLE for negative, and the exact residue at
    value zero: a FieldElement, or a polynomial/rational function in the
    residue indeterminates."""
    f = _as_ratfn(f, base_field(P))
    _check_covered(P, f)
    if not f.num.terms:
        raise ParamError("the zero function has no residue data")
    if isinstance(P, SeriesEmbedPlace):
        return _embed_residue(P, f)
    v_num, lead_num = _lead(P, f.num)
    v_den, lead_den = _lead(P, f.den)
    s = (v_num - v_den).sign()
    if s > 0:
        return ZERO
    if s < 0:
        return POLE
    return _leading_ratio(lead_num, lead_den)


def _embed_residue(P: SeriesEmbedPlace, f: RatFn):
    v_num, v_den, s_num, s_den = _embed_valuations(P, f.num, f.den)
    if v_num.kind == "infinity":
        return ZERO
    w = v_den.value
    if v_num.is_exact:
        s = (v_num.value - w).sign()
        if s > 0:
            return ZERO
        if s < 0:
            return POLE
        return s_num.terms[0][1] / s_den.terms[0][1]
    # num only bounded below: decidable exactly when the bound clears the den
    if (v_num.value - w).sign() > 0:
        return ZERO
    raise PrecisionError(
        f"residue undecidable: numerator value only known to be >= {v_num.value}"
    )


def _leading_ratio(lead_num, lead_den):
    if isinstance(lead_num, FieldElement) and isinstance(lead_den, FieldElement):
        return lead_num / lead_den
    cn, cd = _const_value(lead_num), _const_value(lead_den)
    if cn is not None and cd is not None:
        return cn / cd
    if cd is not None:
        return lead_num.scale(cd.inverse())
    return RatFn.make(lead_num, lead_den)


# ---------------------------------------------------------------------------
# composition


def compose(Q: PlaceDesc, Qbar: PlaceDesc) -> PlaceDesc:
    """Place Qbar on the residue field of Q, applied after Q; values are lex
    pairs with Q dominant."""
    inner = residue_vars(Q)
    if not inner:
        raise UnsupportedError("the first place has a trivial residue field description")
    if set(inner) != set(place_vars(Qbar)):
        raise ParamError(
            f"second place acts on {place_vars(Qbar)}, residue field has {inner}"
        )
    out = ComposePlace(Q, Qbar)
    _depth(out)  # reject stages whose values do not flatten to integers
    return out


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class PlaceInvariants:
    rank: int
    rational_rank: int
    dim: int
    is_abhyankar: bool
    is_maximal_rank: bool
    ambient_trdeg: int
    value_group_fg: bool = True
    residue_fg: bool = True

    def to_json(self):
        return {
            "rank": self.rank,
            "rational_rank": self.rational_rank,
            "dim": self.dim,
            "is_abhyankar": self.is_abhyankar,
            "is_maximal_rank": self.is_maximal_rank,
            "ambient_trdeg": self.ambient_trdeg,
            "value_group_fg": self.value_group_fg,
            "residue_fg": self.residue_fg,
        }


def _coord_matrix_rank(values: list[GroupElem]) -> int:
    rows = [list(g.coords()) for g in values]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                factor = rows[r][c] / rows[rank][c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _place_rank(P: PlaceDesc) -> int:
    if isinstance(P, TrivialPlace):
        return 0
    if isinstance(P, EvalPlace):
        return len(P.assignments)
    if isinstance(P, MonomialPlace):
        if isinstance(P.group, LexGroup):
            return len(P.values)
        return 1  # archimedean value group
    if isinstance(P, SeriesEmbedPlace):
        return group_invariants(P.group).rank
    return _place_rank(P.first) + _place_rank(P.second)


def _place_rr(P: PlaceDesc) -> int:
    if isinstance(P, TrivialPlace):
        return 0
    if isinstance(P, EvalPlace):
        return len(P.assignments)
    if isinstance(P, MonomialPlace):
        return _coord_matrix_rank([g for _, g in P.values])
    if isinstance(P, SeriesEmbedPlace):
        return group_invariants(P.group).rational_rank
    return _place_rr(P.first) + _place_rr(P.second)


def _place_dim(P: PlaceDesc, ambient: int) -> int:
    if isinstance(P, TrivialPlace):
        return ambient
    if isinstance(P, EvalPlace):
        return 0
    if isinstance(P, MonomialPlace):
        return len(P.residues)
    if isinstance(P, SeriesEmbedPlace):
        return P.residue_dim
    return _place_dim(P.second, len(place_vars(P.second)))


def _fg_flags(P: PlaceDesc) -> tuple[bool, bool]:
    if isinstance(P, SeriesEmbedPlace):
        vfg, rfg = True, True
        for _, s in P.assignments:
            if isinstance(s, Stream):
                vfg = vfg and s.meta.value_group_fg
                rfg = rfg and s.meta.residue_fg
        return vfg, rfg
    if isinstance(P, ComposePlace):
        v1, r1 = _fg_flags(P.first)
        v2, r2 = _fg_flags(P.second)
        return v1 and v2, r1 and r2
    return True, True


def place_invariants(P: PlaceDesc, ambient_trdeg: int) -> PlaceInvariants:
    rank = _place_rank(P)
    rr = _place_rr(P)
    dim = _place_dim(P, ambient_trdeg)
    if ambient_trdeg < dim + rr:
        raise HypothesisError(
            f"declared data violates trdeg >= dim + rational rank: "
            f"{ambient_trdeg} < {dim} + {rr}"
        )
    vfg, rfg = _fg_flags(P)
    return PlaceInvariants(
        rank=rank,
        rational_rank=rr,
        dim=dim,
        is_abhyankar=(ambient_trdeg == dim + rr),
        is_maximal_rank=(rank == ambient_trdeg),
        ambient_trdeg=ambient_trdeg,
        value_group_fg=vfg,
        residue_fg=rfg,
    )


# ---------------------------------------------------------------------------
# smooth-center witness


@dataclass(frozen=True)
class UniformizationWitness:
    """Transcendence part (variable names), algebraic generators (variable
    names with known images under the place), and one polynomial per
    generator, written over trans_vars + gen_vars."""

    trans_vars: tuple[str, ...]
    gen_vars: tuple[str, ...]
    polys: tuple[MPoly, ...]

    def __post_init__(self):
        if len(self.polys) != len(self.gen_vars):
            raise ParamError("need exactly one polynomial per generator")
        _check_distinct(self.trans_vars + self.gen_vars)


def _residue_as_field_elem(P: PlaceDesc, g: MPoly, field: FieldDesc) -> FieldElement:
    r = place_residue(P, g)
    if r is ZERO:
        return field.zero()
    if r is POLE:
        raise HypothesisError("witness element has a pole at the place")
    if not isinstance(r, FieldElement):
        raise UnsupportedError("witness residues must land in the coefficient field")
    return r


def verify_uniformization_witness(w: UniformizationWitness, P: PlaceDesc) -> dict:
    """Check triangularity, vanishing at the generators, and nonvanishing of
    the Jacobian residue; smooth_center is their conjunction."""
    field = base_field(P)
    all_vars = place_vars(P)
    for name in w.trans_vars + w.gen_vars:
        g = mpoly(all_vars, {_unit_exp(all_vars, name): field.one()})
        v = place_value(P, g)
        if v.kind == "exact" and v.value.sign() < 0:
            raise HypothesisError(f"witness element {name} has negative value")

    n = len(w.gen_vars)
    u1 = True
    for i in range(n):
        fi = w.polys[i]
        for j in range(i + 1, n):
            later = w.gen_vars[j]
            if later in fi.vars:
                idx = fi.vars.index(later)
                if any(exps[idx] for exps, _ in fi.terms):
                    u1 = False

    u2 = True
    for fi in w.polys:
        if not fi.terms:
            continue
        v = place_value(P, fi)
        if v.kind == "exact":
            u2 = False

    if n == 0:
        u3 = True
    else:
        entries = [
            [w.polys[i].partial(w.gen_vars[j]) for j in range(n)] for i in range(n)
        ]
        residues = []
        for row in entries:
            residues.append(
                [
                    field.zero() if not e.terms else _residue_as_field_elem(P, e, field)
                    for e in row
                ]
            )
        u3 = not _det_field(residues, field).is_zero()

    return {"U1": u1, "U2": u2, "U3": u3, "smooth_center": u1 and u2 and u3}


def _unit_exp(vars: tuple[str, ...], name: str) -> tuple[int, ...]:
    if name not in vars:
        raise ParamError(f"witness element {name} is not a place variable")
    return tuple(1 if v == name else 0 for v in vars)


def _det_field(m: list[list[FieldElement]], field: FieldDesc) -> FieldElement:
    n = len(m)
    if n == 0:
        return field.one()
    if n == 1:
        return m[0][0]
    total = field.zero()
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        contrib = m[0][j] * _det_field(minor, field)
        total = total + contrib.times_int(sign)
        sign = -sign
    return total


# ---------------------------------------------------------------------------
# JSON descriptors


def _field_to_json(f: FieldDesc):
    if isinstance(f, RationalField):
        return {"kind": "Q"}
    return {"kind": "GF", "p": f.p, "n": f.n}


def _field_from_json(blob) -> FieldDesc:
    if blob["kind"] == "Q":
        return QQ
    if blob["kind"] == "GF":
        return GF(int(blob["p"]), int(blob.get("n", 1)))
    raise ParamError(f"unknown field kind {blob['kind']!r}")


def _group_to_json(g: GroupDesc):
    if isinstance(g, RationalGroup):
        if g.law == "all":
            return {"kind": "Q"}
        if g.law == "one_over_m":
            return {"kind": "one_over_m", "m": g.m}
        return {"kind": "p_power", "p": g.p}
    if isinstance(g, LexGroup):
        return {"kind": "lex", "r": g.r}
    return {"kind": "quad"}


def _group_from_json(blob) -> GroupDesc:
    kind = blob["kind"]
    if kind == "Q":
        return QQ_GROUP
    if kind == "one_over_m":
        return one_over_m(int(blob["m"]))
    if kind == "p_power":
        return p_power_hull(int(blob["p"]))
    if kind == "lex":
        return LexGroup(int(blob["r"]))
    if kind == "quad":
        return QuadGroup()
    raise ParamError(f"unknown group kind {kind!r}")


def _coeff_to_json(c: FieldElement):
    if isinstance(c.field, RationalField):
        return str(c.data)
    return list(c.data)


def _coeff_from_json(field: FieldDesc, blob) -> FieldElement:
    if isinstance(blob, str):
        return field.elem(Fraction(blob))
    if isinstance(blob, int):
        return field.elem(blob)
    return field.elem(list(blob))


_STREAM_BUILDERS = {
    "ThetaDefect": lambda params: theta_defect(params["p"]),
    "FrobeniusRoot": lambda params: frobenius_root(params["p"]),
    "BadValueGroup": lambda params: bad_value_group(params["p"], params["S"]),
    "BadResidue": lambda params: bad_residue(params["p"], params.get("lcm_degree")),
    "ZSeries": lambda params: z_series(params["p"]),
}


def _assignment_to_json(s: Series | Stream):
    if isinstance(s, Stream):
        return {"stream": s.name, "params": {k: v for k, v in s.params}}
    return {
        "terms": [[str(e), _coeff_to_json(c)] for e, c in s.terms],
        "precision": None if s.precision is None else str(s.precision),
    }


def _assignment_from_json(field: FieldDesc, group: GroupDesc, blob):
    if "stream" in blob:
        name = blob["stream"]
        if name not in _STREAM_BUILDERS:
            raise ParamError(f"unknown stream {name!r}")
        return _STREAM_BUILDERS[name](blob.get("params", {}))
    terms = [
        (parse_elem(group, e), _coeff_from_json(field, c)) for e, c in blob["terms"]
    ]
    prec = blob.get("precision")
    prec_elem = None if prec is None else parse_elem(group, prec)
    return make_series(field, group, terms, prec_elem)


def place_to_json(P: PlaceDesc) -> dict:
    if isinstance(P, TrivialPlace):
        return {"variant": "trivial", "field": _field_to_json(P.field), "vars": list(P.vars)}
    if isinstance(P, EvalPlace):
        return {
            "variant": "eval",
            "field": _field_to_json(P.field),
            "assignments": [[v, _coeff_to_json(a)] for v, a in P.assignments],
        }
    if isinstance(P, MonomialPlace):
        return {
            "variant": "monomial",
            "field": _field_to_json(P.field),
            "group": _group_to_json(P.group),
            "values": [[v, str(g)] for v, g in P.values],
            "residues": [[v, z] for v, z in P.residues],
        }
    if isinstance(P, SeriesEmbedPlace):
        return {
            "variant": "series_embed",
            "field": _field_to_json(P.field),
            "group": _group_to_json(P.group),
            "residue_dim": P.residue_dim,
            "assignments": [[v, _assignment_to_json(s)] for v, s in P.assignments],
        }
    return {
        "variant": "compose",
        "first": place_to_json(P.first),
        "second": place_to_json(P.second),
    }


def place_from_json(blob: dict) -> PlaceDesc:
    variant = blob.get("variant")
    if variant == "trivial":
        return TrivialPlace(tuple(blob["vars"]), _field_from_json(blob["field"]))
    if variant == "eval":
        field = _field_from_json(blob["field"])
        return EvalPlace(
            field,
            tuple((v, _coeff_from_json(field, a)) for v, a in blob["assignments"]),
        )
    if variant == "monomial":
        field = _field_from_json(blob["field"])
        group = _group_from_json(blob["group"])
        return MonomialPlace(
            field,
            group,
            tuple((v, parse_elem(group, g)) for v, g in blob["values"]),
            tuple((v, z) for v, z in blob.get("residues", [])),
        )
    if variant == "series_embed":
        field = _field_from_json(blob["field"])
        group = _group_from_json(blob["group"])
        return SeriesEmbedPlace(
            field,
            group,
            tuple(
                (v, _assignment_from_json(field, group, s))
                for v, s in blob["assignments"]
            ),
            int(blob.get("residue_dim", 0)),
        )
    if variant == "compose":
        return compose(place_from_json(blob["first"]), place_from_json(blob["second"]))
    raise ParamError(f"unknown place variant {variant!r}")