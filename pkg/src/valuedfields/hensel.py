"""Newton/Hensel lifting over truncated series rings.

hensel_lift finds a simple root of a univariate polynomial with series
coefficients, starting either from a supplied initial approximation or from
an automatically located simple residue root.  Every step logs the residual
valuation and asserts the quadratic-convergence certificate
v(f(a_next)) >= 2*v(f(a)).

newton_system does the same for square systems via the Jacobian (Cramer's
rule up to 4x4, elimination beyond), and implicit_solve re-solves the
trailing coordinates of a known common zero after the leading coordinates
are perturbed, with an explicit, reported perturbation threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    HypothesisError,
    IterationCapError,
    NoResidueRootError,
    PerturbationError,
    PrecisionError,
    SingularPointError,
    UnsupportedError,
)
from .fields import FieldDesc, FieldElement, FiniteField, RationalField
from .groups import GroupDesc, GroupElem
from .polys import MPoly
from .series import (
    POLE,
    Series,
    add_series,
    invert,
    make_series,
    mul_series,
    one_series,
    residue,
    series_to_json,
    sub_series,
    truncate,
    valuation,
    zero_series,
)

__all__ = [
    "SeriesPoly",
    "SystemInstance",
    "LiftResult",
    "NewtonResult",
    "ImplicitResult",
    "make_system",
    "hensel_lift",
    "newton_system",
    "implicit_solve",
    "eval_poly_at_series",
]

_MAX_STEPS = 64


@dataclass(frozen=True)
class SeriesPoly:
    """Univariate polynomial with Series coefficients, low degree first."""

    coeffs: tuple[Series, ...]
    var: str = "X"

    def __post_init__(self):
        if not self.coeffs:
            raise UnsupportedError("empty coefficient list")
        f0 = self.coeffs[0]
        for c in self.coeffs:
            if c.field != f0.field or c.group != f0.group:
                raise UnsupportedError("coefficients from different series rings")

    @property
    def field(self) -> FieldDesc:
        return self.coeffs[0].field

    @property
    def group(self) -> GroupDesc:
        return self.coeffs[0].group

    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d].is_exact_zero():
            d -= 1
        return d

    def eval(self, a: Series) -> Series:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = add_series(mul_series(acc, a), c)
        return acc

    def derivative(self) -> "SeriesPoly":
        if len(self.coeffs) == 1:
            return SeriesPoly((zero_series(self.field, self.group),), self.var)
        return SeriesPoly(
            tuple(c.times_int(i) for i, c in enumerate(self.coeffs) if i >= 1), self.var
        )

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [series_to_json(c) for c in self.coeffs]}


@dataclass(frozen=True)
class LiftResult:
    root: Series
    steps: tuple[GroupElem, ...]  # residual valuation before each correction

    def to_json(self) -> dict:
        return {
            "result": series_to_json(self.root),
            "steps": [str(v) for v in self.steps],
        }


@dataclass(frozen=True)
class NewtonResult:
    roots: tuple[Series, ...]
    steps: tuple[GroupElem, ...]  # min residual valuation before each correction


@dataclass(frozen=True)
class ImplicitResult:
    solved: tuple[Series, ...]  # the re-solved trailing coordinates
    alpha: GroupElem  # perturbations must exceed 2*alpha in value
    steps: tuple[GroupElem, ...]


# ---------------------------------------------------------------------------
# residue-root search for the automatic start


def _coeff_residues(coeffs) -> list[FieldElement]:
    out = []
    for c in coeffs:
        r = residue(c)
        if r is POLE:
            raise HypothesisError("coefficient with negative valuation")
        out.append(r)
    return out


def _poly_eval_field(coeffs: list[FieldElement], x: FieldElement) -> FieldElement:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _field_derivative(coeffs: list[FieldElement]) -> list[FieldElement]:
    if len(coeffs) == 1:
        return [coeffs[0].field.zero()]
    return [c.times_int(i) for i, c in enumerate(coeffs) if i >= 1]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _rational_candidates(residues: list[FieldElement]) -> list[FieldElement]:
    """Candidate rational roots (rational-root theorem), ascending."""
    field = residues[0].field
    fracs = [c.data for c in residues]
    den = lcm(*(q.denominator for q in fracs))
    ints = [int(q * den) for q in fracs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    cands = set()
    low = next(i for i, c in enumerate(ints) if c != 0)
    if low > 0:
        cands.add(Fraction(0))
    lead, const = ints[-1], ints[low]
    for p in _divisors(const):
        for q in _divisors(lead):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return [field.elem(c) for c in sorted(cands)]


def _find_residue_root(coeffs) -> FieldElement:
    """Least simple root of the residue polynomial, in the deterministic
    element order of the residue field."""
    residues = _coeff_residues(coeffs)
    field = residues[0].field
    deriv = _field_derivative(residues)
    if isinstance(field, FiniteField):
        candidates = field.elements()
    elif isinstance(field, RationalField):
        candidates = _rational_candidates(residues)
    else:
        raise UnsupportedError(f"no residue-root search over {field}")
    for r in candidates:
        if _poly_eval_field(residues, r).is_zero():
            if not _poly_eval_field(deriv, r).is_zero():
                return r
    raise NoResidueRootError(
        "residue polynomial has no simple root in the residue field",
        witness=[str(c) for c in residues],
    )


# ---------------------------------------------------------------------------
# single-variable lifting


def _require_precision(series_list, target: GroupElem):
    for s in series_list:
        if s.precision is not None and s.precision < target:
            raise PrecisionError(
                f"input known only to O(t^({s.precision})), below target {target}"
            )


def hensel_lift(f: SeriesPoly, b: Series | None, target, max_steps: int = _MAX_STEPS) -> LiftResult:
    """Lift a simple root to the target precision.

    Preconditions: coefficients have valuation >= 0 and precision >= target;
    the start b has v(f(b)) > 0 and v(f'(b)) = 0.  With b = None, the start
    is the least simple root of the residue polynomial, lifted from a
    constant.
    """
    field, group = f.field, f.group
    target = target if isinstance(target, GroupElem) else group.elem(target)
    if not target.sign() > 0:
        raise HypothesisError("target precision must be positive")
    for c in f.coeffs:
        v = valuation(c)
        if v.is_exact and v.value.sign() < 0:
            raise HypothesisError(f"coefficient valuation {v.value} is negative")
        if v.kind == "at_least" and v.value.sign() < 0:
            raise PrecisionError("coefficient sign undecidable at this precision")
    _require_precision(f.coeffs, target)
    if b is None:
        b = make_series(field, group, [(group.zero(), _find_residue_root(f.coeffs))])
    else:
        _require_precision([b], target)
    fd = f.derivative()
    vd = valuation(fd.eval(b))
    if not (vd.is_exact and vd.value.is_zero()):
        raise HypothesisError(f"v(f'(start)) = {vd}, need exactly 0")
    v0 = valuation(f.eval(b))
    if v0.is_exact and not v0.value.sign() > 0:
        raise HypothesisError(f"v(f(start)) = {v0.value}, need > 0")

    a = truncate(b, target)
    steps: list[GroupElem] = []
    prev: GroupElem | None = None
    for _ in range(max_steps):
        fa = truncate(f.eval(a), target)
        va = valuation(fa)
        if not va.is_exact or not va.value < target:
            return LiftResult(truncate(a, target), tuple(steps))
        if prev is not None and va.value < prev.scale(2):
            raise HypothesisError(
                f"convergence certificate failed: v went {prev} -> {va.value}"
            )
        steps.append(va.value)
        prev = va.value
        deriv_val = truncate(fd.eval(a), target)
        a = truncate(sub_series(a, mul_series(fa, invert(deriv_val, target))), target)
    raise IterationCapError("hensel_lift did not reach the target", max_steps)


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class SystemInstance:
    """Square (or underdetermined, for implicit_solve) polynomial system with
    Series coefficients; jacobian rows follow polys, columns follow vars."""

    polys: tuple[MPoly, ...]
    vars: tuple[str, ...]
    start: tuple[Series, ...]
    jacobian: tuple[tuple[MPoly, ...], ...]


def make_system(polys, vars, start) -> SystemInstance:
    polys = tuple(polys)
    vars = tuple(vars)
    start = tuple(start)
    if len(start) != len(vars):
        raise UnsupportedError("start vector length differs from variable count")
    for p in polys:
        if p.vars != vars:
            raise UnsupportedError(f"poly vars {p.vars} differ from system vars {vars}")
    jac = tuple(tuple(p.partial(v) for v in vars) for p in polys)
    return SystemInstance(polys, vars, start, jac)


def eval_poly_at_series(p: MPoly, values: dict[str, Series], field, group) -> Series:
    """Evaluate an MPoly with Series (or plain scalar) coefficients at Series
    arguments."""
    acc = zero_series(field, group)
    for exps, coeff in p.terms:
        if isinstance(coeff, Series):
            term = coeff
        else:
            term = make_series(field, group, [(group.zero(), coeff)])
        for v, e in zip(p.vars, exps):
            if e:
                term = mul_series(term, values[v] ** e)
        acc = add_series(acc, term)
    return acc


def _eval_matrix(rows, values, field, group):
    return [[eval_poly_at_series(m, values, field, group) for m in row] for row in rows]


def _det_series(m, field, group) -> Series:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = zero_series(field, group)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = mul_series(m[0][j], _det_series(minor, field, group))
        acc = add_series(acc, term) if j % 2 == 0 else sub_series(acc, term)
    return acc


def _adjugate_series(m, field, group):
    n = len(m)
    if n == 1:
        return [[one_series(field, group)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = _det_series(minor, field, group)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof  # transpose
    return adj


def _solve_linear_series(mat, rhs, target, field, group):
    """Solve mat * x = rhs to the target precision; the matrix must be a unit
    (determinant of valuation 0)."""
    n = len(mat)
    if n <= 4:
        det = _det_series(mat, field, group)
        inv_det = invert(det, target)
        adj = _adjugate_series(mat, field, group)
        out = []
        for i in range(n):
            acc = zero_series(field, group)
            for j in range(n):
                acc = add_series(acc, mul_series(adj[i][j], rhs[j]))
            out.append(truncate(mul_series(acc, inv_det), target))
        return out
    # elimination with valuation-least pivoting for larger systems
    a = [[truncate(x, target) for x in row] for row in mat]
    b = [truncate(x, target) for x in rhs]
    n_ = n
    for col in range(n_):
        best, best_v = None, None
        for r in range(col, n_):
            v = valuation(a[r][col])
            if v.is_exact and (best_v is None or v.value < best_v):
                best, best_v = r, v.value
        if best is None:
            raise SingularPointError("elimination found no usable pivot")
        a[col], a[best] = a[best], a[col]
        b[col], b[best] = b[best], b[col]
        inv_p = invert(a[col][col], target)
        for r in range(col + 1, n_):
            factor = truncate(mul_series(a[r][col], inv_p), target)
            if factor.is_zero_to_precision():
                continue
            for c in range(col, n_):
                a[r][c] = sub_series(a[r][c], mul_series(factor, a[col][c]))
            b[r] = sub_series(b[r], mul_series(factor, b[col]))
    x = [None] * n_
    for i in range(n_ - 1, -1, -1):
        acc = b[i]
        for j in range(i + 1, n_):
            acc = sub_series(acc, mul_series(a[i][j], x[j]))
        x[i] = truncate(mul_series(acc, invert(a[i][i], target)), target)
    return x


def _residuals(polys, vars, point, field, group, target):
    values = dict(zip(vars, point))
    return [truncate(eval_poly_at_series(p, values, field, group), target) for p in polys]


def _min_exact_valuation(series_list):
    """Min of the valuations; None means every residual is zero to precision."""
    best = None
    for s in series_list:
        v = valuation(s)
        if v.is_exact:
            if best is None or v.value < best:
                best = v.value
    return best


def _newton_loop(polys, vars, start, target, field, group, max_steps) -> tuple[tuple, tuple]:
    jac = [[poly.partial(v) for v in vars] for poly in polys]
    a = [truncate(s, target) for s in start]
    steps: list[GroupElem] = []
    prev = None
    for _ in range(max_steps):
        res = _residuals(polys, vars, a, field, group, target)
        worst = _min_exact_valuation(res)
        if worst is None or not worst < target:
            return tuple(a), tuple(steps)
        if prev is not None and worst < prev.scale(2):
            raise HypothesisError(
                f"convergence certificate failed: v went {prev} -> {worst}"
            )
        steps.append(worst)
        prev = worst
        values = dict(zip(vars, a))
        jac_val = _eval_matrix(jac, values, field, group)
        delta = _solve_linear_series(jac_val, res, target, field, group)
        a = [truncate(sub_series(ai, di), target) for ai, di in zip(a, delta)]
    raise IterationCapError("newton_system did not reach the target", max_steps)


def newton_system(s: SystemInstance, target, max_steps: int = _MAX_STEPS) -> NewtonResult:
    """Newton iteration on a square system from a start whose residuals have
    positive valuation and whose Jacobian determinant is a unit."""
    n = len(s.polys)
    if n != len(s.vars):
        raise UnsupportedError("newton_system needs a square system")
    field = s.start[0].field
    group = s.start[0].group
    target = target if isinstance(target, GroupElem) else group.elem(target)
    res0 = _residuals(s.polys, s.vars, s.start, field, group, target)
    for r in res0:
        v = valuation(r)
        if v.is_exact and not v.value.sign() > 0:
            raise HypothesisError(f"start residual has valuation {v.value}, need > 0")
    values = dict(zip(s.vars, s.start))
    jac0 = _eval_matrix(s.jacobian, values, field, group)
    vdet = valuation(_det_series(jac0, field, group))
    if not (vdet.is_exact and vdet.value.is_zero()):
        raise SingularPointError(f"v(det J(start)) = {vdet}, need exactly 0")
    roots, steps = _newton_loop(s.polys, s.vars, s.start, target, field, group, max_steps)
    return NewtonResult(roots, steps)


def implicit_solve(
    s: SystemInstance,
    perturbed_prefix,
    target,
    max_steps: int = _MAX_STEPS,
) -> ImplicitResult:
    """Re-solve the trailing n coordinates after perturbing the first l - n.

    s.start is a known common zero of the n polys in l variables.  The
    trailing n x n Jacobian block at the start must be a unit; the report
    includes the threshold alpha, and every perturbation must change its
    coordinate by valuation > 2*alpha.
    """
    n = len(s.polys)
    ell = len(s.vars)
    if n >= ell:
        raise UnsupportedError("implicit_solve needs more variables than equations")
    perturbed_prefix = tuple(perturbed_prefix)
    if len(perturbed_prefix) != ell - n:
        raise UnsupportedError("perturbed prefix length must be l - n")
    field = s.start[0].field
    group = s.start[0].group
    target = target if isinstance(target, GroupElem) else group.elem(target)

    values = dict(zip(s.vars, s.start))
    trailing = s.vars[ell - n:]
    block = [[p.partial(v) for v in trailing] for p in s.polys]
    block_val = _eval_matrix(block, values, field, group)
    vdet = valuation(_det_series(block_val, field, group))
    if not (vdet.is_exact and vdet.value.is_zero()):
        raise SingularPointError(f"v(det of trailing Jacobian block) = {vdet}, need 0")

    alpha = group.zero()
    for row in _adjugate_series(block_val, field, group):
        for entry in row:
            v = valuation(entry)
            if v.is_exact and alpha < v.value:
                alpha = v.value
    threshold = alpha.scale(2)

    for old, new in zip(s.start, perturbed_prefix):
        diff = sub_series(new, old)
        if diff.is_exact_zero():
            continue
        v = valuation(diff)
        bound = v.value if v.kind != "infinity" else None
        if bound is None or not threshold < bound:
            raise PerturbationError(
                f"perturbation valuation {v} does not exceed threshold 2*alpha = {threshold}"
            )

    assignment = dict(zip(s.vars[: ell - n], perturbed_prefix))
    reduced = []
    for p in s.polys:
        q = p.subst(assignment, field)
        if not isinstance(q, MPoly):
            raise UnsupportedError("substitution eliminated all variables")
        reduced.append(q.restrict_vars(trailing))
    start_tail = s.start[ell - n:]
    res0 = _residuals(reduced, trailing, start_tail, field, group, target)
    for r in res0:
        v = valuation(r)
        if v.is_exact and not v.value.sign() > 0:
            raise PerturbationError(
                f"perturbation too large: residual valuation {v.value} not positive"
            )
    solved, steps = _newton_loop(reduced, trailing, start_tail, target, field, group, max_steps)
    return ImplicitResult(solved, alpha, steps)