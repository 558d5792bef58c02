"""Sparse multivariate polynomials and rational functions.

MPoly stores terms as a sorted tuple of (exponent tuple, coefficient) pairs,
e.g. X^2*Y - 3 over vars ("X", "Y") is (((0, 0), -3), ((2, 1), 1)).  The
coefficient type is generic: anything with +, *, unary -, times_int() and
is_exact_zero() works, which covers both FieldElement and Series.  Exactly
zero coefficients are dropped on construction, so the zero polynomial has no
terms.

RatFn is a quotient num/den of FieldElement-coefficient polynomials with a
nonzero denominator.  No gcd machinery: equality is decided by
cross-multiplication and evaluation signals poles instead of cancelling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatchError, PoleError, UnsupportedError
from .fields import FieldDesc, FieldElement

__all__ = ["MPoly", "RatFn", "mpoly", "const_poly", "var_poly"]


@dataclass(frozen=True)
class MPoly:
    vars: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], object], ...]

    @staticmethod
    def make(vars, term_map) -> "MPoly":
        vars = tuple(vars)
        merged: dict[tuple[int, ...], object] = {}
        for exps, coef in (term_map.items() if isinstance(term_map, dict) else term_map):
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars):
                raise UnsupportedError(f"exponent tuple {exps} does not match vars {vars}")
            if any(e < 0 for e in exps):
                raise UnsupportedError("negative exponents belong in RatFn or Series")
            if exps in merged:
                merged[exps] = merged[exps] + coef
            else:
                merged[exps] = coef
        clean = {e: c for e, c in merged.items() if not c.is_exact_zero()}
        return MPoly(vars, tuple(sorted(clean.items(), key=lambda t: t[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MPoly"):
        if self.vars != other.vars:
            raise UnsupportedError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        return MPoly.make(self.vars, list(self.terms) + list(other.terms))

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        acc: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return MPoly.make(self.vars, acc)

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise UnsupportedError("negative power of a polynomial")
        if not self.terms and k == 0:
            raise UnsupportedError("0^0 is undefined")
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                break
            base = base * base
        if result is None:
            # k was 0: the caller must scale by a genuine one; handled by RatFn
            raise UnsupportedError("use an explicit constant for the empty product")
        return result

    def scale(self, coef) -> "MPoly":
        return MPoly.make(self.vars, tuple((e, c * coef) for e, c in self.terms))

    def partial(self, var: str) -> "MPoly":
        """Formal partial derivative."""
        i = self.vars.index(var)
        out = []
        for e, c in self.terms:
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out.append((ne, c.times_int(e[i])))
        return MPoly.make(self.vars, out)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def subst(self, values: dict[str, FieldElement], field: FieldDesc) -> "MPoly | FieldElement":
        """Substitute FieldElements for a subset of the variables.

        Full substitution returns a FieldElement; partial substitution folds
        the substituted powers into the coefficients and returns an MPoly in
        the remaining variables.  (Series substitution lives with Series.)
        """
        remaining = tuple(v for v in self.vars if v not in values)
        if not remaining:
            acc = field.zero()
            for e, c in self.terms:
                term = c
                for v, exp in zip(self.vars, e):
                    if exp:
                        term = term * values[v] ** exp
                acc = acc + term
            return acc
        keep_idx = [i for i, v in enumerate(self.vars) if v in remaining]
        out = []
        for e, c in self.terms:
            coef = c
            for i, v in enumerate(self.vars):
                if v in values and e[i]:
                    coef = coef * values[v] ** e[i]
            out.append((tuple(e[i] for i in keep_idx), coef))
        return MPoly.make(remaining, out)

    def restrict_vars(self, new_vars) -> "MPoly":
        """Reindex onto a variable tuple that must cover every used variable."""
        new_vars = tuple(new_vars)
        pos = {v: i for i, v in enumerate(new_vars)}
        out = []
        for e, c in self.terms:
            ne = [0] * len(new_vars)
            for v, exp in zip(self.vars, e):
                if exp:
                    if v not in pos:
                        raise UnsupportedError(f"variable {v} is not in {new_vars}")
                    ne[pos[v]] = exp
            out.append((tuple(ne), c))
        return MPoly.make(new_vars, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            factors = []
            for v, exp in zip(self.vars, e):
                if exp == 1:
                    factors.append(v)
                elif exp > 1:
                    factors.append(f"{v}^{exp}")
            cs = str(c)
            if factors and cs == "1":
                parts.append("*".join(factors))
            elif factors:
                base = f"({cs})" if ("+" in cs[1:] or "-" in cs[1:]) else cs
                parts.append(base + "*" + "*".join(factors))
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self})"


def mpoly(vars, term_map) -> MPoly:
    return MPoly.make(vars, term_map)


def const_poly(vars, c) -> MPoly:
    if c.is_exact_zero():
        return MPoly(tuple(vars), ())
    return MPoly.make(vars, {(0,) * len(tuple(vars)): c})


def var_poly(vars, name, field: FieldDesc) -> MPoly:
    vars = tuple(vars)
    i = vars.index(name)
    e = tuple(1 if j == i else 0 for j in range(len(vars)))
    return MPoly.make(vars, {e: field.one()})


@dataclass(frozen=True)
class RatFn:
    """Quotient of FieldElement-coefficient polynomials, denominator nonzero."""

    num: MPoly
    den: MPoly

    @staticmethod
    def make(num: MPoly, den: MPoly) -> "RatFn":
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return RatFn(num, den)

    @staticmethod
    def from_poly(p: MPoly, field: FieldDesc) -> "RatFn":
        return RatFn.make(p, const_poly(p.vars, field.one()))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFn") -> "RatFn":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn.make(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RatFn":
        if k == 0:
            if self.num.is_zero():
                raise UnsupportedError("0^0 is undefined")
            return RatFn.make(self.den, self.den)  # den/den = 1
        if k < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFn.make(self.den ** (-k), self.num ** (-k))
        return RatFn.make(self.num ** k, self.den ** k)

    def eq(self, other: "RatFn") -> bool:
        """Equality by cross-multiplication (no gcd machinery)."""
        return (self.num * other.den - other.num * self.den).is_zero()

    def subst(self, values: dict[str, FieldElement], field: FieldDesc) -> FieldElement:
        den_v = self.den.subst(values, field)
        num_v = self.num.subst(values, field)
        if not isinstance(den_v, FieldElement) or not isinstance(num_v, FieldElement):
            raise UnsupportedError("substitution must cover every variable")
        if den_v.is_zero():
            raise PoleError("denominator vanishes at the evaluation point")
        return num_v / den_v

    def __str__(self):
        if self.den.total_degree() == 0 and len(self.den.terms) == 1 and str(
            self.den.terms[0][1]
        ) == "1":
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFn({self})"