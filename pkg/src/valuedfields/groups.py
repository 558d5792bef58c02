"""Ordered abelian value groups with exact arithmetic.

Three concrete families cover every value group used by this package:

* ``RationalGroup`` -- subgroups of Q cut out by a denominator law: all of Q,
  (1/m)Z for a fixed m >= 1, or the p-divisible hull (1/p^inf)Z.
* ``LexGroup(r)`` -- integer vectors Z^r ordered lexicographically with the
  first coordinate dominant.
* ``QuadGroup`` -- numbers a + b*sqrt(2) with rational a, b, ordered as real
  numbers.  Comparison is decided exactly by sign analysis of a^2 - 2*b^2,
  never by floating point.

Elements are immutable and carry their descriptor; mixing descriptors raises
``FamilyMismatchError``.  The total order is compatible with addition in each
family, which downstream modules rely on for valuation arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    FamilyMismatchError,
    GroupLawError,
    IterationCapError,
    SpanError,
    UnsupportedError,
)

__all__ = [
    "GroupDesc",
    "RationalGroup",
    "LexGroup",
    "QuadGroup",
    "GroupElem",
    "GroupInvariants",
    "MembershipResult",
    "PerronResult",
    "cmp",
    "sign",
    "divisible_by",
    "in_p_prime_closure",
    "in_p_divisible_hull",
    "invariants",
    "perron_basis",
    "parse_elem",
    "QQ_GROUP",
    "ZZ_GROUP",
    "one_over_m",
    "p_power_hull",
]


# ---------------------------------------------------------------------------
# descriptors


class GroupDesc:
    """Base class for group descriptors."""

    def zero(self) -> "GroupElem":
        raise NotImplementedError

    def elem(self, data) -> "GroupElem":
        raise NotImplementedError


@dataclass(frozen=True)
class RationalGroup(GroupDesc):
    """A subgroup of Q given by a denominator law.

    law = "all":        every rational
    law = "one_over_m": rationals with denominator dividing m
    law = "p_power":    rationals whose denominator is a power of p
    """

    law: str = "all"
    m: int | None = None
    p: int | None = None

    def __post_init__(self):
        if self.law not in ("all", "one_over_m", "p_power"):
            raise GroupLawError(f"unknown rational-group law {self.law!r}")
        if self.law == "one_over_m" and (self.m is None or self.m < 1):
            raise GroupLawError("one_over_m law needs m >= 1")
        if self.law == "p_power" and (self.p is None or self.p < 2):
            raise GroupLawError("p_power law needs a prime p")

    def admits(self, q: Fraction) -> bool:
        if self.law == "all":
            return True
        if self.law == "one_over_m":
            return self.m % q.denominator == 0
        d = q.denominator
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def elem(self, data) -> "GroupElem":
        q = Fraction(data)
        if not self.admits(q):
            raise GroupLawError(f"{q} violates the {self.law} law of {self}")
        return GroupElem(self, q)

    def zero(self) -> "GroupElem":
        return GroupElem(self, Fraction(0))

    def __str__(self):
        if self.law == "all":
            return "Q"
        if self.law == "one_over_m":
            return f"(1/{self.m})Z"
        return f"(1/{self.p}^inf)Z"


@dataclass(frozen=True)
class LexGroup(GroupDesc):
    """Z^r with the lexicographic order, first coordinate dominant."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise GroupLawError("lex rank must be >= 1")

    def elem(self, data) -> "GroupElem":
        vec = tuple(int(x) for x in data)
        if len(vec) != self.r:
            raise GroupLawError(f"expected {self.r} coordinates, got {len(vec)}")
        return GroupElem(self, vec)

    def zero(self) -> "GroupElem":
        return GroupElem(self, (0,) * self.r)

    def __str__(self):
        return f"Z^{self.r} lex"


@dataclass(frozen=True)
class QuadGroup(GroupDesc):
    """Rational combinations a + b*sqrt(2) with the real-number order."""

    def elem(self, data) -> "GroupElem":
        a, b = data
        return GroupElem(self, (Fraction(a), Fraction(b)))

    def zero(self) -> "GroupElem":
        return GroupElem(self, (Fraction(0), Fraction(0)))

    def __str__(self):
        return "Q + Q*sqrt2"


QQ_GROUP = RationalGroup("all")
ZZ_GROUP = RationalGroup("one_over_m", m=1)


def one_over_m(m: int) -> RationalGroup:
    return RationalGroup("one_over_m", m=m)


def p_power_hull(p: int) -> RationalGroup:
    return RationalGroup("p_power", p=p)


# ---------------------------------------------------------------------------
# elements


def _sign_frac(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _quad_sign(a: Fraction, b: Fraction) -> int:
    # sign of a + b*sqrt(2), exactly
    if b == 0:
        return _sign_frac(a)
    if a == 0:
        return _sign_frac(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    s = _sign_frac(a * a - 2 * b * b)
    return s if a > 0 else -s


@dataclass(frozen=True)
class GroupElem:
    """An element of one of the three group families."""

    group: GroupDesc
    data: object

    def _check(self, other: "GroupElem"):
        if not isinstance(other, GroupElem) or other.group != self.group:
            raise FamilyMismatchError(
                f"group mismatch: {self.group} vs {getattr(other, 'group', other)}"
            )

    def __add__(self, other: "GroupElem") -> "GroupElem":
        self._check(other)
        if isinstance(self.group, RationalGroup):
            return GroupElem(self.group, self.data + other.data)
        if isinstance(self.group, LexGroup):
            return GroupElem(self.group, tuple(x + y for x, y in zip(self.data, other.data)))
        (a, b), (c, d) = self.data, other.data
        return GroupElem(self.group, (a + c, b + d))

    def __neg__(self) -> "GroupElem":
        if isinstance(self.group, RationalGroup):
            return GroupElem(self.group, -self.data)
        if isinstance(self.group, LexGroup):
            return GroupElem(self.group, tuple(-x for x in self.data))
        a, b = self.data
        return GroupElem(self.group, (-a, -b))

    def __sub__(self, other: "GroupElem") -> "GroupElem":
        return self + (-other)

    def scale(self, n: int) -> "GroupElem":
        """Integer multiple n*self (n may be negative or zero)."""
        n = int(n)
        if isinstance(self.group, RationalGroup):
            return GroupElem(self.group, self.data * n)
        if isinstance(self.group, LexGroup):
            return GroupElem(self.group, tuple(n * x for x in self.data))
        a, b = self.data
        return GroupElem(self.group, (n * a, n * b))

    def sign(self) -> int:
        if isinstance(self.group, RationalGroup):
            return _sign_frac(self.data)
        if isinstance(self.group, LexGroup):
            for x in self.data:
                if x:
                    return 1 if x > 0 else -1
            return 0
        return _quad_sign(*self.data)

    def is_zero(self) -> bool:
        return self.sign() == 0

    def __lt__(self, other):
        self._check(other)
        return (self - other).sign() < 0

    def __le__(self, other):
        self._check(other)
        return (self - other).sign() <= 0

    def __gt__(self, other):
        self._check(other)
        return (self - other).sign() > 0

    def __ge__(self, other):
        self._check(other)
        return (self - other).sign() >= 0

    def coords(self) -> tuple[Fraction, ...]:
        """Coordinates in the ambient Q-vector space of the family."""
        if isinstance(self.group, RationalGroup):
            return (self.data,)
        if isinstance(self.group, LexGroup):
            return tuple(Fraction(x) for x in self.data)
        return self.data

    def __str__(self):
        if isinstance(self.group, RationalGroup):
            return str(self.data)
        if isinstance(self.group, LexGroup):
            return "(" + ",".join(str(x) for x in self.data) + ")"
        a, b = self.data
        return f"{a}+{b}*sqrt2"

    def __repr__(self):
        return f"GroupElem({self})"


def sign(a: GroupElem) -> int:
    return a.sign()


def cmp(a: GroupElem, b: GroupElem) -> int:
    """-1, 0 or 1 as a < b, a = b, a > b.  Exact in every family."""
    if not isinstance(b, GroupElem) or b.group != a.group:
        raise FamilyMismatchError(f"group mismatch: {a.group} vs {getattr(b, 'group', b)}")
    return (a - b).sign()


def from_coords(group: GroupDesc, coords) -> GroupElem:
    coords = tuple(Fraction(c) for c in coords)
    if isinstance(group, RationalGroup):
        return group.elem(coords[0])
    if isinstance(group, LexGroup):
        vec = []
        for c in coords:
            if c.denominator != 1:
                raise GroupLawError(f"lex coordinate {c} is not an integer")
            vec.append(int(c))
        return group.elem(vec)
    return group.elem(coords)


def parse_elem(group: GroupDesc, text: str) -> GroupElem:
    """Parse the textual element forms: "a/b", "(n1,...,nr)", "a+b*sqrt2"."""
    text = text.strip()
    if isinstance(group, LexGroup):
        if not (text.startswith("(") and text.endswith(")")):
            raise GroupLawError(f"lex element must look like (n1,...,n{group.r})")
        parts = text[1:-1].split(",")
        return group.elem([int(x) for x in parts])
    if isinstance(group, RationalGroup):
        return group.elem(Fraction(text))
    return group.elem(_parse_quad(text))


def _parse_quad(text: str) -> tuple[Fraction, Fraction]:
    # sums of terms, each "r", "r*sqrt2" or "sqrt2"
    s = text.replace(" ", "")
    if not s:
        raise GroupLawError("empty quadratic literal")
    a = Fraction(0)
    b = Fraction(0)
    i = 0
    while i < len(s):
        sgn = 1
        while i < len(s) and s[i] in "+-":
            if s[i] == "-":
                sgn = -sgn
            i += 1
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i:j]
        if not term:
            raise GroupLawError(f"malformed quadratic literal {text!r}")
        if term.endswith("sqrt2"):
            head = term[: -len("sqrt2")]
            if head.endswith("*"):
                head = head[:-1]
            coef = Fraction(head) if head else Fraction(1)
            b += sgn * coef
        else:
            a += sgn * Fraction(term)
        i = j
    return (a, b)


# ---------------------------------------------------------------------------
# membership

@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: GroupElem | None = None
    note: str | None = None


def divisible_by(gamma: GroupElem, n: int) -> MembershipResult:
    """Is gamma = n*beta solvable with beta in the same descriptor?"""
    if n == 0:
        raise GroupLawError("division by zero")
    g = gamma.group
    if isinstance(g, RationalGroup):
        beta = gamma.data / n
        if g.admits(beta):
            return MembershipResult(True, GroupElem(g, beta))
        return MembershipResult(False)
    if isinstance(g, LexGroup):
        if all(x % n == 0 for x in gamma.data):
            return MembershipResult(True, g.elem(x // n for x in gamma.data))
        return MembershipResult(False, note="componentwise divisibility fails")
    a, b = gamma.data
    # the ambient quadratic group is divisible, flagged as such
    return MembershipResult(True, GroupElem(g, (a / n, b / n)), note="ambient")


def _order_mod(gamma: GroupElem, delta: RationalGroup) -> int:
    """Smallest n >= 1 with n*gamma in delta (rational family only)."""
    q = gamma.data
    if delta.law == "all":
        return 1
    if delta.law == "one_over_m":
        return (q * delta.m).denominator
    d = q.denominator
    while d % delta.p == 0:
        d //= delta.p
    return d


def in_p_prime_closure(gamma: GroupElem, delta: RationalGroup, p: int) -> MembershipResult:
    """Is some n*gamma in delta with gcd(n, p) = 1?

    gamma and delta must live in one rational family; the witness order is
    returned through the note.
    """
    if not isinstance(gamma.group, RationalGroup):
        raise UnsupportedError("closure queries are supported for rational subgroups only")
    d = _order_mod(gamma, delta)
    if d % p != 0:
        return MembershipResult(True, gamma.scale(d), note=f"order {d}")
    return MembershipResult(False, note=f"order {d} divisible by {p}")


def in_p_divisible_hull(gamma: GroupElem, delta: RationalGroup, p: int) -> MembershipResult:
    """Is p^k * gamma in delta for some k >= 0?"""
    if not isinstance(gamma.group, RationalGroup):
        raise UnsupportedError("hull queries are supported for rational subgroups only")
    d = _order_mod(gamma, delta)
    while d % p == 0:
        d //= p
    if d == 1:
        return MembershipResult(True, note="p-power order")
    return MembershipResult(False, note=f"order carries prime-to-{p} part {d}")


# ---------------------------------------------------------------------------
# invariants

@dataclass(frozen=True)
class GroupInvariants:
    rank: int
    rational_rank: int


def invariants(group: GroupDesc) -> GroupInvariants:
    """Rank (number of proper convex subgroups) and rational rank.

    Rank never exceeds rational rank; archimedean groups have rank 1.
    """
    if isinstance(group, RationalGroup):
        return GroupInvariants(1, 1)
    if isinstance(group, LexGroup):
        return GroupInvariants(group.r, group.r)
    return GroupInvariants(1, 2)


# ---------------------------------------------------------------------------
# integer linear algebra helpers (exact, small)


def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form: echelon basis, positive pivots, reduced above."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    for col in range(ncols):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        rest = [r for r in work if r[col] == 0]
        # gcd-combine all rows with a nonzero entry in this column
        pivot = live[0]
        for r in live[1:]:
            a, b = pivot[col], r[col]
            while b:
                q = a // b
                pivot, r = r, [x - q * y for x, y in zip(pivot, r)]
                a, b = pivot[col], r[col]
            if any(r):
                rest.append(r)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        work = rest
        if not work:
            break
    # reduce entries above each pivot
    for i in range(len(basis) - 1, -1, -1):
        pcol = next(k for k, x in enumerate(basis[i]) if x != 0)
        for j in range(i):
            q = basis[j][pcol] // basis[i][pcol]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


def _solve_int_coords(basis: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer coordinates of target over an echelon basis, or None."""
    t = list(target)
    coords = []
    for row in basis:
        pcol = next(k for k, x in enumerate(row) if x != 0)
        if t[pcol] % row[pcol] != 0:
            return None
        c = t[pcol] // row[pcol]
        coords.append(c)
        t = [x - c * y for x, y in zip(t, row)]
    if any(t):
        return None
    return coords


def _det2(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def _det_int(m) -> int:
    """Determinant of a small integer matrix by fraction-free expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return _det2(m)
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det_int(minor)
    return total


# ---------------------------------------------------------------------------
# Perron positivity algorithm

@dataclass(frozen=True)
class PerronResult:
    """Positive basis with non-negative coefficients for the given targets.

    basis            -- tuple of positive GroupElems, a Z-basis of the span
    coeffs           -- coeffs[i][j] >= 0 with targets[i] = sum coeffs[i][j]*basis[j]
    change_of_basis  -- unimodular integer matrix T with basis = T * B0, where
                        B0 is the Hermite-normal-form basis derived from the
                        generators (deterministic; equal to the generator tuple
                        whenever that tuple is already a triangular basis)
    """

    basis: tuple[GroupElem, ...]
    coeffs: tuple[tuple[int, ...], ...]
    change_of_basis: tuple[tuple[int, ...], ...]


_SUBTRACT_CAP = 10_000


def perron_basis(generators, positives) -> PerronResult:
    """Find a positive basis expressing the positive targets non-negatively.

    Input: generators spanning a finitely generated subgroup G of one family,
    and targets alpha_i > 0 lying in G.  Output basis gamma_j > 0 of G with
    alpha_i = sum n_ij gamma_j, n_ij >= 0.

    Rank-one spans are immediate (primitive positive generator).  The
    quadratic family uses repeated subtraction on the basis pair (replace the
    larger element by the difference) with an iteration cap and a bounded
    brute-force unimodular fallback.  Lex spans recurse along the convex
    filtration: split off the dominant-coordinate basis row, fix the rest,
    then shear the dominant row until every coefficient is non-negative.

    Postconditions (unimodularity, positivity, non-negative coefficients,
    exact reconstruction) are machine-checked on every call.
    """
    generators = list(generators)
    positives = list(positives)
    if not generators:
        raise SpanError("no generators")
    group = generators[0].group
    for x in generators + positives:
        if x.group != group:
            raise FamilyMismatchError("all generators and targets must share one group")
    for a in positives:
        if a.sign() <= 0:
            raise SpanError(f"target {a} is not positive")

    # integer coordinate matrix: clear denominators with one common scale
    coord_rows = [list(g.coords()) for g in generators]
    dim = len(coord_rows[0])
    denom = 1
    for row in coord_rows + [list(a.coords()) for a in positives]:
        for c in row:
            denom = denom * c.denominator // gcd(denom, c.denominator)
    int_rows = [[int(c * denom) for c in row] for row in coord_rows]
    base = _hnf(int_rows)
    if not base:
        raise SpanError("generators span the trivial group")
    rho = len(base)

    def to_elem(int_row) -> GroupElem:
        return from_coords(group, [Fraction(x, denom) for x in int_row])

    targets_int = [[int(c * denom) for c in a.coords()] for a in positives]
    coords = []
    for a, trow in zip(positives, targets_int):
        c = _solve_int_coords(base, trow)
        if c is None:
            raise SpanError(f"target {a} is not in the span of the generators")
        coords.append(c)

    # current basis as integer rows + transform T from B0, maintained together
    rows = [list(r) for r in base]
    T = [[1 if i == j else 0 for j in range(rho)] for i in range(rho)]

    def apply(new_rows, new_T, new_coords):
        nonlocal rows, T, coords
        rows, T, coords = new_rows, new_T, new_coords

    # sign-normalize: make every basis row positive in the group order
    for i in range(rho):
        if to_elem(rows[i]).sign() < 0:
            rows[i] = [-x for x in rows[i]]
            T[i] = [-x for x in T[i]]
            for c in coords:
                c[i] = -c[i]

    if all(all(x >= 0 for x in c) for c in coords):
        pass  # already done
    elif rho == 1:
        # coords are integer multiples of a positive generator; positive
        # targets force positive coefficients, so reaching here is a bug
        raise SpanError("rank-one span with positive targets cannot have negative coords")
    elif isinstance(group, QuadGroup) or (isinstance(group, RationalGroup) and rho == 2):
        _fix_pair_subtractive(rows, T, coords, to_elem)
    elif isinstance(group, LexGroup):
        _fix_lex(rows, T, coords)
    else:
        raise UnsupportedError(f"no positivity procedure for {group} at rank {rho}")

    basis_elems = tuple(to_elem(r) for r in rows)
    det = _det_int(T)
    if det not in (1, -1):
        raise IterationCapError(f"transform determinant {det} is not a unit")
    for g in basis_elems:
        if g.sign() <= 0:
            raise IterationCapError(f"basis element {g} is not positive")
    for a, c in zip(positives, coords):
        if any(x < 0 for x in c):
            raise IterationCapError(f"negative coefficient remains for target {a}")
        acc = group.zero()
        for x, g in zip(c, basis_elems):
            acc = acc + g.scale(x)
        if cmp(acc, a) != 0:
            raise SpanError(f"reconstruction failed for target {a}")
    return PerronResult(
        basis=basis_elems,
        coeffs=tuple(tuple(c) for c in coords),
        change_of_basis=tuple(tuple(row) for row in T),
    )


def _fix_pair_subtractive(rows, T, coords, to_elem):
    """Repeated subtraction on a positive basis pair of an archimedean span."""
    for _ in range(_SUBTRACT_CAP):
        if all(all(x >= 0 for x in c) for c in coords):
            return
        u, v = to_elem(rows[0]), to_elem(rows[1])
        if cmp(u, v) > 0:
            # u <- u - v: alpha = a*u' + (a+b)*v
            rows[0] = [x - y for x, y in zip(rows[0], rows[1])]
            T[0] = [x - y for x, y in zip(T[0], T[1])]
            for c in coords:
                c[1] += c[0]
        else:
            rows[1] = [x - y for x, y in zip(rows[1], rows[0])]
            T[1] = [x - y for x, y in zip(T[1], T[0])]
            for c in coords:
                c[0] += c[1]
    if _brute_force_pair(rows, T, coords, to_elem):
        return
    raise IterationCapError(
        f"subtractive loop exceeded {_SUBTRACT_CAP} iterations and the bounded "
        "fallback found no basis",
        iterations=_SUBTRACT_CAP,
    )


def _brute_force_pair(rows, T, coords, to_elem) -> bool:
    """Bounded search over unimodular transforms of the current pair."""
    for bound in (4, 8, 16):
        rng = range(-bound, bound + 1)
        for a, b, c, d in itertools.product(rng, rng, rng, rng):
            if a * d - b * c not in (1, -1):
                continue
            r0 = [a * x + b * y for x, y in zip(rows[0], rows[1])]
            r1 = [c * x + d * y for x, y in zip(rows[0], rows[1])]
            if to_elem(r0).sign() <= 0 or to_elem(r1).sign() <= 0:
                continue
            # coords transform by the inverse transpose action
            det = a * d - b * c
            inv = [[d * det, -b * det], [-c * det, a * det]]
            new_coords = [
                [x * inv[0][0] + y * inv[1][0], x * inv[0][1] + y * inv[1][1]]
                for x, y in coords
            ]
            if all(all(x >= 0 for x in nc) for nc in new_coords):
                t0 = [a * x + b * y for x, y in zip(T[0], T[1])]
                t1 = [c * x + d * y for x, y in zip(T[0], T[1])]
                rows[0], rows[1] = r0, r1
                T[0], T[1] = t0, t1
                for old, new in zip(coords, new_coords):
                    old[0], old[1] = new
                return True
    return False


def _mat_inv_unimodular(m):
    """Exact inverse of a unimodular integer matrix (integer entries)."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise IterationCapError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def _fix_lex(rows, T, coords):
    """Convex-filtration recursion for lex spans (in-place on rows/T/coords)."""
    new_rows, M, new_coords = _lex_fix(rows, [list(c) for c in coords])
    new_T = _mat_mul(M, T)
    for i in range(len(rows)):
        rows[i] = new_rows[i]
        T[i] = new_T[i]
    for c, nc in zip(coords, new_coords):
        c[:] = nc


def _lex_fix(rows, coords):
    """Return (rows', M, coords') with rows' = M @ rows, M unimodular,
    every row' lex-positive and every coordinate vector non-negative.

    rows are echelon with positive pivots (hence lex-positive), pivot columns
    strictly increasing, so rows[0] owns the dominant coordinate.  Each
    target's head coefficient is automatically >= 0 (a negative one would make
    the target's leading coordinate negative).  Recurse on the tail span for
    the targets that avoid the head, then shear the head row by the fixed
    tail basis until every remaining coefficient is non-negative; the shear
    leaves the head's dominant coordinate untouched, preserving positivity.
    """
    n = len(rows)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0 or all(all(x >= 0 for x in c) for c in coords):
        return [r[:] for r in rows], ident, [c[:] for c in coords]
    if n == 1:
        raise SpanError("single-row lex span with a negative coefficient for a positive target")

    heads = [c[0] for c in coords]
    if any(k < 0 for k in heads):
        raise SpanError("positive lex target with negative dominant coefficient")

    tail = [r[:] for r in rows[1:]]
    tail_targets = [c[1:] for c in coords if c[0] == 0]
    tail_fixed, m_tail, tail_fixed_coords = _lex_fix(tail, tail_targets)

    inv = _mat_inv_unimodular(m_tail)
    # re-express every target's tail part over the fixed tail basis
    reexp = []
    it_fixed = iter(tail_fixed_coords)
    for c in coords:
        if c[0] == 0:
            reexp.append(list(next(it_fixed)))
        else:
            v = c[1:]
            reexp.append([sum(v[i] * inv[i][j] for i in range(len(v))) for j in range(len(v))])

    # shear amounts: make c'_ij + k_i * m_j >= 0 for every head-positive target
    s = len(tail_fixed)
    shear = [0] * s
    for j in range(s):
        need = 0
        for k, c in zip(heads, reexp):
            if k > 0 and c[j] < 0:
                need = max(need, (-c[j] + k - 1) // k)  # ceil(-c/k)
        shear[j] = need

    head_new = rows[0][:]
    for j in range(s):
        if shear[j]:
            head_new = [x - shear[j] * y for x, y in zip(head_new, tail_fixed[j])]

    out_rows = [head_new] + [r[:] for r in tail_fixed]
    out_coords = []
    for k, c in zip(heads, reexp):
        if k == 0:
            out_coords.append([0] + list(c))
        else:
            out_coords.append([k] + [c[j] + k * shear[j] for j in range(s)])

    # assemble M: head row = e0 - shear @ m_tail, tail block = [0 | m_tail]
    m_top = [1] + [0] * (n - 1)
    shear_combo = [sum(shear[j] * m_tail[j][i] for j in range(s)) for i in range(s)]
    m_out = [[m_top[0]] + [-shear_combo[i] for i in range(s)]]
    for i in range(s):
        m_out.append([0] + list(m_tail[i]))
    return out_rows, m_out, out_coords
