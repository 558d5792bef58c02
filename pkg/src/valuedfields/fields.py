"""Coefficient fields: exact rationals and small finite fields.

Finite fields F_{p^n} are realized as F_p[x]/(modulus) where the modulus is
the lexicographically least monic irreducible polynomial of degree n: among
x^n + sum c_i x^i the one minimizing the base-p integer sum c_i p^i (constant
coefficient least significant).  The search is deterministic, so two runs
always agree on the representation.  Elements are coefficient tuples of
length n; for n = 1 the modulus is x and the arithmetic is plain mod-p.

The canonical generator of F_{p^n} is the class of x for n >= 2 and 1 for
n = 1.  Frobenius, trace to the prime field, and inverse Frobenius (p-th
roots, always exact since the fields are perfect) are provided, along with
deterministic subfield enumeration used for embeddings between finite fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CharacteristicError,
    FieldMismatchError,
    GroupLawError,
    UnsupportedError,
)

__all__ = [
    "FieldDesc",
    "RationalField",
    "FiniteField",
    "FieldElement",
    "QQ",
    "GF",
    "frobenius",
    "inverse_frobenius",
    "trace_to_prime",
    "embed",
    "subfield_elements",
]


# ---------------------------------------------------------------------------
# mod-p polynomial helpers on int tuples (low degree first)


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    return _poly_trim(a)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim(
        tuple(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))
    )


def _poly_divmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    q = [0] * max(1, len(a) - dm)
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        f = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        q[shift] = f
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    return _poly_trim(q), _poly_trim(a)


_IRRED_CACHE: dict[tuple[int, int], list[tuple[int, ...]]] = {}


def _monic_irreducibles(p: int, d: int) -> list[tuple[int, ...]]:
    """All monic irreducible polynomials of degree d over F_p, lex order."""
    key = (p, d)
    if key in _IRRED_CACHE:
        return _IRRED_CACHE[key]
    smaller = [f for e in range(1, d // 2 + 1) for f in _monic_irreducibles(p, e)]
    out = []
    for m in range(p ** d):
        coeffs = []
        mm = m
        for _ in range(d):
            coeffs.append(mm % p)
            mm //= p
        poly = tuple(coeffs) + (1,)
        if d == 1:
            out.append(poly)
            continue
        if any(not _poly_mod(poly, f, p) for f in smaller):
            continue
        out.append(poly)
    _IRRED_CACHE[key] = out
    return out


def _least_irreducible(p: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return (0, 1)  # x: F_p[x]/(x) = F_p
    smaller = [f for e in range(1, n // 2 + 1) for f in _monic_irreducibles(p, e)]
    for m in range(p ** n):
        coeffs = []
        mm = m
        for _ in range(n):
            coeffs.append(mm % p)
            mm //= p
        poly = tuple(coeffs) + (1,)
        if all(_poly_mod(poly, f, p) for f in smaller):
            return poly
    raise UnsupportedError(f"no irreducible of degree {n} over F_{p}")  # pragma: no cover


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# descriptors


class FieldDesc:
    """Base class for coefficient field descriptors."""

    characteristic: int

    def zero(self) -> "FieldElement":
        raise NotImplementedError

    def one(self) -> "FieldElement":
        raise NotImplementedError

    def elem(self, data) -> "FieldElement":
        raise NotImplementedError


@dataclass(frozen=True)
class RationalField(FieldDesc):
    characteristic = 0

    def elem(self, data) -> "FieldElement":
        return FieldElement(self, Fraction(data))

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def __str__(self):
        return "Q"


QQ = RationalField()


@dataclass(frozen=True)
class FiniteField(FieldDesc):
    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.n

    def elem(self, data) -> "FieldElement":
        if isinstance(data, (int, Fraction)):
            q = Fraction(data)
            if q.denominator % self.p == 0:
                raise GroupLawError(f"denominator {q.denominator} not invertible mod {self.p}")
            v = (q.numerator * pow(q.denominator, -1, self.p)) % self.p
            return FieldElement(self, (v,) + (0,) * (self.n - 1))
        vec = tuple(int(x) % self.p for x in data)
        if len(vec) > self.n:
            vec = _poly_mod(vec, self.modulus, self.p)
        vec = vec + (0,) * (self.n - len(vec))
        return FieldElement(self, vec[: self.n])

    def zero(self):
        return FieldElement(self, (0,) * self.n)

    def one(self):
        return self.elem(1)

    def generator(self) -> "FieldElement":
        """Canonical generator: the class of x for n >= 2, and 1 for n = 1."""
        if self.n == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.n - 2))

    def elements(self):
        """Deterministic enumeration: base-p counter, constant digit fastest."""
        for m in range(self.order):
            coeffs = []
            mm = m
            for _ in range(self.n):
                coeffs.append(mm % self.p)
                mm //= self.p
            yield FieldElement(self, tuple(coeffs))

    def __str__(self):
        return f"F_{self.order}"


_GF_CACHE: dict[tuple[int, int, tuple[int, ...] | None], FiniteField] = {}


def GF(p: int, n: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """Construct F_{p^n}, validating (p prime, modulus monic irreducible)."""
    key = (p, n, modulus)
    if key in _GF_CACHE:
        return _GF_CACHE[key]
    if not _is_prime(p):
        raise UnsupportedError(f"{p} is not prime")
    if n < 1:
        raise UnsupportedError("extension degree must be >= 1")
    if modulus is None:
        modulus = _least_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise UnsupportedError("modulus must be monic of degree n")
        if n >= 2:
            for d in range(1, n // 2 + 1):
                for f in _monic_irreducibles(p, d):
                    if not _poly_mod(modulus, f, p):
                        raise UnsupportedError("modulus is reducible")
    fld = FiniteField(p, n, modulus)
    _GF_CACHE[key] = fld
    return fld


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class FieldElement:
    field: FieldDesc
    data: object

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatchError(
                f"field mismatch: {self.field} vs {getattr(other, 'field', other)}"
            )

    def is_zero(self) -> bool:
        if isinstance(self.field, RationalField):
            return self.data == 0
        return all(c == 0 for c in self.data)

    # the protocol shared with Series so polynomials stay coefficient-generic
    def is_exact_zero(self) -> bool:
        return self.is_zero()

    def times_int(self, n: int) -> "FieldElement":
        return self * self.field.elem(n)

    def __add__(self, other):
        self._check(other)
        if isinstance(self.field, RationalField):
            return FieldElement(self.field, self.data + other.data)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.data, other.data)))

    def __neg__(self):
        if isinstance(self.field, RationalField):
            return FieldElement(self.field, -self.data)
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.data))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if isinstance(self.field, RationalField):
            return FieldElement(self.field, self.data * other.data)
        f = self.field
        prod = _poly_mul(self.data, other.data, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return FieldElement(f, red + (0,) * (f.n - len(red)))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if isinstance(self.field, RationalField):
            return FieldElement(self.field, 1 / self.data)
        f = self.field
        # extended Euclid in F_p[x]: s0 * self = r0 (mod modulus) at exit
        r0, r1 = f.modulus, _poly_trim(self.data)
        s0, s1 = (), (1,)
        while r1:
            q, r = _poly_divmod(r0, r1, f.p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, f.p), f.p)
        if len(r0) != 1:  # pragma: no cover
            raise ZeroDivisionError("element not invertible")
        inv_lead = pow(r0[0], -1, f.p)
        return f.elem(tuple((c * inv_lead) % f.p for c in s0))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self):
        if isinstance(self.field, RationalField):
            return str(self.data)
        terms = []
        for i in range(self.field.n - 1, -1, -1):
            c = self.data[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("u" if c == 1 else f"{c}*u")
            else:
                terms.append(f"u^{i}" if c == 1 else f"{c}*u^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"FieldElement({self})"


def _pad(t, n):
    return tuple(t) + (0,) * (n - len(t))


# ---------------------------------------------------------------------------
# Frobenius machinery


def _require_finite(a: FieldElement) -> FiniteField:
    if not isinstance(a.field, FiniteField):
        raise CharacteristicError("operation requires positive characteristic")
    return a.field


def frobenius(a: FieldElement) -> FieldElement:
    """a -> a^p."""
    f = _require_finite(a)
    return a ** f.p


def inverse_frobenius(a: FieldElement) -> FieldElement:
    """The unique p-th root: a -> a^(p^(n-1)).  Exact (finite fields are perfect)."""
    f = _require_finite(a)
    return a ** (f.p ** (f.n - 1))


def trace_to_prime(a: FieldElement) -> FieldElement:
    """Trace to F_p: sum of a^(p^i) for 0 <= i < n (lands in the prime field)."""
    f = _require_finite(a)
    acc = f.zero()
    x = a
    for _ in range(f.n):
        acc = acc + x
        x = frobenius(x)
    return acc


# ---------------------------------------------------------------------------
# subfields and embeddings


def _frob_power_matrix(field: FiniteField, d: int) -> list[list[int]]:
    """Matrix of x -> x^(p^d) on the basis 1, u, ..., u^(n-1), columns = images."""
    cols = []
    for i in range(field.n):
        basis_vec = (0,) * i + (1,) + (0,) * (field.n - 1 - i)
        img = field.elem(basis_vec) ** (field.p ** d)
        cols.append(list(img.data))
    return cols


def subfield_elements(field: FiniteField, d: int) -> list[FieldElement]:
    """Elements of the subfield F_{p^d} inside F_{p^n} (requires d | n).

    Kernel of (Frobenius^d - id) as an F_p-linear map, enumerated in
    deterministic coefficient order.
    """
    if field.n % d != 0:
        raise UnsupportedError(f"F_{field.p}^{d} does not embed in {field}")
    p, n = field.p, field.n
    cols = _frob_power_matrix(field, d)
    mat = [[(cols[j][i] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    kernel = _nullspace_mod_p(mat, p)
    elems = []
    counters = range(p ** len(kernel))
    for m in counters:
        vec = [0] * n
        mm = m
        for basis_vec in kernel:
            c = mm % p
            mm //= p
            if c:
                vec = [(v + c * b) % p for v, b in zip(vec, basis_vec)]
        elems.append(field.elem(tuple(vec)))
    elems.sort(key=lambda e: e.data)
    return elems


def _nullspace_mod_p(mat, p):
    rows = [row[:] for row in mat]
    n = len(rows[0]) if rows else 0
    pivots = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for c, pr in pivots.items():
            vec[c] = (-rows[pr][fc]) % p
        basis.append(vec)
    return basis


_EMBED_CACHE: dict[tuple[FiniteField, FiniteField], dict] = {}


def embed(a: FieldElement, big: FiniteField) -> FieldElement:
    """Embed a in a larger finite field, mapping the small generator to the
    least root of the small modulus (deterministic element order)."""
    small = _require_finite(a)
    if small == big:
        return a
    key = (small, big)
    if key not in _EMBED_CACHE:
        if big.p != small.p or big.n % small.n != 0:
            raise UnsupportedError(f"{small} does not embed in {big}")
        root = None
        for cand in subfield_elements(big, small.n):
            acc = big.zero()
            for c in reversed(small.modulus):
                acc = acc * cand + big.elem(c)
            if acc.is_zero():
                root = cand
                break
        if root is None:  # pragma: no cover
            raise UnsupportedError("no root of the small modulus found")
        _EMBED_CACHE[key] = {"root": root}
    root = _EMBED_CACHE[key]["root"]
    acc = big.zero()
    for c in reversed(a.data):
        acc = acc * root + big.elem(c)
    return acc
