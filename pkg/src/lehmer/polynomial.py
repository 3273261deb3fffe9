"""Exact integer polynomials.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies ``x**i``.
Everything in this module is exact integer (or rational) arithmetic; nothing is
ever rounded.  The numeric code in :mod:`lehmer.measure` relies on the exact
tests here (cyclotomic stripping, unit-circle root counts) to decide which
computed roots really lie on the unit circle.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import DomainError, ParseError

Rational = Union[int, Fraction]

_INT_TOKEN = re.compile(r"[+-]?\d+\Z")


@dataclass(frozen=True)
class IntPolynomial:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    The zero polynomial is ``IntPolynomial((0,))`` and has degree -1 by
    convention here; every other polynomial has ``len(coeffs) - 1`` as degree.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(a) for a in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_descending(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(a * other for a in self.coeffs))
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        if len(self.coeffs) == 1:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def to_wire(self) -> str:
        """Serialize to the comma-separated, constant-first wire format."""
        return ",".join(str(a) for a in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


ZERO = IntPolynomial((0,))
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


def parse(text: str) -> IntPolynomial:
    """Parse a constant-first, comma-separated coefficient list.

    >>> str(parse("1,0,1"))
    'x^2 + 1'
    """
    if text is None or not text.strip():
        raise ParseError("empty polynomial text")
    coeffs = []
    for raw in text.split(","):
        token = raw.strip()
        if not _INT_TOKEN.match(token):
            raise ParseError(f"malformed integer token {token!r} in {text!r}")
        coeffs.append(int(token))
    return IntPolynomial(tuple(coeffs))


def as_poly(p) -> IntPolynomial:
    """Coerce wire strings and coefficient sequences to :class:`IntPolynomial`."""
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, str):
        return parse(p)
    return IntPolynomial(tuple(p))


def multiply(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if a.is_zero() or b.is_zero():
        return ZERO
    ac, bc = a.coeffs, b.coeffs
    out = [0] * (len(ac) + len(bc) - 1)
    for i, x in enumerate(ac):
        if x:
            for j, y in enumerate(bc):
                out[i + j] += x * y
    return IntPolynomial(tuple(out))


def _require_nonzero(p: IntPolynomial, what: str) -> None:
    if p.is_zero():
        raise DomainError(f"{what} is undefined for the zero polynomial")


def reciprocal_transform(p: IntPolynomial) -> IntPolynomial:
    """Return ``x**deg(p) * p(1/x)``, i.e. the reversed coefficient list."""
    _require_nonzero(p, "reciprocal_transform")
    return IntPolynomial(tuple(reversed(p.coeffs)))


def reciprocal_sign(p: IntPolynomial) -> int:
    """+1 if ``P* == P``, -1 if ``P* == -P``, 0 otherwise."""
    _require_nonzero(p, "reciprocal_sign")
    c = p.coeffs
    r = c[::-1]
    if r == c:
        return 1
    if all(x == -y for x, y in zip(r, c)):
        return -1
    return 0


def is_self_reciprocal(p: IntPolynomial) -> bool:
    return reciprocal_sign(p) != 0


def graeffe_step(p: IntPolynomial) -> IntPolynomial:
    """Root-squaring step: the result's roots are the squares of ``p``'s roots.

    Uses ``p(x) p(-x) = e(x^2)^2 - x^2 o(x^2)^2`` with ``p = e(x^2) + x o(x^2)``.
    The sign is normalized so the leading coefficient is positive.
    """
    _require_nonzero(p, "graeffe_step")
    even = IntPolynomial(p.coeffs[0::2])
    odd = IntPolynomial(p.coeffs[1::2])
    g = even * even - X * (odd * odd)
    return -g if g.leading < 0 else g


# ---------------------------------------------------------------------------
# Division, gcd, square-free decomposition


def content(p: IntPolynomial) -> int:
    g = 0
    for a in p.coeffs:
        g = math.gcd(g, a)
    return g


def primitive_part(p: IntPolynomial) -> IntPolynomial:
    """``p / content(p)`` with a positive leading coefficient."""
    if p.is_zero():
        return p
    g = content(p)
    if p.leading < 0:
        g = -g
    return IntPolynomial(tuple(a // g for a in p.coeffs))


def divmod_monic(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Quotient and remainder for a divisor with leading coefficient +-1."""
    lb = b.leading
    if lb not in (1, -1):
        raise DomainError("divmod_monic needs a divisor with unit leading coefficient")
    r = list(a.coeffs)
    db = b.degree
    bc = b.coeffs
    if a.degree < db:
        return ZERO, a
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * lb
        if c:
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                r[off + j] -= c * bc[j]
    return IntPolynomial(tuple(q)), IntPolynomial(tuple(r[:db] or [0]))


def exact_quotient(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Return ``a / b``, raising :class:`DomainError` unless the division is exact in Z[x]."""
    _require_nonzero(b, "division")
    if a.is_zero():
        return ZERO
    r = list(a.coeffs)
    db = b.degree
    bc = b.coeffs
    lb = bc[-1]
    if a.degree < db:
        raise DomainError(f"{b} does not divide {a}")
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c, rem = divmod(r[k], lb)
        if rem:
            raise DomainError(f"{b} does not divide {a} over the integers")
        if c:
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                r[off + j] -= c * bc[j]
    if any(r[:db]):
        raise DomainError(f"{b} does not divide {a}")
    return IntPolynomial(tuple(q))


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """``lc(b)**(deg a - deg b + 1) * a  mod  b``, computed over the integers."""
    _require_nonzero(b, "pseudo_remainder")
    db = b.degree
    if a.degree < db:
        return a
    r = list(a.coeffs)
    bc = b.coeffs
    lb = bc[-1]
    # one multiplication by lb per eliminated position: deg a - deg b + 1 total
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [x * lb for x in r]
        if c:
            off = k - db
            for j in range(db + 1):
                r[off + j] -= c * bc[j]
        r[k] = 0
    return IntPolynomial(tuple(r[:db] or [0]))


def gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[x] via the primitive remainder sequence.

    The result is primitive-times-content with a positive leading coefficient.
    """
    if a.is_zero():
        return primitive_part(b) * content(b) if not b.is_zero() else ZERO
    if b.is_zero():
        return primitive_part(a) * content(a)
    c = math.gcd(content(a), content(b))
    a, b = primitive_part(a), primitive_part(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return IntPolynomial((c,))
        a, b = b, primitive_part(pseudo_remainder(a, b))
    return a * c


def squarefree_decomposition(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Return ``[(f_i, i), ...]`` with ``primitive_part(p) == prod f_i**i``.

    Each ``f_i`` is square-free, primitive, has positive leading coefficient,
    and the ``f_i`` are pairwise coprime.  Constant factors are omitted.
    """
    _require_nonzero(p, "squarefree_decomposition")
    f = primitive_part(p)
    if f.degree <= 0:
        return []
    g = gcd(f, f.derivative())
    h = exact_quotient(f, g)
    out = []
    i = 1
    while h.degree > 0:
        h2 = gcd(g, h)
        factor = exact_quotient(h, h2)
        if factor.degree > 0:
            out.append((factor, i))
        g = exact_quotient(g, h2)
        h = h2
        i += 1
    return out


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    out = ONE
    for f, _ in squarefree_decomposition(p):
        out = out * f
    return out


# ---------------------------------------------------------------------------
# Cyclotomic machinery


@lru_cache(maxsize=None)
def _totient(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_indices(d: int) -> tuple[int, ...]:
    """All ``m`` with ``phi(m) <= d``.

    ``phi(m) >= sqrt(m/2)`` bounds the scan at ``m <= 2 d**2``.
    """
    return tuple(m for m in range(1, 2 * d * d + 1) if _totient(m) <= d)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial, from ``x^m - 1 = prod_{k | m} Phi_k``."""
    if m < 1:
        raise DomainError("cyclotomic index must be positive")
    f = IntPolynomial((-1,) + (0,) * (m - 1) + (1,))
    for k in range(1, m):
        if m % k == 0:
            f = divmod_monic(f, cyclotomic_polynomial(k))[0]
    return f


def _strip_x(p: IntPolynomial) -> tuple[IntPolynomial, int]:
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    return IntPolynomial(p.coeffs[k:]), k


def strip_cyclotomic_factors(p: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Remove every power of x and every cyclotomic factor from a monic ``p``.

    Returns ``(residual, removed_degree)``; the residual is monic and equals 1
    exactly when ``p`` is a product of cyclotomic polynomials and a power of x.
    Roots at zero are counted as removed: they contribute 1 to the measure.
    """
    _require_nonzero(p, "strip_cyclotomic_factors")
    if not p.is_monic():
        raise DomainError(f"strip_cyclotomic_factors needs a monic polynomial, got {p}")
    r, removed = _strip_x(p)
    for m in cyclotomic_indices(max(r.degree, 1)):
        if r.degree == 0:
            break
        phi = cyclotomic_polynomial(m)
        if phi.degree > r.degree:
            continue
        # divisibility forces Phi_m(k) | r(k); cheap integer rejection first
        v2 = phi(2)
        if v2 and r(2) % v2:
            continue
        while r.degree >= phi.degree:
            q, rem = divmod_monic(r, phi)
            if not rem.is_zero():
                break
            r = q
            removed += phi.degree
    return r, removed


def is_cyclotomic_product(p: IntPolynomial) -> bool:
    """Exact Kronecker test: every root of the monic ``p`` is 0 or a root of unity."""
    residual, _ = strip_cyclotomic_factors(p)
    return residual.degree == 0


# ---------------------------------------------------------------------------
# Trace transform


@dataclass(frozen=True)
class TracePolynomial:
    """``q`` with ``p(x) = x**half_degree * q(x + 1/x)``."""

    q: IntPolynomial
    half_degree: int


@lru_cache(maxsize=None)
def _dickson(k: int) -> IntPolynomial:
    # x^k + x^-k as a polynomial in t = x + 1/x
    if k == 0:
        return IntPolynomial((2,))
    if k == 1:
        return X
    return X * _dickson(k - 1) - _dickson(k - 2)


def to_trace_polynomial(p: IntPolynomial) -> TracePolynomial:
    """Write a monic palindromic ``p`` of degree 2s as ``x^s q(x + 1/x)``."""
    _require_nonzero(p, "to_trace_polynomial")
    if not p.is_monic():
        raise DomainError("to_trace_polynomial needs a monic polynomial")
    sign = reciprocal_sign(p)
    if sign == -1:
        raise DomainError(
            "anti-reciprocal polynomial (P* = -P): factor out (x - 1) or (x + 1) first"
        )
    if sign == 0:
        raise DomainError(f"{p} is not self-reciprocal")
    if p.degree % 2:
        raise DomainError(
            "odd-degree reciprocal polynomial has the root -1: factor out (x + 1) first"
        )
    s = p.degree // 2
    c = p.coeffs
    q = IntPolynomial((c[s],))
    for k in range(1, s + 1):
        q = q + _dickson(k) * c[s + k]
    return TracePolynomial(q, s)


def from_trace_polynomial(q: IntPolynomial) -> IntPolynomial:
    """Inverse of :func:`to_trace_polynomial`: expand ``x^s q(x + 1/x)``."""
    s = q.degree
    base = IntPolynomial((1, 0, 1))
    out = ZERO
    for k, a in enumerate(q.coeffs):
        if a:
            out = out + IntPolynomial.monomial(s - k, a) * base ** k
    return out


# ---------------------------------------------------------------------------
# Sturm sequences


def _as_rational(v) -> Rational | None:
    """Finite endpoints become exact rationals; +-inf become None-tagged signs."""
    if isinstance(v, float):
        if math.isinf(v):
            return None
        return Fraction(v)
    return Fraction(v)


def sign_at(p: IntPolynomial, x: Fraction) -> int:
    """Exact sign of ``p(x)`` at a rational point."""
    n, d = x.numerator, x.denominator
    deg = len(p.coeffs) - 1
    acc = 0
    dp = 1
    npow = [1]
    for _ in range(deg):
        npow.append(npow[-1] * n)
    for k in range(deg, -1, -1):
        acc += p.coeffs[k] * npow[k] * dp
        dp *= d
    return (acc > 0) - (acc < 0)


def _sign_at_infinity(p: IntPolynomial, positive: bool) -> int:
    s = 1 if p.leading > 0 else -1
    if not positive and p.degree % 2:
        s = -s
    return s


def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm sequence of ``p`` scaled by positive factors only (signs preserved)."""
    _require_nonzero(p, "sturm_chain")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = pseudo_remainder(a, b)
        if b.leading < 0 and (a.degree - b.degree + 1) % 2:
            r = -r
        if r.is_zero():
            break
        g = content(r)
        chain.append(IntPolynomial(tuple(-x // g for x in r.coeffs)))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _deflate_rational_root(p: IntPolynomial, x: Fraction) -> IntPolynomial:
    lin = IntPolynomial((-x.numerator, x.denominator))
    while p.degree > 0 and sign_at(p, x) == 0:
        p = exact_quotient(p, lin)
    return p


def sturm_count(q: IntPolynomial, lo, hi) -> int:
    """Number of distinct real roots of ``q`` in the open interval ``(lo, hi)``.

    Endpoints may be ints, :class:`~fractions.Fraction` values, or
    ``float('-inf')`` / ``float('inf')``.  A rational endpoint that is itself a
    root is divided out exactly before the chain is built, so it is excluded.
    """
    _require_nonzero(q, "sturm_count")
    a, b = _as_rational(lo), _as_rational(hi)
    lo_neg_inf = a is None and lo < 0
    hi_pos_inf = b is None and hi > 0
    if (a is None and not lo_neg_inf) or (b is None and not hi_pos_inf):
        raise DomainError("interval endpoints must satisfy lo < hi")
    if a is not None and b is not None and a >= b:
        raise DomainError(f"empty interval: lo={lo} >= hi={hi}")
    f = squarefree_part(q)
    if f.degree <= 0:
        return 0
    if a is not None:
        f = _deflate_rational_root(f, a)
    if b is not None:
        f = _deflate_rational_root(f, b)
    if f.degree <= 0:
        return 0
    chain = sturm_chain(f)
    if a is None:
        va = _variations([_sign_at_infinity(g, False) for g in chain])
    else:
        va = _variations([sign_at(g, a) for g in chain])
    if b is None:
        vb = _variations([_sign_at_infinity(g, True) for g in chain])
    else:
        vb = _variations([sign_at(g, b) for g in chain])
    return va - vb


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """``1 + max|a_i| / |a_n|``: every root has modulus strictly below this."""
    _require_nonzero(p, "cauchy_bound")
    if p.degree <= 0:
        return Fraction(1)
    return 1 + Fraction(max(abs(a) for a in p.coeffs[:-1]), abs(p.leading))


def unit_circle_root_count(p: IntPolynomial) -> int:
    """Exact number of roots of ``p`` on the unit circle, with multiplicity.

    A root on the circle satisfies ``1/z = conj(z)``, so it is a common root of
    ``p`` and its reciprocal; on the palindromic part those roots correspond to
    roots of the trace polynomial inside (-2, 2), two for each.
    """
    _require_nonzero(p, "unit_circle_root_count")
    total = 0
    for f, mult in squarefree_decomposition(p):
        total += mult * _circle_count_squarefree(f)
    return total


def _circle_count_squarefree(f: IntPolynomial) -> int:
    f, _ = _strip_x(f)
    if f.degree <= 0:
        return 0
    g = gcd(f, reciprocal_transform(f))
    count = 0
    for root in (1, -1):
        if g.degree > 0 and g(root) == 0:
            g = exact_quotient(g, IntPolynomial((-root, 1)))
            count += 1
    if g.degree <= 0:
        return count
    g = primitive_part(g)
    # g is palindromic with P* = +P and even degree once +-1 are gone; it need
    # not be monic, so expand the trace form by hand on the coefficient list
    s = g.degree // 2
    c = g.coeffs
    q = IntPolynomial((c[s],))
    for k in range(1, s + 1):
        q = q + _dickson(k) * c[s + k]
    return count + 2 * sturm_count(q, -2, 2)
