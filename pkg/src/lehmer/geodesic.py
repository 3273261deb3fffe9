"""Translation lengths of hyperbolic elements from trace data.

A hyperbolic element has trace ``u + 1/u`` with ``|u| > 1``.  With ``P`` the
polynomial satisfied by ``u``, the displacement along the axis is
``2 log M(P)`` in dimension 2 and ``log M(P)`` in dimension 3 (curvature -1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .measure import DEFAULT_TOL, MeasureResult, mahler_measure
from .polynomial import (
    ONE,
    ZERO,
    IntPolynomial,
    as_poly,
    exact_quotient,
    is_cyclotomic_product,
)


@dataclass(frozen=True)
class DisplacementResult:
    u_polynomial: IntPolynomial
    measure: MeasureResult
    length_dim2: float
    length_dim3: float


def displacement_from_u_polynomial(p, tol: float = DEFAULT_TOL) -> DisplacementResult:
    p = as_poly(p)
    if p.is_zero() or p.degree < 1 or not p.is_monic():
        raise DomainError("u-polynomial must be monic of degree >= 1")
    if is_cyclotomic_product(p):
        raise DomainError(f"element is not hyperbolic: measure is 1 for {p}")
    m = mahler_measure(p, tol)
    length3 = m.log_value
    return DisplacementResult(p, m, 2.0 * length3, length3)


def _sylvester_rows(q: IntPolynomial) -> list[list[IntPolynomial]]:
    """Sylvester matrix in ``y`` of ``q(y)`` and ``x^2 - y x + 1``, entries in Z[x].

    ``q`` has degree s in y and the second polynomial degree 1, so the matrix
    is ``(s + 1) x (s + 1)``: one shifted row of ``q`` and ``s`` shifted rows
    of ``-x y + (x^2 + 1)``.
    """
    s = q.degree
    size = s + 1
    rows = []
    q_desc = [IntPolynomial((c,)) for c in reversed(q.coeffs)]
    rows.append(q_desc)
    b_desc = [IntPolynomial((0, -1)), IntPolynomial((1, 0, 1))]
    for i in range(s):
        row = [ZERO] * size
        row[i], row[i + 1] = b_desc
        rows.append(row)
    return rows


def _bareiss_det(m: list[list[IntPolynomial]]) -> IntPolynomial:
    """Fraction-free (Bareiss) determinant over Z[x]; every division is exact."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_quotient(num, prev) if not num.is_zero() else ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def u_minpoly_from_trace_minpoly(q) -> IntPolynomial:
    """``Res_y(q(y), x^2 - y x + 1)``: the degree ``2 deg q`` polynomial whose roots
    are all ``u`` with ``u + 1/u`` a root of ``q``."""
    q = as_poly(q)
    if q.is_zero() or q.degree < 1 or not q.is_monic():
        raise DomainError("trace polynomial must be monic of degree >= 1")
    res = _bareiss_det(_sylvester_rows(q))
    if res.leading < 0:
        res = -res
    return res


def displacement_from_trace(q, tol: float = DEFAULT_TOL) -> DisplacementResult:
    q = as_poly(q)
    u_poly = u_minpoly_from_trace_minpoly(q)
    if is_cyclotomic_product(u_poly):
        kind = "parabolic" if any(u_poly(v) == 0 for v in (1, -1)) else "elliptic"
        raise DomainError(
            f"element is not hyperbolic: trace polynomial {q} lifts to the cyclotomic "
            f"product {u_poly} ({kind} trace class)"
        )
    return displacement_from_u_polynomial(u_poly, tol)
