"""Cyclotomic / Salem / Pisot classification of monic integer polynomials.

The Salem test is exact: after stripping cyclotomic factors the residual must
be palindromic of even degree ``2s >= 4`` and its trace polynomial ``q`` must
have one root in ``(2, inf)`` and ``s - 1`` roots in ``(-2, 2)``, counted by
Sturm sequences.  The Pisot test is numeric, with margins taken from the
certified root radii.

Irreducibility is never checked; every certificate says so.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .errors import DomainError
from .measure import DEFAULT_TOL
from .polynomial import (
    IntPolynomial,
    as_poly,
    cauchy_bound,
    exact_quotient,
    reciprocal_sign,
    sign_at,
    strip_cyclotomic_factors,
    sturm_count,
    to_trace_polynomial,
    unit_circle_root_count,
)
from .roots import complex_roots


class Kind(str, enum.Enum):
    CYCLOTOMIC_PRODUCT = "CyclotomicProduct"
    SALEM = "Salem"
    PISOT = "Pisot"
    OTHER = "Other"


@dataclass(frozen=True)
class PolynomialClass:
    kind: Kind
    dominant_root: Optional[float] = None
    certificate: dict[str, Any] = field(default_factory=dict)


def _require_monic(p: IntPolynomial) -> None:
    if p.is_zero() or p.degree < 1:
        raise DomainError("classification needs a polynomial of degree >= 1")
    if not p.is_monic():
        raise DomainError(f"classification needs a monic polynomial, got {p}")


def _extract_unit_linear(r: IntPolynomial) -> tuple[IntPolynomial, list[int]]:
    """Divide out every (x - 1) and (x + 1) factor; anti-reciprocal inputs always have one."""
    removed = []
    for root in (1, -1):
        lin = IntPolynomial((-root, 1))
        while r.degree > 0 and r(root) == 0:
            r = exact_quotient(r, lin)
            removed.append(root)
    return r, removed


def is_salem(p) -> tuple[bool, dict[str, Any]]:
    """Exact Salem certification of the cyclotomic-free part of ``p``."""
    p = as_poly(p)
    _require_monic(p)
    residual, removed = strip_cyclotomic_factors(p)
    cert: dict[str, Any] = {
        "cyclotomic_degree_removed": removed,
        "residual": residual.to_wire(),
        "irreducibility_checked": False,
    }
    if reciprocal_sign(residual) == -1:
        residual, lin = _extract_unit_linear(residual)
        cert["unit_linear_factors_removed"] = lin
    if residual.degree < 4 or residual.degree % 2:
        cert["reason"] = f"residual degree {residual.degree} is not even and >= 4"
        return False, cert
    if reciprocal_sign(residual) != 1:
        cert["reason"] = "residual is not self-reciprocal"
        return False, cert
    trace = to_trace_polynomial(residual)
    q, s = trace.q, trace.half_degree
    bound = cauchy_bound(q) + 1
    above = sturm_count(q, 2, bound)
    inside = sturm_count(q, -2, 2)
    below = sturm_count(q, -bound, -2)
    at_ends = [t for t in (-2, 2) if sign_at(q, Fraction(t)) == 0]
    cert.update(
        trace_polynomial=q.to_wire(),
        half_degree=s,
        roots_above_2=above,
        roots_in_open_interval=inside,
        roots_below_minus_2=below,
        roots_at_plus_minus_2=at_ends,
    )
    ok = above == 1 and inside == s - 1 and below == 0 and not at_ends
    if not ok:
        cert["reason"] = "trace polynomial root counts do not match the Salem pattern"
    return ok, cert


def is_pisot(p, tol: float = DEFAULT_TOL) -> tuple[bool, dict[str, Any]]:
    """Numeric Pisot test with certified margins on the cyclotomic-free part of ``p``.

    ``certificate["verdict"]`` is ``"Pisot"``, ``"NotPisot"`` or ``"Uncertain"``;
    the boolean is True only for ``"Pisot"``.
    """
    p = as_poly(p)
    _require_monic(p)
    residual, removed = strip_cyclotomic_factors(p)
    cert: dict[str, Any] = {
        "cyclotomic_degree_removed": removed,
        "residual": residual.to_wire(),
        "irreducibility_checked": False,
    }

    def verdict(v: str, reason: str, ok: bool = False):
        cert["verdict"] = v
        cert["reason"] = reason
        return ok, cert

    if residual.degree < 1:
        return verdict("NotPisot", "polynomial is a cyclotomic product")
    circle = unit_circle_root_count(residual)
    if circle:
        return verdict("NotPisot", f"{circle} roots lie exactly on the unit circle")
    real_above_one = sturm_count(residual, 1, cauchy_bound(residual) + 1)
    roots = complex_roots(residual, tol=min(tol, 1e-9))
    outside = [(z, r) for z, r in roots if abs(z) - r > 1]
    inside = [(z, r) for z, r in roots if abs(z) + r < 1]
    unsure = len(roots) - len(outside) - len(inside)
    margin = min((1 - abs(z) - r for z, r in inside), default=1.0)
    cert["margin"] = margin
    cert["roots_outside"] = len(outside)
    if unsure or margin < tol:
        return verdict("Uncertain", "a non-dominant root lies within tol of the unit circle")
    if len(outside) != 1:
        return verdict("NotPisot", f"{len(outside)} roots lie outside the unit circle")
    if real_above_one != 1:
        return verdict("NotPisot", "the dominant root is not a real number > 1")
    cert["dominant_root"] = outside[0][0].real
    return verdict("Pisot", "one real root > 1, all others strictly inside", ok=True)


def classify(p) -> PolynomialClass:
    """Decide CyclotomicProduct, then Salem, then Pisot, else Other."""
    p = as_poly(p)
    _require_monic(p)
    residual, removed = strip_cyclotomic_factors(p)
    if residual.degree == 0:
        return PolynomialClass(
            Kind.CYCLOTOMIC_PRODUCT, None, {"cyclotomic_degree_removed": removed}
        )
    ok, cert = is_salem(p)
    if ok:
        return PolynomialClass(Kind.SALEM, _dominant_root(residual), cert)
    ok, pcert = is_pisot(p)
    if ok:
        return PolynomialClass(Kind.PISOT, pcert["dominant_root"], pcert)
    return PolynomialClass(Kind.OTHER, None, {"salem": cert, "pisot": pcert})


def _dominant_root(r: IntPolynomial) -> float:
    z, _ = max(complex_roots(r), key=lambda t: abs(t[0]))
    return z.real
