"""Mahler measure ``M(P) = |a_n| prod max(1, |theta_i|)``.

Three independent routes are provided:

* :func:`mahler_measure` - product over certified roots (the main method).
* :func:`jensen_measure` - trapezoidal quadrature of ``log|P|`` on the unit
  circle (Jensen's formula), with a Richardson-style error estimate.
* :func:`graeffe_measure` - exact Graeffe root squaring followed by the
  coefficient bounds ``|g_j| <= C(n, j) M(G)`` and ``M(G) <= ||G||_2``; a
  rigorous but coarse enclosure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError, QuadratureError
from .polynomial import (
    IntPolynomial,
    _circle_count_squarefree,
    as_poly,
    content,
    graeffe_step,
    squarefree_decomposition,
    strip_cyclotomic_factors,
)
from .roots import EPS, modulus_intervals, squarefree_roots

DEFAULT_TOL = 1e-9
SNAP_BAND = 1e-9


class Method(str, enum.Enum):
    ROOT_PRODUCT = "RootProduct"
    JENSEN_QUADRATURE = "JensenQuadrature"
    GRAEFFE_CROSS_CHECK = "GraeffeCrossCheck"


@dataclass(frozen=True)
class MeasureResult:
    """A Mahler measure value with an error radius.

    ``root_moduli`` (root-product method only) lists ``|theta_i|`` in
    ascending order with multiplicity; roots certified to lie on the unit
    circle are reported as exactly 1.0.
    """

    value: float
    error_radius: float
    method: Method
    root_moduli: Optional[tuple[float, ...]] = None

    @property
    def log_value(self) -> float:
        return math.log(self.value)

    @property
    def log_error(self) -> float:
        # first-order propagation through log
        return self.error_radius / self.value


def _check_input(p, tol: float) -> IntPolynomial:
    p = as_poly(p)
    if p.is_zero():
        raise DomainError("the Mahler measure of the zero polynomial is undefined")
    if not tol > 0:
        raise DomainError("tol must be positive")
    return p


def _factor_contribution(f: IntPolynomial, tol: float, exact: bool, precise: bool):
    """Value, lower and upper bound of ``prod max(1, |root|)`` over one square-free factor."""
    z, r = squarefree_roots(f, tol=max(tol, 1e-300), precise=precise)
    absz = [abs(complex(v)) for v in z]
    intervals = modulus_intervals(z, r)
    snapped = np.zeros(len(z), dtype=bool)
    if exact:
        near = np.abs(np.array(absz) - 1.0) <= SNAP_BAND
        if near.any() and near.sum() == _circle_count_squarefree(f):
            snapped = near
    moduli = [1.0 if s else a for s, a in zip(snapped, absz)]
    value = lower = upper = 1.0
    for i in range(len(z)):
        if snapped[i]:
            continue
        lo, hi = (float(v) for v in intervals[i])
        value *= max(1.0, moduli[i])
        lower *= max(1.0, lo)
        upper *= max(1.0, hi)
    return value, lower, upper, moduli


def _root_product(p: IntPolynomial, tol: float, exact: bool, precise: bool) -> MeasureResult:
    moduli: list[float] = []
    work = p
    if exact and p.is_monic():
        residual, removed = strip_cyclotomic_factors(p)
        zeros = 0
        while p.coeffs[zeros] == 0:
            zeros += 1
        moduli += [0.0] * zeros + [1.0] * (removed - zeros)
        if residual.degree == 0:
            return MeasureResult(1.0, 0.0, Method.ROOT_PRODUCT, tuple(moduli))
        work = residual
    else:
        zeros = 0
        while work.coeffs[zeros] == 0:
            zeros += 1
        moduli += [0.0] * zeros
        work = IntPolynomial(work.coeffs[zeros:])

    value = lower = upper = float(abs(content(work)))
    for f, mult in squarefree_decomposition(work):
        lead = float(abs(f.leading))
        v, lo, hi, mods = _factor_contribution(f, tol, exact, precise)
        value *= (lead * v) ** mult
        lower *= (lead * lo) ** mult
        upper *= (lead * hi) ** mult
        for m in mods:
            moduli += [float(m)] * mult
    # every multiplication above rounds once
    slack = value * (2 * p.degree + 4) * EPS
    radius = float(max(upper - value, value - lower, 0.0) + slack)
    return MeasureResult(float(value), radius, Method.ROOT_PRODUCT, tuple(sorted(moduli)))


def mahler_measure(p, tol: float = DEFAULT_TOL, *, exact: bool = True) -> MeasureResult:
    """Mahler measure by the certified root product.

    For monic input the cyclotomic part is removed exactly first (a pure
    cyclotomic product returns exactly 1.0).  Non-monic input is allowed; the
    factor ``|a_n|`` is then included.  Roots within ``1e-9`` of the unit
    circle are snapped to modulus 1 only when the exact unit-circle root count
    of their factor agrees.

    ``exact=False`` disables both the cyclotomic fast path and the snapping,
    leaving a purely numeric computation; the test-suite uses it to check the
    exact machinery against plain numerics.
    """
    p = _check_input(p, tol)
    if p.degree == 0:
        return MeasureResult(float(abs(p.coeffs[0])), 0.0, Method.ROOT_PRODUCT, ())
    try:
        res = _root_product(p, tol, exact, precise=False)
        if res.error_radius <= tol:
            return res
    except ConvergenceError:
        pass
    res = _root_product(p, tol, exact, precise=True)
    if res.error_radius > tol:
        raise ConvergenceError(
            f"measure of {p} certified only to {res.error_radius:.3g} > tol={tol:g}",
            best_residual=res.error_radius,
        )
    return res


def log_mahler(p, tol: float = DEFAULT_TOL) -> float:
    """Natural logarithm of :func:`mahler_measure`."""
    return mahler_measure(p, tol).log_value


# ---------------------------------------------------------------------------
# Jensen quadrature


def _mean_log_abs(desc: np.ndarray, n: int, delta: float) -> float:
    theta = 2 * np.pi * np.arange(n) / n + delta
    vals = np.abs(np.polyval(desc, np.exp(1j * theta)))
    scale = np.abs(desc).sum()
    if vals.min() <= 1e-14 * scale:
        raise ZeroDivisionError
    return float(np.mean(np.log(vals)))


def jensen_measure(p, samples: int = 4096) -> MeasureResult:
    """Mahler measure from Jensen's formula ``log M(P) = mean of log|P(e^{it})|``.

    The trapezoidal rule is evaluated on ``samples`` points offset by
    ``pi / (7 samples)`` to avoid roots of unity.  The error estimate is the
    larger of the last two successive differences (``samples`` vs
    ``samples/2`` and ``samples/2`` vs ``samples/4``), doubled, plus a
    rounding floor.  It is an estimate, not a certified bound.
    """
    p = as_poly(p)
    if p.is_zero():
        raise DomainError("the Mahler measure of the zero polynomial is undefined")
    if samples < 16:
        raise DomainError("jensen_measure needs at least 16 samples")
    desc = np.array([float(c) for c in reversed(p.coeffs)])
    levels = (samples, samples // 2, samples // 4)
    for attempt in range(4):
        shift = 1.0 + 0.618 * attempt
        try:
            est = [_mean_log_abs(desc, n, shift * math.pi / (7 * n)) for n in levels]
            break
        except ZeroDivisionError:
            continue
    else:
        raise QuadratureError(f"quadrature nodes keep hitting zeros of {p}")
    log_m = est[0]
    log_err = 2 * max(abs(est[0] - est[1]), abs(est[1] - est[2]))
    log_err += 1e-13 * max(1, p.degree)
    value = math.exp(log_m)
    radius = value * math.expm1(log_err)
    return MeasureResult(value, radius, Method.JENSEN_QUADRATURE)


# ---------------------------------------------------------------------------
# Graeffe cross-check


def graeffe_measure(p, steps: int = 12) -> MeasureResult:
    """Rigorous coarse enclosure of ``M(P)`` from ``steps`` exact Graeffe squarings.

    After k steps ``G`` has measure ``M(P)**(2**k)`` and
    ``max_j |g_j| / C(n, j) <= M(G) <= ||G||_2``; taking ``2**k``-th roots
    gives an enclosure whose relative width shrinks like ``log(2**n) / 2**k``.
    """
    p = as_poly(p)
    if p.is_zero():
        raise DomainError("the Mahler measure of the zero polynomial is undefined")
    if steps < 0:
        raise DomainError("steps must be non-negative")
    g = p
    for _ in range(steps):
        g = graeffe_step(g)
    n = g.degree
    lo = max(math.log(abs(c)) - math.log(math.comb(n, j)) for j, c in enumerate(g.coeffs) if c)
    hi = 0.5 * math.log(sum(c * c for c in g.coeffs))
    scale = 2.0 ** steps
    lo, hi = lo / scale, hi / scale
    mid = 0.5 * (lo + hi)
    value = math.exp(mid)
    radius = max(math.exp(hi) - value, value - math.exp(lo))
    return MeasureResult(value, radius * (1 + 1e-12) + value * 1e-15, Method.GRAEFFE_CROSS_CHECK)
