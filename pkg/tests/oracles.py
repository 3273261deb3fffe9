"""Independent numeric oracles for the tests.

Nothing here imports the package: square-free splitting is done in exact
rational arithmetic and roots come from ``mpmath.polyroots``, which only ever
sees polynomials with simple roots.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def _qdivmod(a: list[Fraction], b: list[Fraction]):
    """Rational long division on ascending coefficient lists."""
    a = a[:]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _qgcd(a, b):
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _roots_of(coeffs: list[Fraction], dps: int) -> list:
    """Roots with multiplicity: distinct roots of p / gcd(p, p') plus the roots
    of gcd(p, p'), recursively, so polyroots only ever sees simple roots."""
    if len(coeffs) <= 1:
        return []
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    g = _qgcd(coeffs, deriv)
    simple, _ = _qdivmod(coeffs, g)
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(simple)]
        found = list(mpmath.polyroots(desc, maxsteps=400, extraprec=200)) if len(simple) > 1 else []
    return found + _roots_of(g, dps)


def all_roots(p, dps: int = 40) -> list:
    """All complex roots of an integer polynomial, with multiplicity."""
    return _roots_of([Fraction(c) for c in p.coeffs], dps)


def mp_measure(p, dps: int = 50) -> mpmath.mpf:
    """Mahler measure as |leading| times the product of root moduli above one."""
    with mpmath.workdps(dps):
        m = mpmath.mpf(abs(p.leading))
        for z in all_roots(p, dps):
            if abs(z) > 1:
                m *= abs(z)
        return +m
