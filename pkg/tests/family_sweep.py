"""Exhaustive monic families and a screened measure sweep shared by the tests.

The screen uses companion-matrix eigenvalues from LAPACK with Weierstrass
radii, a route independent of the Aberth iteration inside ``mahler_measure``.
"""

from __future__ import annotations

import itertools

import numpy as np

from lehmer import IntPolynomial, is_cyclotomic_product, is_self_reciprocal, mahler_measure
from lehmer.roots import batch_measure_bounds


def monic_family(degree: int, bound: int) -> np.ndarray:
    """Rows ``a_0 .. a_{d-1}`` of every monic degree-``d`` polynomial, ``a_0 != 0``."""
    rng = range(-bound, bound + 1)
    a0 = [c for c in rng if c]
    rows = [(c0, *rest) for c0 in a0 for rest in itertools.product(rng, repeat=degree - 1)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), degree)


def as_polynomial(row) -> IntPolynomial:
    return IntPolynomial(tuple(int(c) for c in row) + (1,))


def sweep(degree: int, bound: int, threshold: float, chunk: int = 20000):
    """Yield ``(row, lower, upper, cyclotomic)`` for each family member whose
    certified lower bound does not clear ``threshold``.

    Rows that clear it are counted but not yielded: their measure is
    certified ``>= threshold`` already.
    """
    fam = monic_family(degree, bound)
    for start in range(0, len(fam), chunk):
        block = fam[start : start + chunk]
        lo, hi, iso = batch_measure_bounds(block)
        for i in np.nonzero(~iso | (lo < threshold))[0]:
            p = as_polynomial(block[i])
            if is_cyclotomic_product(p):
                yield block[i], 1.0, 1.0, True
                continue
            m = mahler_measure(p, 1e-9)
            yield block[i], m.value - m.error_radius, m.value + m.error_radius, False


def family_count(degree: int, bound: int) -> int:
    return (2 * bound) * (2 * bound + 1) ** (degree - 1)


__all__ = ["monic_family", "as_polynomial", "sweep", "family_count", "is_self_reciprocal"]
