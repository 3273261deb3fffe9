"""Certified complex root approximation.

Roots are found by Aberth-Ehrlich simultaneous iteration on the whole
polynomial (no deflation), first in double precision and, if the certified
radii are too coarse, refined once more at higher working precision with
mpmath.  Every approximation ``z_k`` comes with a radius from the Weierstrass
correction ``W_k = p(z_k) / (a_n prod_{j != k} (z_k - z_j))``: all zeros of
``p`` lie in the union of the discs ``D(z_k, n |W_k|)``, and a connected
component made of ``m`` discs holds exactly ``m`` zeros.

Multiple roots are handled by square-free decomposition before iterating, so
the iteration only ever sees simple roots.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

from .errors import ConvergenceError, DomainError
from .polynomial import IntPolynomial, as_poly, squarefree_decomposition

EPS = np.finfo(float).eps
REFINE_DPS = 50


def _initial_points(desc: np.ndarray) -> np.ndarray:
    n = len(desc) - 1
    lead, const = abs(desc[0]), abs(desc[-1])
    radius = (const / lead) ** (1.0 / n) if const else 0.5
    radius = min(max(radius, 0.5), 2.0)
    k = np.arange(n)
    # the angular offset breaks the symmetry of real-coefficient inputs
    return radius * np.exp(1j * (2 * np.pi * k / n + 0.7)) * (1 + 0.01 * k / n)


def _aberth_float(desc: np.ndarray, maxiter: int) -> tuple[np.ndarray, bool]:
    n = len(desc) - 1
    z = _initial_points(desc)
    ddesc = np.polyder(desc)
    done = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        pz = np.polyval(desc, z)
        dpz = np.polyval(ddesc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inter = (1.0 / diff).sum(axis=1) - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            step = w / (1.0 - w * inter)
        bad = ~np.isfinite(step)
        step[bad] = 1e-3 * (1 + abs(z[bad]))
        step[done] = 0.0
        z = z - step
        done |= np.abs(step) <= 4 * EPS * np.maximum(np.abs(z), 1.0)
        if done.all():
            return z, True
    return z, False


def _radii_float(desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    n = len(desc) - 1
    pz = np.polyval(desc, z)
    absz = np.abs(z)
    # forward error of Horner's rule: |err| <= 2n eps sum |a_i| |z|^i
    bound = np.polyval(np.abs(desc), absz) * (2 * n + 2) * EPS
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    denom = np.abs(desc[0]) * np.abs(np.prod(diff, axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = n * (np.abs(pz) + bound) / denom
    r = np.where(np.isfinite(r), r, np.inf)
    return r * (1 + 1e-10)


def _aberth_mp(coeffs: tuple[int, ...], z0, dps: int, maxiter: int):
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(coeffs)]
        n = len(desc) - 1
        ddesc = [desc[i] * (n - i) for i in range(n)]
        z = [mpmath.mpc(complex(v)) for v in z0]
        tol = mpmath.mpf(10) ** (-(dps - 5))
        for _ in range(maxiter):
            biggest = mpmath.mpf(0)
            new = []
            for k in range(n):
                zk = z[k]
                pz = mpmath.polyval(desc, zk)
                dpz = mpmath.polyval(ddesc, zk)
                if dpz == 0:
                    new.append(zk + tol)
                    continue
                w = pz / dpz
                inter = mpmath.fsum(1 / (zk - z[j]) for j in range(n) if j != k)
                step = w / (1 - w * inter)
                new.append(zk - step)
                biggest = max(biggest, abs(step) / max(abs(zk), 1))
            z = new
            if biggest < tol:
                break
        return z


def _radii_mp(coeffs: tuple[int, ...], z, dps: int) -> np.ndarray:
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(coeffs)]
        n = len(desc) - 1
        out = []
        for k in range(n):
            zk = z[k]
            pz = abs(mpmath.polyval(desc, zk))
            pz += mpmath.polyval([abs(c) for c in desc], abs(zk)) * mpmath.mpf(2) ** (-mpmath.mp.prec + 8)
            denom = abs(desc[0])
            for j in range(n):
                if j != k:
                    denom *= abs(zk - z[j])
            r = n * pz / denom if denom else mpmath.inf
            out.append(float(r) * (1 + 1e-10) + 1e-300)
        return np.array(out)


def squarefree_roots(f: IntPolynomial, tol: float, precise: bool = False):
    """Roots of a square-free ``f`` with radii, as ``(z, r)`` numpy arrays.

    ``precise=True`` skips straight to the high-precision refinement.
    """
    n = f.degree
    if n == 1:
        a0, a1 = f.coeffs
        return np.array([complex(-a0 / a1)]), np.array([abs(-a0 / a1) * EPS])
    maxiter = 200 * n
    big = max(abs(c) for c in f.coeffs) > 2 ** 50
    z = r = None
    if not big and not precise:
        desc = np.array(f.coeffs[::-1], dtype=float)
        z, ok = _aberth_float(desc, maxiter)
        r = _radii_float(desc, z)
        if ok and r.max() <= tol:
            return z, r
    start = z if z is not None and np.all(np.isfinite(z)) else _initial_points(
        np.array([float(c) for c in f.coeffs[::-1]])
    )
    zm = _aberth_mp(f.coeffs, start, REFINE_DPS, maxiter)
    rm = _radii_mp(f.coeffs, zm, REFINE_DPS)
    zc = np.array([complex(v) for v in zm])
    # conversion to double adds up to one ulp of displacement
    rm = rm + np.abs(zc) * EPS
    if rm.max() > tol:
        raise ConvergenceError(
            f"root radii for {f} stayed above tol={tol:g}", best_residual=float(rm.max())
        )
    return zc, rm


def complex_roots(p, tol: float = 1e-9) -> list[tuple[complex, float]]:
    """Approximate every root of ``p`` (with multiplicity) with a certified radius.

    Each true root lies within the stated radius of some returned point.
    Raises :class:`ConvergenceError` if the radii cannot be pushed below ``tol``.
    """
    p = as_poly(p)
    if p.is_zero() or p.degree < 1:
        raise DomainError("complex_roots needs a polynomial of degree >= 1")
    if not tol > 0:
        raise DomainError("tol must be positive")
    out: list[tuple[complex, float]] = []
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    out.extend((0j, 0.0) for _ in range(k))
    for f, mult in squarefree_decomposition(IntPolynomial(p.coeffs[k:])):
        z, r = squarefree_roots(f, tol)
        for zi, ri in zip(z, r):
            out.extend((complex(zi), float(ri)) for _ in range(mult))
    out.sort(key=lambda t: (abs(t[0]), t[0].imag))
    return out


def disc_components(z: np.ndarray, r: np.ndarray) -> list[list[int]]:
    """Group indices of overlapping discs (union-find over pairs)."""
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= r[i] + r[j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def modulus_intervals(z: np.ndarray, r: np.ndarray) -> list[tuple[float, float]]:
    """Per-root modulus enclosures ``[lo, hi]``.

    A root inside a component of overlapping discs is only known to lie
    somewhere in that component, so every member gets the component's span.
    """
    out = [(0.0, 0.0)] * len(z)
    for comp in disc_components(z, r):
        lo = max(0.0, min(abs(z[i]) - r[i] for i in comp))
        hi = max(abs(z[i]) + r[i] for i in comp)
        for i in comp:
            out[i] = (lo, hi)
    return out


def cauchy_radius(p: IntPolynomial) -> float:
    return 1 + max(abs(a) for a in p.coeffs[:-1]) / abs(p.leading)


def batch_companion_roots(coeffs: np.ndarray) -> np.ndarray:
    """Eigenvalues of the companion matrices of many monic polynomials at once.

    ``coeffs`` has shape ``(K, n)`` holding ``a_0 .. a_{n-1}`` of monic
    degree-``n`` polynomials (ascending, leading 1 omitted).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    k, n = coeffs.shape
    comp = np.zeros((k, n, n))
    if n > 1:
        idx = np.arange(n - 1)
        comp[:, idx + 1, idx] = 1.0
    comp[:, :, -1] = -coeffs
    return np.linalg.eigvals(comp)


def batch_root_radii(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized Weierstrass radii for the output of :func:`batch_companion_roots`."""
    coeffs = np.asarray(coeffs, dtype=float)
    k, n = coeffs.shape
    pz = np.ones_like(z)
    bound = np.ones(z.shape)
    absz = np.abs(z)
    for i in range(n - 1, -1, -1):
        pz = pz * z + coeffs[:, i : i + 1]
        bound = bound * absz + np.abs(coeffs[:, i : i + 1])
    bound *= (2 * n + 2) * EPS
    diff = z[:, :, None] - z[:, None, :]
    diag = np.arange(n)
    diff[:, diag, diag] = 1.0
    denom = np.abs(np.prod(diff, axis=2))
    with np.errstate(divide="ignore", invalid="ignore"):
        r = n * (np.abs(pz) + bound) / denom
    return np.where(np.isfinite(r), r * (1 + 1e-10), np.inf)


def _isolated(z: np.ndarray, r: np.ndarray) -> np.ndarray:
    n = z.shape[1]
    dist = np.abs(z[:, :, None] - z[:, None, :])
    reach = r[:, :, None] + r[:, None, :]
    ok = dist > reach
    diag = np.arange(n)
    ok[:, diag, diag] = True
    return ok.all(axis=(1, 2))


def batch_measure_bounds(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Certified enclosures of the Mahler measure for many monic polynomials.

    Returns ``(lower, upper, isolated)``.  Where the root discs overlap
    (clusters or repeated roots) no per-root count is available and the row
    falls back to the trivial enclosure ``[1, inf]`` with ``isolated`` False;
    callers route those rows through :func:`lehmer.measure.mahler_measure`.
    """
    coeffs = np.asarray(coeffs)
    if coeffs.shape[1] == 0:
        ones = np.ones(coeffs.shape[0])
        return ones, ones, np.ones(coeffs.shape[0], dtype=bool)
    z = batch_companion_roots(coeffs)
    r = batch_root_radii(coeffs, z)
    iso = _isolated(z, r) & np.isfinite(r).all(axis=1)
    absz = np.abs(z)
    lower = np.prod(np.maximum(1.0, absz - r), axis=1)
    upper = np.prod(np.maximum(1.0, absz + r), axis=1)
    # product rounding: n multiplications, relative 1 ulp each
    n = coeffs.shape[1]
    lower = np.where(iso, np.maximum(1.0, lower * (1 - (n + 1) * EPS)), 1.0)
    upper = np.where(iso, upper * (1 + (n + 1) * EPS), np.inf)
    return lower, upper, iso
