"""Evaluators for the systole / volume / degree inequality chain.

None of the default constants below come from the literature; they are
transparent placeholders and every evaluator takes them explicitly.

* Dobrowolski-type bound on ``log M(P)`` for degree ``d``:
  ``c1 * (log log d / log d)**3``.
* Field degree from the degree of ``u``'s polynomial: ``deg k >= d / 2``.
* Field degree from volume: ``deg k <= c2 log vol + c3``.
* Composed arithmetic systole bound with ``L = c_agg log vol`` (or the affine
  ``L = c2 log vol + c3`` when ``c3 != 0``): ``c1 * (log log L / log L)**3``.
* Non-arithmetic construction: ``vol >= c_n / systole**(n - 2)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_EPS = 2.0 ** -52
CSV_HEADER = ("volume", "arith_syst_lb", "nonarith_syst_ub")


@dataclass(frozen=True)
class BoundConstants:
    c1: float = 0.25
    c2: float = 1.0
    c3: float = 0.0
    c_agg: float = 1.0
    c_n: float = 1.0
    dim_n: int = 3

    def __post_init__(self):
        for name in ("c1", "c2", "c_agg", "c_n"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive real, got {v}")
        if not math.isfinite(self.c3):
            raise DomainError("c3 must be finite")
        if int(self.dim_n) != self.dim_n or self.dim_n < 3:
            raise DomainError(f"dim_n must be an integer >= 3, got {self.dim_n}")

    def as_dict(self) -> dict:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "c_agg": self.c_agg,
            "c_n": self.c_n,
            "dim_n": self.dim_n,
        }


DEFAULT_CONSTANTS = BoundConstants()


def dobrowolski_form(x: float, c1: float) -> float:
    """``c1 * (log log x / log x)**3`` for real ``x > 1``."""
    if not x > 1:
        raise DomainError(f"dobrowolski_form needs x > 1, got {x}")
    lx = math.log(x)
    return c1 * (math.log(lx) / lx) ** 3


def dobrowolski_lower_bound(d: int, k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """Lower bound for ``log M(P)``, ``P`` non-cyclotomic of degree ``d``.

    Negative (vacuous) values for small ``d`` are returned unchanged.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"degree must be an integer >= 2, got {d}")
    return dobrowolski_form(float(d), k.c1)


def field_degree_lower_bound(d: int) -> float:
    if int(d) != d or d < 1:
        raise DomainError(f"degree must be an integer >= 1, got {d}")
    return d / 2


def degree_volume_upper_bound(vol: float, k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    if not vol > 0:
        raise DomainError(f"volume must be positive, got {vol}")
    return k.c2 * math.log(vol) + k.c3


def composed_form(k: BoundConstants) -> str:
    """``"power"`` (``L = c_agg log vol``) when ``c3 == 0``, else ``"affine"``."""
    return "power" if k.c3 == 0 else "affine"


def min_admissible_volume(k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """Smallest volume with ``L >= e``, where the composed bound is defined."""
    if composed_form(k) == "power":
        return math.exp(math.e / k.c_agg)
    return math.exp((math.e - k.c3) / k.c2)


def monotone_volume_threshold(k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """Volume beyond which the composed bound decreases (``L >= e**e``).

    ``log y / y`` peaks at ``y = e``; below this volume the bound still
    increases with volume.
    """
    target = math.e ** math.e
    if composed_form(k) == "power":
        return math.exp(target / k.c_agg)
    return math.exp((target - k.c3) / k.c2)


def systole_volume_lower_bound(vol: float, k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """Arithmetic systole lower bound in terms of volume (triple logarithm form)."""
    if not vol > 0:
        raise DomainError(f"volume must be positive, got {vol}")
    lv = math.log(vol)
    if composed_form(k) == "power":
        if lv <= 0:
            raise DomainError(
                f"volume {vol} below validity threshold {min_admissible_volume(k):.17g}"
            )
        log_l = math.log(k.c_agg) + math.log(lv)
    else:
        big_l = k.c2 * lv + k.c3
        if big_l <= 0:
            raise DomainError(
                f"volume {vol} below validity threshold {min_admissible_volume(k):.17g}"
            )
        log_l = math.log(big_l)
    if 1.0 - 4 * _EPS <= log_l < 1.0:
        log_l = 1.0  # boundary of validity, lost to rounding
    if log_l < 1.0:
        raise DomainError(
            f"volume {vol} below validity threshold {min_admissible_volume(k):.17g}"
        )
    ratio = math.log(log_l) / log_l
    return k.c1 * ratio * ratio * ratio


def nonarithmetic_volume_lower_bound(systole: float, k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """``c_n / systole**(n - 2)`` for the non-arithmetic short-systole manifolds."""
    if not systole > 0:
        raise DomainError(f"systole must be positive, got {systole}")
    if k.dim_n < 3:
        raise DomainError("dimension must be >= 3")
    # repeated division keeps small exact cases exact (0.1 ** 2 is not 0.01)
    vol = k.c_n
    for _ in range(k.dim_n - 2):
        vol /= systole
    return vol


theorem1b_volume_lower_bound = nonarithmetic_volume_lower_bound


def nonarithmetic_systole_upper_bound(vol: float, k: BoundConstants = DEFAULT_CONSTANTS) -> float:
    """Invert the volume bound: the largest systole compatible with ``vol``."""
    if not vol > 0:
        raise DomainError(f"volume must be positive, got {vol}")
    return (k.c_n / vol) ** (1.0 / (k.dim_n - 2))


def growth_table(
    vol_min: float, vol_max: float, steps: int, k: BoundConstants = DEFAULT_CONSTANTS
) -> list[tuple[float, float, float]]:
    """Rows ``(volume, arith_syst_lb, nonarith_syst_ub)`` on a log-spaced volume grid."""
    if int(steps) != steps or steps < 2:
        raise DomainError("steps must be an integer >= 2")
    if not (vol_min > 0 and vol_max > 0) or not vol_min < vol_max:
        raise DomainError(f"need 0 < vol_min < vol_max, got {vol_min}, {vol_max}")
    systole_volume_lower_bound(vol_min, k)  # range check before any work
    vols = np.geomspace(vol_min, vol_max, int(steps))
    vols[0], vols[-1] = vol_min, vol_max
    return [
        (
            float(v),
            systole_volume_lower_bound(float(v), k),
            nonarithmetic_systole_upper_bound(float(v), k),
        )
        for v in vols
    ]


def growth_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([format(x, ".17g") for x in row])
    return buf.getvalue()
