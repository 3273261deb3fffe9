import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lehmer import (
    BoundConstants,
    DomainError,
    degree_volume_upper_bound,
    dobrowolski_lower_bound,
    field_degree_lower_bound,
    growth_table,
    nonarithmetic_volume_lower_bound,
    systole_volume_lower_bound,
    theorem1b_volume_lower_bound,
)
from lehmer.bounds import (
    CSV_HEADER,
    DEFAULT_CONSTANTS,
    composed_form,
    growth_table_csv,
    min_admissible_volume,
    monotone_volume_threshold,
)


def closed(x, c1=0.25):
    return c1 * (math.log(math.log(x)) / math.log(x)) ** 3


def test_dobrowolski_values():
    # printed as 0.0118810; mpmath gives 0.0118806931655763...
    assert dobrowolski_lower_bound(10) == pytest.approx(0.0118810, abs=4e-7)
    assert dobrowolski_lower_bound(10) == pytest.approx(0.011880693165576385, abs=1e-15)
    assert dobrowolski_lower_bound(10) == pytest.approx(closed(10), rel=1e-15)
    assert dobrowolski_lower_bound(2) < 0  # vacuous, returned unchanged
    assert dobrowolski_lower_bound(2) == pytest.approx(-0.03695996008051705, rel=1e-14)
    with pytest.raises(DomainError):
        dobrowolski_lower_bound(1)


def test_field_and_volume_degree():
    assert field_degree_lower_bound(10) == 5
    assert degree_volume_upper_bound(1e6) == pytest.approx(math.log(1e6), rel=1e-15)
    k = BoundConstants(c2=2.0, c3=1.5)
    assert degree_volume_upper_bound(math.e, k) == pytest.approx(3.5)
    with pytest.raises(DomainError):
        degree_volume_upper_bound(0.0)


def test_systole_volume_values():
    # the published rounding 0.0124240 is off in its last digit; mpmath gives 0.012423884284916...
    assert systole_volume_lower_bound(1e6) == pytest.approx(0.0124240, abs=2e-7)
    assert systole_volume_lower_bound(1e6) == pytest.approx(0.012423884284916, abs=1e-15)
    assert systole_volume_lower_bound(1e6) == pytest.approx(closed(math.log(1e6)), rel=1e-14)
    assert systole_volume_lower_bound(math.exp(math.e)) == 0.0
    with pytest.raises(DomainError, match="threshold"):
        systole_volume_lower_bound(10.0)
    assert composed_form(DEFAULT_CONSTANTS) == "power"


def test_affine_form():
    k = BoundConstants(c2=1.0, c3=2.0)
    assert composed_form(k) == "affine"
    v = 1e8
    assert systole_volume_lower_bound(v, k) == pytest.approx(closed(math.log(v) + 2.0), rel=1e-14)
    assert min_admissible_volume(k) == pytest.approx(math.exp(math.e - 2.0))


def test_short_systole_volume_bound():
    assert theorem1b_volume_lower_bound(0.1, BoundConstants(dim_n=4)) == 100.0
    assert theorem1b_volume_lower_bound(0.0625, BoundConstants(dim_n=4)) == 256.0
    with pytest.raises(DomainError):
        theorem1b_volume_lower_bound(0.0)
    with pytest.raises(DomainError):
        BoundConstants(dim_n=2)


@given(st.floats(1e-3, 10.0), st.integers(3, 9), st.floats(0.1, 10.0))
def test_short_systole_volume_bound_inverts(s, n, cn):
    k = BoundConstants(c_n=cn, dim_n=n)
    assert nonarithmetic_volume_lower_bound(s, k) * s ** (n - 2) == pytest.approx(cn, rel=1e-13)


@pytest.mark.parametrize("field", ["c1", "c2", "c_agg", "c_n"])
def test_constants_must_be_positive(field):
    with pytest.raises(DomainError):
        BoundConstants(**{field: 0.0})


def test_monotone_beyond_threshold():
    start = monotone_volume_threshold()
    vols = np.geomspace(start, 1e300, 400)
    vals = [systole_volume_lower_bound(float(v)) for v in vols]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    # below the threshold the composed bound still rises with volume
    low = np.geomspace(min_admissible_volume() * 1.01, start * 0.99, 50)
    lows = [systole_volume_lower_bound(float(v)) for v in low]
    assert all(b > a for a, b in zip(lows, lows[1:]))


def test_growth_table_and_csv():
    rows = growth_table(1e6, 1e9, 2)
    assert len(rows) == 2
    assert rows[0][1] == pytest.approx(0.012423884284916, abs=1e-15)
    assert rows[1][1] < rows[0][1] and rows[1][2] < rows[0][2]
    text = growth_table_csv(rows)
    assert text.splitlines()[0] == "volume,arith_syst_lb,nonarith_syst_ub"
    parsed = list(csv.reader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_HEADER
    assert float(parsed[1][1]) == rows[0][1]
    with pytest.raises(DomainError):
        growth_table(1e6, 1e6, 2)
    with pytest.raises(DomainError):
        growth_table(1.0, 1e6, 5)
