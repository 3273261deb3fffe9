import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lehmer import (
    DomainError,
    IntPolynomial,
    displacement_from_trace,
    displacement_from_u_polynomial,
    parse,
    u_minpoly_from_trace_minpoly,
)
from lehmer.polynomial import from_trace_polynomial, reciprocal_sign

LEHMER = parse("1,1,0,-1,-1,-1,-1,-1,0,1,1")


def test_u_polynomial_examples():
    d = displacement_from_u_polynomial(parse("1,-3,1"))
    assert d.length_dim2 == pytest.approx(1.9248473003, abs=1e-9)
    assert d.length_dim3 == pytest.approx(0.9624236501, abs=1e-9)
    d = displacement_from_u_polynomial(LEHMER)
    assert d.length_dim2 == pytest.approx(0.3247152240, abs=1e-9)
    assert d.length_dim3 == pytest.approx(0.1623576120, abs=1e-9)
    with pytest.raises(DomainError, match="not hyperbolic: measure is 1"):
        displacement_from_u_polynomial(parse("1,0,1"))
    with pytest.raises(DomainError):
        displacement_from_u_polynomial(parse("1,2"))


def test_resultant_examples():
    assert u_minpoly_from_trace_minpoly(parse("-3,1")) == parse("1,-3,1")
    assert u_minpoly_from_trace_minpoly(parse("-2,1")) == parse("1,-2,1")
    # y^2 - y - 1 lifts to x^4 - x^3 + x^2 - x + 1 (the 10th cyclotomic polynomial)
    assert u_minpoly_from_trace_minpoly(parse("-1,-1,1")) == parse("1,-1,1,-1,1")
    assert u_minpoly_from_trace_minpoly(parse("-3,-1,1")) == parse("1,-1,-1,-1,1")
    with pytest.raises(DomainError):
        u_minpoly_from_trace_minpoly(parse("1,2"))


def test_trace_errors_name_the_class():
    with pytest.raises(DomainError, match="elliptic"):
        displacement_from_trace(parse("-1,1"))
    with pytest.raises(DomainError, match="parabolic"):
        displacement_from_trace(parse("-2,1"))
    with pytest.raises(DomainError, match="elliptic"):
        displacement_from_trace(parse("-1,-1,1"))


def test_salem_trace():
    d = displacement_from_trace(parse("-3,-1,1"))
    assert d.u_polynomial == parse("1,-1,-1,-1,1")
    assert d.length_dim2 == pytest.approx(2 * math.log(1.7220838057390422), abs=1e-12)


@pytest.mark.parametrize("t", range(3, 21))
def test_integer_trace_closed_form(t):
    d = displacement_from_trace(IntPolynomial((-t, 1)))
    assert abs(d.length_dim2 - 2 * math.acosh(t / 2)) <= 1e-9
    assert d.length_dim2 / d.length_dim3 == 2.0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_lift_matches_trace_expansion(cs):
    # the resultant equals x^s q(x + 1/x), computed here by the Dickson route
    q = IntPolynomial(tuple(cs) + (1,))
    lift = u_minpoly_from_trace_minpoly(q)
    assert lift == from_trace_polynomial(q)
    assert lift.degree == 2 * q.degree
    assert reciprocal_sign(lift) == 1
