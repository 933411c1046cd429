from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cido.qpoly import (
    Bidegree,
    ParseError,
    Polynomial,
    Rational,
    RingSpec,
    UnknownVariableError,
    bidegree,
    count_monomials,
    enumerate_monomials,
    format_polynomial,
    parse_poly,
    parse_with_names,
    poly_bidegree,
)

NAMES = ["y1", "x0", "x1", "x2"]
N = len(NAMES)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(*[st.integers(0, 2)] * N)
polys = st.dictionaries(monos, coeffs, max_size=4).map(lambda d: Polynomial(d, N))


def test_rational_is_exact_and_normalised():
    q = Rational(6, -4)
    assert q == Fraction(-3, 2)
    assert str(q) == "-3/2"


def test_parse_fermat_cubic(cubic_spec):
    p = parse_poly("x0^3 + x1^3 + x2^3", cubic_spec)
    assert len(p) == 3
    assert all(c == 1 for c in p.terms.values())


def test_parse_identity_cancels(cubic_spec):
    p = parse_poly("(x0 + x1)^2 - x0^2 - 2*x0*x1", cubic_spec)
    assert p == parse_poly("x1^2", cubic_spec)


def test_parse_unknown_variable(cubic_spec):
    with pytest.raises(UnknownVariableError) as exc:
        parse_poly("x0 + z", cubic_spec)
    assert exc.value.pos == 5


@pytest.mark.parametrize("text", ["x0 +", "x0 ^ ", "(x0", "x0 x1", "3/0", "x0^-1", ""])
def test_parse_syntax_errors(cubic_spec, text):
    with pytest.raises(ParseError):
        parse_poly(text, cubic_spec)


def test_parse_out_of_range_variable(cubic_spec):
    with pytest.raises(UnknownVariableError):
        parse_poly("x3", cubic_spec)
    with pytest.raises(UnknownVariableError):
        parse_poly("y2", cubic_spec)


def test_parse_rationals_and_leading_sign(cubic_spec):
    p = parse_poly("-3/2*y1*x0 + 2*x0^2*x1 + 1", cubic_spec)
    assert format_polynomial(p, cubic_spec.names) == "2*x0^2*x1 - 3/2*y1*x0 + 1"
    assert cubic_spec.format(parse_poly("-x0", cubic_spec)) == "-x0"


def test_canonical_printing_order(cubic_spec):
    p = parse_poly("1 + x2 + x0 + y1 + x0*x1", cubic_spec)
    assert cubic_spec.format(p) == "x0*x1 + y1 + x0 + x2 + 1"


@given(polys)
def test_print_parse_roundtrip(p):
    text = format_polynomial(p, NAMES)
    assert parse_with_names(text, NAMES) == p
    assert format_polynomial(parse_with_names(text, NAMES), NAMES) == text


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == Polynomial.zero(N)


@given(polys, polys, st.integers(0, N - 1))
@settings(max_examples=60)
def test_leibniz(a, b, i):
    assert (a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i)


def test_no_zero_coefficients_stored():
    p = Polynomial({(1, 0, 0, 0): 1, (0, 1, 0, 0): 0}, N)
    assert list(p.terms) == [(1, 0, 0, 0)]
    q = p - p
    assert q.terms == {}


def test_bidegree_examples():
    spec3 = RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])
    assert bidegree((1, 0, 0, 0), spec3) == Bidegree(-3, 1)
    assert bidegree((0, 1, 0, 0), spec3) == Bidegree(1, 0)
    spec2 = RingSpec.from_strings(2, ["x0^2 + x1^2 + x2^2"])
    assert bidegree((1, 2, 0, 0), spec2) == Bidegree(0, 1)


@given(monos, monos)
def test_bidegree_additive(m1, m2):
    spec = RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])
    p, q = Polynomial.monomial(m1), Polynomial.monomial(m2)
    assert poly_bidegree(p * q, spec) == poly_bidegree(p, spec) + poly_bidegree(q, spec)


def test_derivative_examples(cubic_spec):
    x0cube = cubic_spec.parse("x0^3")
    assert x0cube.derivative(1) == cubic_spec.parse("3*x0^2")
    yg = cubic_spec.parse("y1*(x0^3 + x1^3 + x2^3)")
    assert yg.derivative(0) == cubic_spec.generators[0]
    assert Polynomial.constant(7, N).derivative(2).is_zero()


def test_enumerate_monomials(cubic_spec):
    assert enumerate_monomials(Bidegree(0, 0), cubic_spec) == [(0, 0, 0, 0)]
    w1 = enumerate_monomials(Bidegree(0, 1), cubic_spec)
    assert len(w1) == 10
    assert all(m[0] == 1 and sum(m[1:]) == 3 for m in w1)
    assert w1 == sorted(w1, key=lambda m: (sum(m), m), reverse=True)
    assert enumerate_monomials(Bidegree(-1, 0), cubic_spec) == []
    assert count_monomials(Bidegree(0, 1), cubic_spec) == 10


def test_ringspec_validation():
    with pytest.raises(ValueError):
        RingSpec.from_strings(2, ["x0^3 + x1^2"])  # not homogeneous
    with pytest.raises(ValueError):
        RingSpec.from_strings(1, ["x0", "x1"])  # k > n
    with pytest.raises(ValueError):
        RingSpec.from_strings(2, ["0"])
    spec = RingSpec.from_strings(3, ["x0^2 + x1^2", "x2^3 + x3^3"])
    assert spec.degrees == (2, 3)
    assert spec.N == 6
    assert spec.names == ["y1", "y2", "x0", "x1", "x2", "x3"]


def test_divide_exact():
    a = parse_with_names("x0^2 - x1^2", NAMES)
    b = parse_with_names("x0 + x1", NAMES)
    assert a.divide_exact(b) == parse_with_names("x0 - x1", NAMES)
    assert parse_with_names("x0^2 + x1^2", NAMES).divide_exact(b) is None
