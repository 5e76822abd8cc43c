from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knopkit.scalars import Context, ContextError, Scalar, ScalarParseError

VARS = ("t", "a", "b")


@st.composite
def polys(draw):
    out = Scalar()
    for _ in range(draw(st.integers(0, 4))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
        term = Scalar.const(c)
        for v in VARS:
            term = term * Scalar.var(v) ** draw(st.integers(0, 2))
        out = out + term
    return out


points = st.fixed_dictionaries({v: st.fractions(min_value=-3, max_value=3, max_denominator=5) for v in VARS})


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p and p * q == q * p
    assert p - p == Scalar()


@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys())
def test_printing_round_trips(p):
    assert Scalar.parse(str(p)) == p


def test_parse_examples():
    t = Scalar.var("t")
    assert Scalar.parse("t^2 - 1") == t * t - 1
    assert Scalar.parse("(t+1)*(t-1)") == t ** 2 - 1
    assert Scalar.parse("t/2") == t * Fraction(1, 2)
    assert Scalar.parse("-3/4") == Scalar.const(Fraction(-3, 4))


@pytest.mark.parametrize("bad", ["1/t", "t^", "(t", "t**-1", "t^(1/2)"])
def test_parse_rejects(bad):
    with pytest.raises(ScalarParseError):
        Scalar.parse(bad)


def test_substitute_power():
    t = Scalar.var("t")
    assert (t + 1).substitute({"t": t ** 2}) == t ** 2 + 1


def test_context_limits_names():
    ctx = Context(["t"])
    assert ctx.var("t") == Scalar.var("t")
    with pytest.raises(ContextError):
        ctx.var("s")
    with pytest.raises(ContextError):
        ctx.parse("t + s")
