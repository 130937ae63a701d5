from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpmoments.errors import DivergentIntegral
from kpmoments.radialfunc import (
    PolyExp,
    PolyExpTerm,
    add,
    differentiate,
    energy,
    factorial,
    format_rational,
    inner_product,
    mul,
    parse_rational,
    scale,
    shift_power,
)


def pe(*terms):
    return PolyExp(PolyExpTerm(F(c), p, F(s)) for c, p, s in terms)


# strategies -------------------------------------------------------------

small_rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)
decay = st.sampled_from([F(1), F(1, 2), F(1, 3), F(2, 3)])


def polyexp(min_power=0, max_power=4):
    term = st.tuples(small_rat, st.integers(min_power, max_power), decay)
    return st.lists(term, max_size=4).map(lambda ts: pe(*ts))


# examples ----------------------------------------------------------------


def test_add_zero_identity():
    f = pe((2, 1, 1), (F(-1, 3), 0, F(1, 2)))
    assert add(f, PolyExp()) == f


def test_scale_by_zero():
    assert scale(pe((2, 1, 1)), 0) == PolyExp()


def test_mul_adds_exponents():
    assert mul(pe((1, 1, 1)), pe((1, 1, 1))) == pe((1, 2, 2))


def test_differentiate_examples():
    assert differentiate(pe((1, 0, 1))) == pe((-1, 0, 1))
    half = F(1, 2)
    assert differentiate(pe((1, 1, half))) == pe((1, 0, half), (-half, 1, half))
    assert differentiate(PolyExp()) == PolyExp()


def test_shift_power_examples():
    assert shift_power(pe((1, 0, 1)), 2) == pe((1, 2, 1))
    assert shift_power(pe((1, 3, 1)), -3) == pe((1, 0, 1))
    assert shift_power(PolyExp(), 5) == PolyExp()


def test_inner_product_examples():
    # frozen from sympy: int r^2 e^(-2r) = 1/4, int r^4 e^(-r) = 24
    assert inner_product(pe((1, 0, 1)), pe((1, 0, 1))) == F(1, 4)
    assert inner_product(PolyExp(), pe((3, 2, 1))) == 0
    assert inner_product(pe((1, 1, F(1, 2))), pe((1, 1, F(1, 2)))) == 24


def test_inner_product_divergent():
    with pytest.raises(DivergentIntegral):
        inner_product(pe((1, -3, 1)), pe((1, 0, 1)))
    assert inner_product(pe((1, -2, 1)), pe((1, 0, 1))) == F(1, 2)


def test_inner_product_cancellation_before_divergence_check():
    # r^-3 terms cancel exactly, so the integral is finite
    f = pe((1, -3, 1), (-1, -3, 1), (1, 0, 1))
    assert inner_product(f, pe((1, 0, 1))) == F(1, 4)


def test_factorial():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000
    with pytest.raises(ValueError):
        factorial(-1)


def test_energy():
    assert energy(0) == F(-1, 2)
    assert energy(1) == F(-1, 8)
    assert energy(1) - energy(0) == F(3, 8)


def test_canonical_form_and_ordering():
    f = pe((1, 2, 1), (2, 0, F(1, 2)), (-1, 2, 1), (3, 1, F(1, 2)))
    assert [(t.power, t.decay) for t in f.terms] == [(0, F(1, 2)), (1, F(1, 2))]
    assert all(t.coeff != 0 for t in f.terms)


def test_decay_must_be_positive():
    with pytest.raises(ValueError):
        PolyExpTerm(F(1), 0, F(0))


def test_rational_serialization():
    assert format_rational(F(3, 1)) == "3"
    assert format_rational(F(-5, 12)) == "-5/12"
    assert parse_rational("-5/12") == F(-5, 12)


def test_polyexp_records_roundtrip():
    f = pe((F(3, 2), 1, F(1, 2)), (-3, 0, F(1, 2)))
    recs = f.to_records()
    assert recs[0] == {"coeff": "-3", "power": 0, "decay": "1/2"}
    assert PolyExp.from_records(recs) == f


# properties ---------------------------------------------------------------


@given(polyexp(), polyexp())
def test_inner_product_symmetric(f, g):
    assert inner_product(f, g) == inner_product(g, f)


@given(polyexp())
def test_inner_product_positive(f):
    if not f.is_zero():
        assert inner_product(f, f) > 0


@given(polyexp(), polyexp(), polyexp())
def test_inner_product_linear(f, g, h):
    assert inner_product(add(f, g), h) == inner_product(f, h) + inner_product(g, h)


@given(polyexp(1, 4), polyexp(1, 4))
def test_integration_by_parts(f, g):
    lhs = inner_product(differentiate(f), g) + inner_product(f, differentiate(g))
    assert lhs == -2 * inner_product(shift_power(f, -1), g)


@given(polyexp(-2, 4))
def test_canonicalization_idempotent(f):
    assert PolyExp(f.terms) == f
    assert PolyExp(f.terms).terms == f.terms


@given(polyexp(-2, 3), polyexp(-2, 3), polyexp(-2, 3))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert mul(f, g) == mul(g, f)
    assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))
    assert mul(mul(f, g), h) == mul(f, mul(g, h))


@given(polyexp(-2, 3), polyexp(-2, 3))
def test_product_rule(f, g):
    assert differentiate(mul(f, g)) == add(mul(differentiate(f), g), mul(f, differentiate(g)))


@settings(max_examples=15, deadline=None)
@given(polyexp(0, 3), polyexp(0, 3))
def test_inner_product_matches_sympy(f, g):
    sp = pytest.importorskip("sympy")
    r = sp.symbols("r", positive=True)

    def expr(h):
        return sum(
            (sp.Rational(t.coeff.numerator, t.coeff.denominator) * r**t.power
             * sp.exp(-sp.Rational(t.decay.numerator, t.decay.denominator) * r) for t in h.terms),
            sp.Integer(0),
        )

    ref = sp.integrate(sp.expand(expr(f) * expr(g) * r**2), (r, 0, sp.oo))
    assert F(int(sp.numer(ref)), int(sp.denom(ref))) == inner_product(f, g)
