from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fanohilbert.errors import PoleError
from fanohilbert.exactalg import (
    LaurentSeriesRF,
    Poly,
    RationalFunction,
    as_rational,
    bernoulli_plus,
    matq_det,
    matq_nullspace,
    matq_rank,
    matq_rank_basis,
    matq_rref,
    matq_solve,
    poly_gcd,
    qstr,
    rf_add,
    rf_derivative_at_zero,
    rf_eval_at,
    rf_mul,
    row_space_equal,
)

S = Poly([0, 1])
ONE = Poly.const(1)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(small, min_size=1, max_size=4).map(Poly)


@st.composite
def rfs_regular_at_zero(draw):
    num = draw(polys)
    den = draw(polys)
    if den(0) == 0:
        den = den + Poly.const(1 + abs(den.coeff(1)))
    if den.is_zero():
        den = ONE
    return RationalFunction(num, den)


# rationals -----------------------------------------------------------------


def test_rational_serialization():
    assert qstr(Fraction(6, 4)) == "3/2"
    assert qstr(Fraction(-4, 2)) == "-2"
    assert qstr(0) == "0"


def test_as_rational_rejects_float():
    with pytest.raises(TypeError):
        as_rational(0.5)


# Bernoulli -----------------------------------------------------------------


@pytest.mark.parametrize("n,value", [(0, 1), (1, Fraction(1, 2)), (2, Fraction(1, 6)), (4, Fraction(-1, 30))])
def test_bernoulli_values(n, value):
    assert bernoulli_plus(n) == value


def test_bernoulli_recurrence_and_odd_vanishing():
    for n in range(21):
        assert sum(comb(n + 1, k) * bernoulli_plus(k) for k in range(n + 1)) == n + 1
        if n >= 3 and n % 2:
            assert bernoulli_plus(n) == 0


def test_bernoulli_against_sympy():
    for n in range(2, 21):
        assert bernoulli_plus(n) == Fraction(str(sympy.bernoulli(n)))


# rational functions --------------------------------------------------------


def test_rf_examples():
    f = RationalFunction(ONE, S)
    assert rf_add(f, -f).is_zero()
    assert rf_eval_at(RationalFunction(S, S + 1), 1) == Fraction(1, 2)
    g = RationalFunction(S * S - 1, S - 1)
    assert g.num == S + 1 and g.den == ONE
    assert rf_eval_at(g, 1) == 2


def test_rf_normal_form_is_monic_and_reduced():
    f = RationalFunction(Poly([2, 2]), Poly([6, 0, 6]))
    assert f.den.lead == 1
    assert poly_gcd(f.num, f.den).degree == 0


def test_rf_pole_error():
    with pytest.raises(PoleError):
        rf_eval_at(RationalFunction(ONE, S - 2), 2)


@pytest.mark.parametrize(
    "f,value",
    [
        (RationalFunction(S), 1),
        (RationalFunction(ONE, ONE - S), 1),
        (RationalFunction(Poly([2, -1]), (S + 1) ** 2), -5),
    ],
)
def test_rf_derivative_at_zero_examples(f, value):
    assert rf_derivative_at_zero(f) == value


def test_rf_derivative_pole_at_zero():
    with pytest.raises(PoleError):
        rf_derivative_at_zero(RationalFunction(ONE, S))


@settings(max_examples=60, deadline=None)
@given(rfs_regular_at_zero(), rfs_regular_at_zero())
def test_product_rule_at_zero(f, g):
    lhs = rf_derivative_at_zero(rf_mul(f, g))
    rhs = rf_derivative_at_zero(f) * rf_eval_at(g, 0) + rf_eval_at(f, 0) * rf_derivative_at_zero(g)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(rfs_regular_at_zero(), polys)
def test_common_factor_cancels(f, p):
    if p.is_zero():
        p = ONE
    assert RationalFunction(f.num * p, f.den * p) == f


@settings(max_examples=40, deadline=None)
@given(rfs_regular_at_zero())
def test_rf_matches_sympy(f):
    s = sympy.Symbol("s")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * s**k for k, c in enumerate(f.num.coeffs)) / sum(
        sympy.Rational(c.numerator, c.denominator) * s**k for k, c in enumerate(f.den.coeffs)
    )
    d = sympy.diff(expr, s).subs(s, 0)
    assert rf_derivative_at_zero(f) == Fraction(str(sympy.nsimplify(d)))


# truncated Laurent series --------------------------------------------------


def _rand_series(draw, trunc):
    lead = draw(st.integers(-2, 1))
    coeffs = [RationalFunction(draw(polys)) for _ in range(trunc - lead + 1)]
    return LaurentSeriesRF(lead, coeffs, trunc)


@st.composite
def series(draw):
    return _rand_series(draw, 2)


@settings(max_examples=30, deadline=None)
@given(series(), series(), series())
def test_series_ring_axioms(a, b, c):
    ab = a * b
    bc = b * c
    ab_c = ab.truncate(min(ab.trunc_order, c.trunc_order)) * c.truncate(min(ab.trunc_order, c.trunc_order))
    a_bc = a.truncate(min(a.trunc_order, bc.trunc_order)) * bc.truncate(min(a.trunc_order, bc.trunc_order))
    top = min(ab_c.trunc_order, a_bc.trunc_order)
    assert ab_c.truncate(top).coeffs == a_bc.truncate(top).coeffs
    assert (a * b).coeffs == (b * a).coeffs


def test_series_refuses_mixed_truncation():
    with pytest.raises(ValueError):
        LaurentSeriesRF.one(2) + LaurentSeriesRF.one(3)


def test_series_exp_and_inverse():
    # exp(t) via exp_linear equals the power series exp of t
    t = LaurentSeriesRF.monomial(1, 1, 6)
    e1 = t.exp()
    e2 = LaurentSeriesRF.exp_linear(1, 0, 6)
    assert e1.coeffs == e2.truncate(e1.trunc_order).coeffs
    one = e2 * e2.inverse()
    assert one.at(0) == {k: (1 if k == 0 else 0) for k in one.orders()}


# linear algebra ------------------------------------------------------------


def test_rank_basis_examples():
    assert matq_rank_basis([[0] * 3] * 4)[0] == 0
    assert matq_rank_basis([[3, 1, 1], [6, 2, 2]]) == (1, [(3, 1, 1)])
    rows = [
        [Fraction(-11, 1024), Fraction(-11, 1024), Fraction(-21, 1024)],
        [Fraction(-13, 768), Fraction(-13, 768), Fraction(-9, 256)],
    ]
    assert matq_rank_basis(rows)[0] == 2


mats = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=5)


@settings(max_examples=80, deadline=None)
@given(mats)
def test_bareiss_rank_matches_rref_and_sympy(M):
    r = matq_rank(M)
    assert r == sum(1 for row in matq_rref(M) if any(row))
    assert r == sympy.Matrix(M).rank()
    rank, basis = matq_rank_basis(M)
    assert rank == r and (r == 0 or row_space_equal(M, basis))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_det_nullspace(M, rhs):
    d = matq_det(M)
    assert d == sympy.Matrix(M).det()
    if d != 0:
        x = matq_solve(M, rhs)
        assert [sum(a * b for a, b in zip(row, x)) for row in M] == rhs
    else:
        with pytest.raises(ZeroDivisionError):
            matq_solve(M, rhs)
        null = matq_nullspace(M, 3)
        assert null and all(sum(a * b for a, b in zip(row, null[0])) == 0 for row in M)
