from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wflag.ratfun import (
    DomainError,
    P_ONE,
    P_ZERO,
    RationalFunction,
    T,
    TruncatedSeries,
    UniPolynomial,
    poly_gcd,
    poly_xgcd,
    series_of,
)


def monomial_counts(weights: tuple[int, ...], order: int) -> list[int]:
    """Independent oracle: number of monomials of each weighted degree.

    Standard coin-counting DP, no polynomial arithmetic involved.
    """
    dp = [1] + [0] * order
    for w in weights:
        for n in range(w, order + 1):
            dp[n] += dp[n - w]
    return dp


def test_monomial_count_oracle_agrees_with_brute_force():
    # sanity-check the oracle itself on a tiny case by direct enumeration
    weights = (1, 1, 2)
    order = 8
    direct = [0] * (order + 1)
    for exps in itertools.product(range(order + 1), repeat=len(weights)):
        d = sum(e * w for e, w in zip(exps, weights))
        if d <= order:
            direct[d] += 1
    assert monomial_counts(weights, order) == direct


def test_series_of_weighted_projective_space():
    weights = (1, 1, 1, 1, 2)
    f = RationalFunction.from_quotient_weights([], weights)
    s = series_of(f, 20)
    assert [s[i] for i in range(21)] == monomial_counts(weights, 20)


def test_series_of_hypersurface():
    # (1 - t^7) / ((1-t)^4 (1-t^2))
    weights = (1, 1, 1, 1, 2)
    f = RationalFunction.from_quotient_weights([7], weights)
    s = series_of(f, 20)
    dp = monomial_counts(weights, 20)
    expect = [dp[n] - (dp[n - 7] if n >= 7 else 0) for n in range(21)]
    assert list(s.coefficients) == expect
    assert [s[0], s[1], s[2]] == [1, 4, 11]


def test_series_pole_at_origin():
    with pytest.raises(DomainError, match="pole at t=0"):
        series_of(RationalFunction(P_ONE, T), 5)
    # a removable factor of t must not trigger the pole error
    s = series_of(RationalFunction(T, T * (1 - T)), 3)
    assert list(s.coefficients) == [1, 1, 1, 1]


def test_evaluate():
    f = RationalFunction.from_quotient_weights([7], (1, 1, 1, 1, 2))
    assert f.evaluate(2) == Fraction(127, 3)
    with pytest.raises(DomainError, match="pole at evaluation point"):
        f.evaluate(1)
    assert f.evaluate(0) == 1


def test_canonical_form_and_equality():
    a = RationalFunction(UniPolynomial([2, 0, -2]), UniPolynomial([2, -2]))
    b = RationalFunction(UniPolynomial([1, 1]))
    assert a == b
    assert hash(a) == hash(b)
    assert a.den == P_ONE
    # denominator is monic after canonicalization
    c = RationalFunction(P_ONE, UniPolynomial([2, 4]))
    assert c.den.leading == 1
    assert c.num == UniPolynomial([Fraction(1, 4)])


def test_field_operations():
    one_minus_t = UniPolynomial([1, -1])
    f = RationalFunction(P_ONE, one_minus_t)
    g = RationalFunction(T, one_minus_t)
    assert f - g == RationalFunction(P_ONE)
    assert f + g == RationalFunction(UniPolynomial([1, 1]), one_minus_t)
    assert (f * g).den == UniPolynomial([1, -1]) ** 2
    assert f / f == RationalFunction(P_ONE)
    assert -f + f == RationalFunction(P_ZERO)
    assert bool(f) and not bool(f - f)


def test_xgcd_golden():
    a = UniPolynomial([1, 0, -1])  # 1 - t^2
    b = UniPolynomial([1, -1])  # 1 - t
    g, alpha, beta = poly_xgcd(a, b)
    assert g == UniPolynomial([-1, 1])  # monic gcd is t - 1
    assert alpha == P_ZERO
    assert beta == UniPolynomial([-1])
    assert alpha * a + beta * b == g


small_polys = st.builds(
    UniPolynomial,
    st.lists(st.integers(min_value=-5, max_value=5), min_size=0, max_size=7),
)


def naive_gcd(a: UniPolynomial, b: UniPolynomial) -> UniPolynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@settings(max_examples=80)
@given(small_polys, small_polys)
def test_poly_gcd_matches_naive_euclid(a, b):
    if a.is_zero() and b.is_zero():
        assert poly_gcd(a, b).is_zero()
        return
    assert poly_gcd(a, b) == naive_gcd(a, b)


@settings(max_examples=80)
@given(small_polys, small_polys)
def test_xgcd_properties(a, b):
    if a.is_zero() and b.is_zero():
        with pytest.raises(DomainError):
            poly_xgcd(a, b)
        return
    g, alpha, beta = poly_xgcd(a, b)
    assert alpha * a + beta * b == g
    assert g == poly_gcd(a, b)
    assert g.leading == 1
    assert (a % g).is_zero() and (b % g).is_zero()
    if not b.is_zero():
        b_red_deg = b.degree - g.degree
        if b_red_deg > 0:
            assert alpha.degree < b_red_deg
        else:
            assert alpha.is_zero()
    if not a.is_zero() and not b.is_zero():
        a_red_deg = a.degree - g.degree
        if a_red_deg > 0 and b.degree - g.degree > 0:
            assert beta.degree < a_red_deg


@settings(max_examples=60)
@given(small_polys, small_polys, small_polys)
def test_divmod_is_division_with_remainder(a, b, c):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree
    # exactness detection
    assert ((a * b).exact_div(b)) == a


def test_exact_div_rejects_inexact():
    with pytest.raises(ValueError, match="not exact"):
        UniPolynomial([1, 1]).exact_div(UniPolynomial([0, 1]))


def test_reciprocal():
    p = UniPolynomial([1, 2, 3])
    assert p.reciprocal() == UniPolynomial([3, 2, 1])
    assert p.reciprocal(4) == UniPolynomial([0, 0, 3, 2, 1])
    with pytest.raises(ValueError):
        p.reciprocal(1)


def test_truncated_series_bounds():
    s = TruncatedSeries([1, 2, 3])
    assert s.order == 2 and len(s) == 3
    with pytest.raises(IndexError):
        s[3]


def test_polynomial_basics():
    p = UniPolynomial([0, 0, 5, 0])
    assert p.degree == 2 and p.valuation() == 2
    assert UniPolynomial().degree == -1
    assert UniPolynomial.one_minus_t_pow(3) == UniPolynomial([1, 0, 0, -1])
    assert (T**3).coeffs == (0, 0, 0, 1)
    assert str(UniPolynomial([1, -1])) == "1 - t"
    assert p.shift(2) == UniPolynomial([0, 0, 0, 0, 5])
    assert p.evaluate(Fraction(1, 2)) == Fraction(5, 4)
