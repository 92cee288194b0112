from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radix_census.mahler_series import (
    TruncatedSeries,
    f_c_series,
    functional_residual,
    substitute_power,
)


def test_series_drops_zero_and_out_of_range_terms():
    series = TruncatedSeries(5, {7: 1, 2: 0, 3: Fraction(1, 2), 1: 2})
    assert series.terms() == [(1, Fraction(2)), (3, Fraction(1, 2))]
    assert series.coefficient(2) == 0
    assert series.first_nonzero() == (1, Fraction(2))


def test_series_rejects_negative_bounds_and_exponents():
    with pytest.raises(ValueError):
        TruncatedSeries(-1, {})
    with pytest.raises(ValueError):
        TruncatedSeries(3, {-1: 1})


def test_series_arithmetic():
    x = TruncatedSeries.monomial(1, 1, 4)
    y = TruncatedSeries(4, {1: Fraction(1, 3), 2: 1})
    assert (x + y).terms() == [(1, Fraction(4, 3)), (2, Fraction(1))]
    assert (x - x).is_zero()
    assert (y * 3).terms() == [(1, Fraction(1)), (2, Fraction(3))]
    assert (Fraction(1, 2) * y).coefficient(2) == Fraction(1, 2)
    assert TruncatedSeries.zero(4).first_nonzero() is None


def test_series_with_different_bounds_do_not_mix():
    with pytest.raises(ValueError):
        TruncatedSeries.zero(3) + TruncatedSeries.zero(4)


def test_f_c_series_coefficients():
    series = f_c_series(3, 100)
    assert series.terms() == [(3, Fraction(1, 3)), (9, Fraction(1, 9)), (27, Fraction(1, 27)), (81, Fraction(1, 81))]
    assert f_c_series(2, 1).is_zero()


def test_substitute_power_respects_the_bound():
    series = f_c_series(2, 20)
    assert substitute_power(series, 2).terms() == [(4, Fraction(1, 2)), (8, Fraction(1, 4)), (16, Fraction(1, 8))]


@pytest.mark.parametrize("c", [2, 3, 4, 5, 7, 10])
@pytest.mark.parametrize("degree", [10, 100, 1000])
def test_functional_equation_holds(c, degree):
    residual = functional_residual(c, degree)
    assert residual.is_zero()
    assert residual.first_nonzero() is None


def test_dropping_the_correction_term_leaves_x_to_the_c():
    series = f_c_series(3, 50)
    residual = substitute_power(series, 3) - series.scale(3)
    assert residual.terms() == [(3, Fraction(-1))]


def test_residual_needs_degree_at_least_c():
    with pytest.raises(ValueError):
        functional_residual(5, 4)
    with pytest.raises(ValueError):
        f_c_series(1, 10)


@pytest.mark.parametrize("c", [2, 3, 5, 7])
def test_functional_equation_holds_through_fifth_power(c):
    assert functional_residual(c, c**5).is_zero()


_fractions = st.fractions(min_value=-10, max_value=10, max_denominator=30)


def _sparse_series(data, degree):
    coeffs = data.draw(st.dictionaries(st.integers(min_value=0, max_value=degree), _fractions, max_size=20))
    return TruncatedSeries(degree, coeffs)


@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=7), _fractions, st.data())
def test_series_arithmetic_laws(degree, c, factor, data):
    x, y, z = (_sparse_series(data, degree) for _ in range(3))
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert (x + y).scale(factor) == x.scale(factor) + y.scale(factor)
    assert substitute_power(x + y, c) == substitute_power(x, c) + substitute_power(y, c)
    assert (x - x).is_zero()
