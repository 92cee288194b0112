from fractions import Fraction
from itertools import islice
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radix_census.config import TRIAL_DIVISION_LIMIT
from radix_census.radix_core import (
    NotCoprimeError,
    PreconditionError,
    RadixExpansion,
    ReducedFraction,
    _period_by_order,
    _period_by_recurrence,
    check_p2_propagation,
    cyclic_shift_offset,
    digits_to_text,
    discrete_log,
    euler_phi,
    expand,
    factorize,
    is_prime,
    is_primitive_root,
    long_division,
    mod_inverse,
    multiplicative_order,
    period_preperiod,
    primes_up_to,
    remainder_trace,
    rotate_left,
    text_to_digits,
)


def _period_text(num, den, base):
    return digits_to_text(expand(ReducedFraction(num, den), base).period)


def test_reduced_fraction_reduces_on_construction():
    f = ReducedFraction(6, 24)
    assert (f.numerator, f.denominator) == (1, 4)
    assert str(f) == "1/4"
    assert f.as_fraction() == Fraction(1, 4)


def test_reduced_fraction_rejects_zero_denominator():
    with pytest.raises(ValueError):
        ReducedFraction(1, 0)


@pytest.mark.parametrize(
    ("num", "den", "base", "preperiod", "period"),
    [
        (1, 5, 3, "", "0121"),
        (8, 9, 4, "", "320"),
        (1, 24, 4, "00", "2"),
        (1, 7, 10, "", "142857"),
        (1, 6, 10, "1", "6"),
    ],
)
def test_expand_known_expansions(num, den, base, preperiod, period):
    expansion = expand(ReducedFraction(num, den), base)
    assert digits_to_text(expansion.preperiod) == preperiod
    assert digits_to_text(expansion.period) == period
    assert not expansion.terminating


def test_expand_renders_preperiod_and_period():
    assert expand(ReducedFraction(1, 24), 4).render() == "0.00(2)"
    assert expand(ReducedFraction(1, 5), 3).render() == "0.(0121)"


def test_terminating_expansion_has_flag_and_unit_period_length():
    expansion = expand(ReducedFraction(1, 4), 2)
    assert expansion.terminating
    assert expansion.period == b""
    assert digits_to_text(expansion.preperiod) == "01"
    assert expansion.period_length == 1
    assert expansion.render() == "0.01"
    assert expansion.digits(5) == b"\x00\x01"


def test_expand_rejects_values_outside_unit_interval():
    with pytest.raises(PreconditionError):
        expand(ReducedFraction(3, 3), 10)
    with pytest.raises(PreconditionError):
        expand(ReducedFraction(0, 3), 10)


def test_expand_rejects_bad_base():
    with pytest.raises(ValueError):
        expand(ReducedFraction(1, 3), 1)


def test_radix_expansion_checks_digit_range():
    with pytest.raises(ValueError):
        RadixExpansion(3, b"", b"\x03")


def test_expansion_digits_repeat_the_period():
    expansion = expand(ReducedFraction(1, 24), 4)
    assert digits_to_text(expansion.digits(6)) == "002222"
    assert list(islice(expansion.iter_digits(), 4)) == [0, 0, 2, 2]


@given(
    den=st.integers(min_value=2, max_value=10_000),
    data=st.data(),
    base=st.integers(min_value=2, max_value=36),
)
def test_expansion_value_is_the_fraction(den, data, base):
    num = data.draw(st.integers(min_value=1, max_value=den - 1))
    f = ReducedFraction(num, den)
    expansion = expand(f, base)
    assert expansion.value() == f.as_fraction()
    assert (expansion.preperiod_length, expansion.period_length) == period_preperiod(f, base)


def test_period_preperiod_without_digits():
    assert period_preperiod(ReducedFraction(1, 24), 4) == (2, 1)
    assert period_preperiod(ReducedFraction(1, 7), 10) == (0, 6)
    assert period_preperiod(ReducedFraction(1, 8), 10) == (3, 1)


def test_closed_form_lengths_match_measured_lengths():
    for den in range(2, 400):
        for base in range(2, 17):
            f = ReducedFraction(1, den)
            expansion = expand(f, base)
            assert period_preperiod(f, base) == (expansion.preperiod_length, expansion.period_length)


def test_remainder_trace_records_digits_and_remainders():
    trace = remainder_trace(ReducedFraction(1, 5), 3)
    assert trace.remainders == (1, 3, 4, 2, 1)
    assert trace.digits == (0, 1, 2, 1)


def test_remainders_stay_coprime_to_the_denominator():
    for k in range(2, 100):
        for base in range(2, 17):
            if gcd(base, k) != 1:
                continue
            for a in range(1, k):
                if gcd(a, k) != 1:
                    continue
                trace = remainder_trace(ReducedFraction(a, k), base)
                assert all(gcd(r, k) == 1 for r in trace.remainders)
                assert trace.remainders[-1] == a


def test_period_strategies_agree():
    for modulus in range(2, 100):
        for base in range(2, 13):
            if gcd(base, modulus) != 1:
                continue
            for remainder in range(1, modulus):
                if gcd(remainder, modulus) == 1:
                    assert _period_by_recurrence(remainder, modulus, base) == _period_by_order(remainder, modulus, base)


@pytest.mark.parametrize(
    ("num", "den", "base", "period_length"),
    [
        (5, 7 * (2**70 - 1), 2, 210),
        (7, 3**45 - 1, 3, 45),
        (1, 10**21 - 1, 10, 21),
    ],
)
def test_expand_beyond_trial_division_is_exact(num, den, base, period_length):
    f = ReducedFraction(num, den)
    assert f.denominator >= TRIAL_DIVISION_LIMIT
    expansion = expand(f, base)
    assert expansion.preperiod == b""
    assert expansion.period_length == period_length
    assert expansion.value() == f.as_fraction()


def test_equal_remainder_classes_give_equal_digits():
    for k, base in [(7, 10), (25, 3), (49, 3), (27, 4)]:
        trace = remainder_trace(ReducedFraction(1, k), base)
        steps = list(zip(trace.remainders[1:], trace.digits))
        for r_i, q_i in steps:
            for r_j, q_j in steps:
                assert (r_i % base == r_j % base) == (q_i == q_j)


def test_long_division_streams_from_an_offset():
    digits = long_division(ReducedFraction(1, 24), 4, start=2)
    assert list(islice(digits, 3)) == [2, 2, 2]
    assert list(islice(long_division(ReducedFraction(1, 7), 10), 8)) == [1, 4, 2, 8, 5, 7, 1, 4]


def test_factorize_and_primes():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert is_prime(97)
    assert not is_prime(91)
    assert not is_prime(1)
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_factorize_rejects_numbers_beyond_trial_division():
    with pytest.raises(ValueError):
        factorize(2**64 + 1)


def test_euler_phi_values():
    assert euler_phi(1) == 1
    assert euler_phi(25) == 20
    assert euler_phi(36) == 12


def test_mod_inverse_and_non_coprime():
    assert mod_inverse(3, 7) == 5
    with pytest.raises(NotCoprimeError):
        mod_inverse(2, 4)


def test_multiplicative_order():
    assert multiplicative_order(10, 7) == 6
    assert multiplicative_order(2, 9) == 6
    assert multiplicative_order(4, 3) == 1
    with pytest.raises(NotCoprimeError):
        multiplicative_order(2, 4)


def test_primitive_roots():
    assert is_primitive_root(3, 5)
    assert is_primitive_root(3, 25)
    assert not is_primitive_root(4, 3)
    assert not is_primitive_root(5, 10)


def test_p2_propagation_holds_on_small_grid():
    for p in primes_up_to(50)[1:]:
        for b in range(2, 21):
            result = check_p2_propagation(b, p, 5)
            assert result in (True, None)
            assert (result is None) == (not is_primitive_root(b, p * p))


def test_rotate_left():
    assert rotate_left(b"\x00\x01\x02\x01", 1) == b"\x01\x02\x01\x00"
    assert rotate_left(b"\x00\x01", 4) == b"\x00\x01"
    assert rotate_left(b"", 3) == b""


def test_discrete_log():
    assert discrete_log(2, 3, 5) == 3
    assert discrete_log(1, 3, 5) == 0
    with pytest.raises(PreconditionError):
        discrete_log(3, 4, 7)


def test_cyclic_shift_offset_example():
    assert cyclic_shift_offset(2, 5, 1, 3) == 3
    assert _period_text(2, 5, 3) == "1012"


def test_cyclic_shift_holds_exhaustively_for_small_prime_powers():
    for p in primes_up_to(243)[1:]:
        m = 1
        while p**m <= 243:
            modulus = p**m
            for base in range(2, 13):
                if base % p == 0 or not (is_primitive_root(base, p) and is_primitive_root(base, p * p)):
                    continue
                one = expand(ReducedFraction(1, modulus), base).period
                for a in range(1, modulus):
                    if a % p == 0:
                        continue
                    shift = cyclic_shift_offset(a, p, m, base)
                    assert expand(ReducedFraction(a, modulus), base).period == rotate_left(one, shift)
            m += 1


def test_cyclic_shift_requires_primitive_root():
    with pytest.raises(PreconditionError):
        cyclic_shift_offset(1, 3, 2, 4)


def test_text_digits_conversion():
    assert text_to_digits("0121") == b"\x00\x01\x02\x01"
    assert digits_to_text(b"\x0a\x23") == "az"
    with pytest.raises(ValueError):
        text_to_digits("9", base=8)
