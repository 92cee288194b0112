"""Elementary number theory and the exact base-b expansion engine.

Digit words are ``bytes`` holding digit values (not symbols), so a word for base
b has every byte below b. ``digits_to_text`` renders them with ``0-9a-z``.

The engine splits a denominator s = T*U into the part T built from primes of the
base and the part U coprime to it. The preperiod is the N-digit integer part of
a*(b^N/T)/U and the period is the purely periodic expansion of the remainder
over U, so no remainder table is ever needed.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import gmpy2

from .config import TRIAL_DIVISION_LIMIT

__all__ = [
    "NotCoprimeError",
    "PreconditionError",
    "RadixExpansion",
    "ReducedFraction",
    "RemainderTrace",
    "check_p2_propagation",
    "cyclic_shift_offset",
    "digits_to_text",
    "discrete_log",
    "euler_phi",
    "expand",
    "factorize",
    "is_prime",
    "is_primitive_root",
    "long_division",
    "mod_inverse",
    "multiplicative_order",
    "period_preperiod",
    "primes_up_to",
    "remainder_trace",
    "rotate_left",
    "text_to_digits",
]

MAX_BASE = 256  # digits are stored one per byte

_SYMBOLS = b"0123456789abcdefghijklmnopqrstuvwxyz"
_TO_SYMBOLS = bytes.maketrans(bytes(range(len(_SYMBOLS))), _SYMBOLS)
_FROM_SYMBOLS = bytes.maketrans(_SYMBOLS, bytes(range(len(_SYMBOLS))))


class NotCoprimeError(ValueError):
    """An inverse or multiplicative order was requested for non-coprime arguments."""


class PreconditionError(ValueError):
    """The arguments violate an operation's stated precondition."""


@dataclass(frozen=True)
class ReducedFraction:
    """A nonnegative rational a/k, reduced to lowest terms on construction."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError(f"denominator must be positive, got {self.denominator}")
        if self.numerator < 0:
            raise ValueError(f"numerator must be nonnegative, got {self.numerator}")
        g = gcd(self.numerator, self.denominator)
        if g > 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def from_fraction(cls, value: Fraction) -> ReducedFraction:
        return cls(value.numerator, value.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class RadixExpansion:
    """Preperiod followed by an infinitely repeated period, both as digit words.

    A terminating expansion has an empty period and ``terminating`` set.
    """

    base: int
    preperiod: bytes
    period: bytes
    terminating: bool = False

    def __post_init__(self):
        _check_base(self.base)
        if self.terminating != (not self.period):
            raise ValueError("an expansion has an empty period exactly when it terminates")
        for word in (self.preperiod, self.period):
            if word and max(word) >= self.base:
                raise ValueError(f"digit out of range for base {self.base}")

    @property
    def preperiod_length(self) -> int:
        return len(self.preperiod)

    @property
    def period_length(self) -> int:
        # a terminating expansion repeats "0", and ord_1(b) = 1
        return 1 if self.terminating else len(self.period)

    def value(self) -> Fraction:
        """The exact rational this expansion denotes."""
        head = Fraction(_digits_to_int(self.preperiod, self.base))
        if not self.terminating:
            cycle = _digits_to_int(self.period, self.base)
            head += Fraction(cycle, self.base ** len(self.period) - 1)
        return head / self.base ** len(self.preperiod)

    def iter_digits(self) -> Iterator[int]:
        yield from self.preperiod
        if self.terminating:
            return
        while True:
            yield from self.period

    def digits(self, count: int) -> bytes:
        """The first ``count`` digits (fewer only when the expansion terminates)."""
        head = self.preperiod[:count]
        missing = count - len(head)
        if missing <= 0 or self.terminating:
            return head
        repeats = -(-missing // len(self.period))
        return head + (self.period * repeats)[:missing]

    def render(self) -> str:
        text = "0." + digits_to_text(self.preperiod)
        if not self.terminating:
            text += f"({digits_to_text(self.period)})"
        return text


@dataclass(frozen=True)
class RemainderTrace:
    """Remainders r_0 = a, r_1, ... of the division recurrence r_{j-1}*b = q_j*k + r_j."""

    modulus: int
    remainders: tuple[int, ...]
    digits: tuple[int, ...]  # digits[j-1] is q_j


def digits_to_text(digits: bytes) -> str:
    if digits and max(digits) >= len(_SYMBOLS):
        raise ValueError(f"digits above {len(_SYMBOLS) - 1} have no symbol")
    return digits.translate(_TO_SYMBOLS).decode("ascii")


def text_to_digits(text: str, base: int | None = None) -> bytes:
    digits = text.strip().lower().encode("ascii").translate(_FROM_SYMBOLS)
    limit = base if base is not None else len(_SYMBOLS)
    if digits and max(digits) >= limit:
        raise ValueError(f"{text!r} is not a digit string for base {limit}")
    return digits


def _digits_to_int(digits: bytes, base: int) -> int:
    if not digits:
        return 0
    if base <= len(_SYMBOLS):
        return int(gmpy2.mpz(digits_to_text(digits), base))
    value = 0
    for digit in digits:
        value = value * base + digit
    return value


def _int_to_digits(value: int, base: int, width: int) -> bytes:
    """Base-b digits of ``value``, left-padded with zeros to ``width``."""
    if width == 0:
        return b""
    if base <= len(_SYMBOLS):
        return text_to_digits(gmpy2.digits(value, base).zfill(width))
    out = bytearray(width)
    for position in range(width - 1, -1, -1):
        value, out[position] = divmod(value, base)
    return bytes(out)


def _check_base(base: int) -> None:
    if not 2 <= base <= MAX_BASE:
        raise ValueError(f"base must be in [2, {MAX_BASE}], got {base}")


def _check_unit_interval(f: ReducedFraction) -> None:
    if not 0 < f.numerator < f.denominator:
        raise PreconditionError(f"{f} is not strictly between 0 and 1")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...) by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n >= TRIAL_DIVISION_LIMIT:
        raise ValueError(f"{n} is beyond the trial-division range")
    factors = []
    remaining = n
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            exponent = 0
            while remaining % p == 0:
                remaining //= p
                exponent += 1
            factors.append((p, exponent))
        p += 1 if p == 2 else 2
    if remaining > 1:
        factors.append((remaining, 1))
    return tuple(factors)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [n for n, flag in enumerate(sieve) if flag]


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi is defined for n >= 1, got {n}")
    result = 1
    for p, exponent in factorize(n):
        result *= (p - 1) * p ** (exponent - 1)
    return result


def mod_inverse(a: int, m: int) -> int:
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotCoprimeError(f"{a} has no inverse modulo {m}") from None


def multiplicative_order(b: int, n: int) -> int:
    """Smallest t >= 1 with b^t = 1 (mod n), found among the divisors of phi(n)."""
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    if gcd(b, n) != 1:
        raise NotCoprimeError(f"order of {b} modulo {n} is undefined (not coprime)")
    order = euler_phi(n)
    for p, _ in factorize(order):
        while order % p == 0 and pow(b, order // p, n) == 1:
            order //= p
    return order


def is_primitive_root(b: int, n: int) -> bool:
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    return gcd(b, n) == 1 and multiplicative_order(b, n) == euler_phi(n)


def check_p2_propagation(b: int, p: int, k_max: int) -> bool | None:
    """Whether a primitive root of p^2 stays primitive modulo p^k for 2 <= k <= k_max.

    Returns None when b is not a primitive root of p^2 (nothing to propagate).
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    if not is_primitive_root(b, p * p):
        return None
    return all(is_primitive_root(b, p**k) for k in range(2, k_max + 1))


def _split_denominator(s: int, base: int) -> tuple[int, int, int]:
    """(N, T, U): s = T*U, primes of T divide base, gcd(U, base) = 1, N least with T | base^N."""
    cycle_part = gmpy2.mpz(s)
    preperiod_length = 0
    for p, multiplicity in factorize(base):
        cycle_part, exponent = gmpy2.remove(cycle_part, p)
        preperiod_length = max(preperiod_length, -(-exponent // multiplicity))
    cycle_modulus = int(cycle_part)
    return preperiod_length, s // cycle_modulus, cycle_modulus


def period_preperiod(f: ReducedFraction, base: int) -> tuple[int, int]:
    """(preperiod length N, period length L) without generating any digit."""
    _check_base(base)
    _check_unit_interval(f)
    preperiod_length, _, cycle_modulus = _split_denominator(f.denominator, base)
    if cycle_modulus == 1:
        return preperiod_length, 1
    return preperiod_length, multiplicative_order(base, cycle_modulus)


def _period_by_order(remainder: int, modulus: int, base: int) -> bytes:
    # r/U = 0.(w) means r*b^L/U = w + r/U, so w is the integer part
    length = multiplicative_order(base, modulus)
    return _int_to_digits(remainder * base**length // modulus, base, length)


def _period_by_recurrence(remainder: int, modulus: int, base: int) -> bytes:
    start = remainder
    digits = bytearray()
    while True:
        digit, remainder = divmod(remainder * base, modulus)
        digits.append(digit)
        if remainder == start:
            return bytes(digits)


def expand(f: ReducedFraction, base: int) -> RadixExpansion:
    """Exact base-b expansion of 0 < f < 1 with minimal preperiod and period."""
    _check_base(base)
    _check_unit_interval(f)
    preperiod_length, head_divisor, cycle_modulus = _split_denominator(f.denominator, base)
    scaled = f.numerator * (base**preperiod_length // head_divisor)
    head, remainder = divmod(scaled, cycle_modulus)
    preperiod = _int_to_digits(head, base, preperiod_length)
    if remainder == 0:
        return RadixExpansion(base, preperiod, b"", terminating=True)
    if cycle_modulus < TRIAL_DIVISION_LIMIT:
        period = _period_by_order(remainder, cycle_modulus, base)
    else:
        period = _period_by_recurrence(remainder, cycle_modulus, base)
    return RadixExpansion(base, preperiod, period)


def remainder_trace(f: ReducedFraction, base: int, steps: int | None = None) -> RemainderTrace:
    """Run the division recurrence; by default through one preperiod plus one period."""
    _check_base(base)
    _check_unit_interval(f)
    if steps is None:
        preperiod_length, period_length = period_preperiod(f, base)
        steps = preperiod_length + period_length
    modulus = f.denominator
    remainder = f.numerator
    remainders = [remainder]
    digits = []
    for _ in range(steps):
        digit, remainder = divmod(remainder * base, modulus)
        digits.append(digit)
        remainders.append(remainder)
    return RemainderTrace(modulus, tuple(remainders), tuple(digits))


def long_division(f: ReducedFraction, base: int, start: int = 0) -> Iterator[int]:
    """Digits of f from position start+1 on, carrying one unbounded remainder."""
    _check_base(base)
    _check_unit_interval(f)
    modulus = f.denominator
    remainder = f.numerator * pow(base, start, modulus) % modulus
    while True:
        digit, remainder = divmod(remainder * base, modulus)
        yield digit


def rotate_left(word: bytes, shift: int) -> bytes:
    if not word:
        return word
    shift %= len(word)
    return word[shift:] + word[:shift]


def discrete_log(a: int, base: int, modulus: int) -> int:
    """Least t >= 0 with base^t = a (mod modulus), by walking the orbit of base."""
    target = a % modulus
    power = 1 % modulus
    for exponent in range(multiplicative_order(base, modulus)):
        if power == target:
            return exponent
        power = power * base % modulus
    raise PreconditionError(f"{a} is not a power of {base} modulo {modulus}")


def cyclic_shift_offset(a: int, p: int, m: int, base: int) -> int:
    """Rotation t taking the period of 1/p^m to the period of a/p^m.

    The remainders of a/p^m are a*b^i, so with a = b^t they are those of 1/p^m
    advanced by t places.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    modulus = p**m
    if a % p == 0 or not 0 < a < modulus:
        raise PreconditionError(f"need gcd(a, p) = 1 and 0 < a < {modulus}, got a = {a}")
    if not (is_primitive_root(base, p) and is_primitive_root(base, p * p)):
        raise PreconditionError(f"{base} is not a primitive root of {p} and {p}^2")
    shift = discrete_log(a, base, modulus)
    rotated = rotate_left(expand(ReducedFraction(1, modulus), base).period, shift)
    if expand(ReducedFraction(a, modulus), base).period != rotated:
        raise RuntimeError(f"period of {a}/{modulus} is not the period of 1/{modulus} rotated by {shift}")
    return shift
