"""Digit censuses of periods: closed-form residue-class counts and orbit walks.

For 1/k in base b with gcd(k, b) = 1, the digit q_i and remainder r_i satisfy
q_i = -r_i * k^-1 (mod b), so counting digits is counting remainders by class.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from math import gcd, lcm

from .cyclotomic import CyclotomicInt
from .radix_core import (
    NotCoprimeError,
    PreconditionError,
    euler_phi,
    is_prime,
    is_primitive_root,
    mod_inverse,
    multiplicative_order,
)


class FormulaInapplicableError(PreconditionError):
    """The closed-form census needs b to be a primitive root of p and p^2."""


@dataclass(frozen=True)
class DigitCensus:
    """Digit occurrence counts over one minimal period; only nonzero counts are kept."""

    base: int
    counts: Mapping[int, int]
    period_length: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be at least 2, got {self.base}")
        if self.period_length < 1:
            raise ValueError(f"period_length must be positive, got {self.period_length}")
        cleaned = {}
        for digit, count in sorted(self.counts.items()):
            if not 0 <= digit < self.base:
                raise ValueError(f"digit {digit} out of range for base {self.base}")
            if count < 0:
                raise ValueError(f"negative count for digit {digit}")
            if count:
                cleaned[digit] = count
        if sum(cleaned.values()) != self.period_length:
            raise ValueError(
                f"counts sum to {sum(cleaned.values())}, expected period_length {self.period_length}"
            )
        object.__setattr__(self, "counts", cleaned)

    def count(self, digit: int) -> int:
        return self.counts.get(digit, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __str__(self) -> str:
        return "{" + ",".join(f"{digit}:{count}" for digit, count in self.counts.items()) + "}"


@dataclass(frozen=True)
class CongruenceSpec:
    """Integers x in [1, bound] with x = residue (mod modulus), filtered by constraints.

    Each constraint is (m, allowed): x mod m must lie in ``allowed``.
    """

    bound: int
    modulus: int
    residue: int
    constraints: tuple[tuple[int, frozenset[int]], ...] = field(default=())

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError(f"bound must be nonnegative, got {self.bound}")
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)
        reduced = []
        for constraint_modulus, allowed in self.constraints:
            if constraint_modulus < 1:
                raise ValueError(f"constraint modulus must be positive, got {constraint_modulus}")
            reduced.append((constraint_modulus, frozenset(r % constraint_modulus for r in allowed)))
        object.__setattr__(self, "constraints", tuple(reduced))

    @staticmethod
    def coprime_to(p: int) -> tuple[int, frozenset[int]]:
        """Constraint excluding the multiples of p."""
        if p < 2:
            raise ValueError(f"p must be at least 2, got {p}")
        return p, frozenset(range(1, p))


def digit_for_residue(j: int, k: int, b: int) -> int:
    if b < 2 or k < 2:
        raise ValueError(f"need k, b >= 2, got k={k}, b={b}")
    if gcd(k, b) != 1:
        raise NotCoprimeError(f"digit is undefined: gcd({k}, {b}) != 1")
    return -j * mod_inverse(k % b, b) % b


def residue_for_digit(d: int, k: int, b: int) -> int:
    if b < 2 or k < 2:
        raise ValueError(f"need k, b >= 2, got k={k}, b={b}")
    if gcd(k, b) != 1:
        raise NotCoprimeError(f"residue is undefined: gcd({k}, {b}) != 1")
    return -d * k % b


def _count_congruent(bound: int, residue: int, modulus: int) -> int:
    """#{1 <= x <= bound : x = residue (mod modulus)} for 0 <= residue < modulus."""
    first = residue or modulus
    return 0 if first > bound else (bound - first) // modulus + 1


def count_in_class(spec: CongruenceSpec) -> int:
    """Count by enumerating residue classes modulo the lcm of all moduli."""
    period = lcm(spec.modulus, *(m for m, _ in spec.constraints))
    total = 0
    for residue in range(spec.residue, period, spec.modulus):
        if all(residue % m in allowed for m, allowed in spec.constraints):
            total += _count_congruent(spec.bound, residue, period)
    return total


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def zero_count_formula(p: int, m: int, b: int) -> int:
    """Zeros in one period of 1/p^m when b is a primitive root of p and p^2."""
    return p**m // b - p ** (m - 1) // b


def census_closed_form(p: int, m: int, b: int) -> DigitCensus:
    """Census of the period of any a/p^m, counted over {i <= p^m : gcd(i, p) = 1}."""
    _check_odd_prime(p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if b < 2:
        raise ValueError(f"base must be at least 2, got {b}")
    if b % p == 0 or not (is_primitive_root(b, p) and is_primitive_root(b, p * p)):
        raise FormulaInapplicableError(f"formula inapplicable: {b} is not a primitive root of {p} and {p}^2")
    modulus = p**m
    exclusion = (CongruenceSpec.coprime_to(p),)
    counts = {
        digit: count_in_class(CongruenceSpec(modulus, b, residue_for_digit(digit, modulus, b), exclusion))
        for digit in range(b)
    }
    return DigitCensus(b, counts, euler_phi(modulus))


def orbit_census(a: int, p: int, m: int, b: int) -> DigitCensus:
    """Census of the period of a/p^m by walking the remainder orbit r -> r*b."""
    _check_odd_prime(p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if a % p == 0 or b % p == 0:
        raise PreconditionError(f"need gcd(a, p) = gcd(b, p) = 1, got a={a}, b={b}, p={p}")
    modulus = p**m
    digit_of = [digit_for_residue(j, modulus, b) for j in range(b)]
    start = a % modulus
    counts: Counter[int] = Counter()
    remainder = start
    length = 0
    while True:
        remainder = remainder * b % modulus
        counts[digit_of[remainder % b]] += 1
        length += 1
        if remainder == start:
            break
    if length != multiplicative_order(b, modulus):
        raise RuntimeError(f"orbit of {a} modulo {modulus} has length {length}, not the order of {b}")
    return DigitCensus(b, counts, length)


def census_of_digits(digits: bytes, base: int) -> DigitCensus:
    return DigitCensus(base, {digit: digits.count(digit) for digit in set(digits)}, len(digits))


def exp_sum(values: bytes | Sequence[int] | DigitCensus, root_order: int) -> CyclotomicInt:
    """Sum of zeta_n^d over the digits, or of count_d * zeta_n^d over a census."""
    if isinstance(values, DigitCensus):
        counts: Mapping[int, int] = values.counts
    elif isinstance(values, (bytes, bytearray)):
        counts = {digit: values.count(digit) for digit in set(values)}
    else:
        counts = Counter(values)
    return CyclotomicInt.from_exponent_counts(root_order, counts)
