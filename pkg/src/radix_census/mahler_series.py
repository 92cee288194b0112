"""Sparse truncated power series over Q and the functional equation of F_c.

F_c(x) = sum_{n>=1} x^(c^n)/c^n satisfies F_c(x^c) = c F_c(x) - x^c.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of x^e for e <= degree; absent exponents are zero.

    Terms beyond the degree bound are dropped on construction.
    """

    degree: int
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree bound must be nonnegative, got {self.degree}")
        cleaned = {}
        for exponent, coeff in sorted(self.coeffs.items()):
            if exponent < 0:
                raise ValueError(f"negative exponent {exponent}")
            value = Fraction(coeff)
            if exponent <= self.degree and value:
                cleaned[exponent] = value
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def zero(cls, degree: int) -> TruncatedSeries:
        return cls(degree, {})

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational | int, degree: int) -> TruncatedSeries:
        return cls(degree, {exponent: Fraction(coeff)})

    def _check_compatible(self, other: TruncatedSeries) -> None:
        if other.degree != self.degree:
            raise ValueError(f"degree bounds differ: {self.degree} and {other.degree}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        total = dict(self.coeffs)
        for exponent, coeff in other.coeffs.items():
            total[exponent] = total.get(exponent, Fraction(0)) + coeff
        return TruncatedSeries(self.degree, total)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Rational | int) -> TruncatedSeries:
        factor = Fraction(factor)
        return TruncatedSeries(self.degree, {e: c * factor for e, c in self.coeffs.items()})

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def coefficient(self, exponent: int) -> Fraction:
        return self.coeffs.get(exponent, Fraction(0))

    def terms(self) -> list[tuple[int, Fraction]]:
        return list(self.coeffs.items())

    def first_nonzero(self) -> tuple[int, Fraction] | None:
        return next(iter(self.coeffs.items()), None)

    def is_zero(self) -> bool:
        return not self.coeffs


def f_c_series(c: int, degree: int) -> TruncatedSeries:
    if c < 2:
        raise ValueError(f"c must be at least 2, got {c}")
    if degree < 0:
        raise ValueError(f"degree bound must be nonnegative, got {degree}")
    coeffs = {}
    exponent, n = c, 1
    while exponent <= degree:
        coeffs[exponent] = Fraction(1, c**n)
        exponent *= c
        n += 1
    return TruncatedSeries(degree, coeffs)


def substitute_power(series: TruncatedSeries, c: int) -> TruncatedSeries:
    """x -> x^c, keeping the degree bound."""
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")
    return TruncatedSeries(series.degree, {c * e: coeff for e, coeff in series.coeffs.items()})


def functional_residual(c: int, degree: int) -> TruncatedSeries:
    """F_c(x^c) - c F_c(x) + x^c through x^degree."""
    if degree < c:
        raise ValueError(f"degree bound {degree} is below c={c}")
    series = f_c_series(c, degree)
    return substitute_power(series, c) - series.scale(c) + TruncatedSeries.monomial(c, 1, degree)
