"""Exact cyclotomic integers: Z[x] reduced modulo the n-th cyclotomic polynomial."""

from __future__ import annotations

import cmath
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache

from .config import CYCLOTOMIC_MAX_ORDER

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _exact_divide(numerator: list[int], divisor: tuple[int, ...]) -> list[int]:
    """Quotient of integer polynomials (lowest degree first) by a monic divisor."""
    remainder = list(numerator)
    divisor_degree = len(divisor) - 1
    quotient = [0] * (len(remainder) - divisor_degree)
    for shift in range(len(quotient) - 1, -1, -1):
        coeff = remainder[shift + divisor_degree]
        quotient[shift] = coeff
        if coeff:
            for index, term in enumerate(divisor):
                remainder[shift + index] -= coeff * term
    if any(remainder[:divisor_degree]):
        raise RuntimeError("cyclotomic division left a remainder")
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first: x^n - 1 over the Phi_d with d | n, d < n."""
    if not 1 <= n <= CYCLOTOMIC_MAX_ORDER:
        raise ValueError(f"root order must be in [1, {CYCLOTOMIC_MAX_ORDER}], got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(coeffs: tuple[int, ...] | list[int], n: int) -> tuple[int, ...]:
    modulus = cyclotomic_polynomial(n)
    degree = len(modulus) - 1
    work = list(coeffs) + [0] * max(0, degree - len(coeffs))
    for top in range(len(work) - 1, degree - 1, -1):
        coeff = work[top]
        if coeff:
            base = top - degree
            for index, term in enumerate(modulus):
                work[base + index] -= coeff * term
    return tuple(work[:degree])


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[zeta_n] in the basis 1, zeta, ..., zeta^(phi(n)-1), zeta = e^(2 pi i/n).

    Coefficients are reduced on construction, so equality is coefficient equality.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _reduce(tuple(int(c) for c in self.coeffs), self.order))

    @classmethod
    def zero(cls, n: int) -> CyclotomicInt:
        return cls(n, ())

    @classmethod
    def one(cls, n: int) -> CyclotomicInt:
        return cls(n, (1,))

    @classmethod
    def root(cls, n: int, power: int = 1) -> CyclotomicInt:
        """zeta_n ** power."""
        return cls(n, (0,) * (power % n) + (1,))

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Mapping[int, int]) -> CyclotomicInt:
        """Sum of count * zeta_n^exponent over the mapping."""
        poly = [0] * n
        for exponent, count in counts.items():
            poly[exponent % n] += count
        return cls(n, poly)

    def _coerce(self, other) -> CyclotomicInt | None:
        if isinstance(other, CyclotomicInt):
            if other.order != self.order:
                raise ValueError(f"cannot combine orders {self.order} and {other.order}")
            return other
        if isinstance(other, int):
            return CyclotomicInt(self.order, (other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        width = max(len(self.coeffs), len(other.coeffs))
        padded = [0] * width
        for index, coeff in enumerate(self.coeffs):
            padded[index] += coeff
        for index, coeff in enumerate(other.coeffs):
            padded[index] += coeff
        return CyclotomicInt(self.order, padded)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product = [0] * max(1, len(self.coeffs) + len(other.coeffs) - 1)
        for i, left in enumerate(self.coeffs):
            if left:
                for j, right in enumerate(other.coeffs):
                    product[i + j] += left * right
        return CyclotomicInt(self.order, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CyclotomicInt:
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicInt.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        """Floating approximation for display only; never compare with it."""
        return sum(
            (coeff * cmath.exp(2j * cmath.pi * power / self.order) for power, coeff in enumerate(self.coeffs)),
            0j,
        )

    def __str__(self) -> str:
        symbol = "ζ" + str(self.order).translate(_SUBSCRIPTS)
        parts = []
        for power, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            if power == 0:
                term = str(abs(coeff))
            else:
                atom = symbol if power == 1 else f"{symbol}^{power}"
                term = atom if abs(coeff) == 1 else f"{abs(coeff)}{atom}"
            if not parts:
                parts.append(term if coeff > 0 else f"-{term}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {term}")
        return " ".join(parts) if parts else "0"
