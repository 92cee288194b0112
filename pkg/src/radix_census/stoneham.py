"""Digits of the Stoneham numbers alpha_{b,c} = sum_{n>=1} 1/(c^n b^(c^n)).

Two ways to produce a digit:

- fast: for prime c the base-b expansion is c zeros followed, for each m, by
  the period w_m of ((c^m-1)/(c-1))/c^m repeated over positions c^m+1..c^(m+1).
  In base 4 (b=2, 2 a primitive root of c and c^2) positions
  (c^m+1)/2+1..(c^(m+1)+1)/2 are tiled by the base-4 period of twice that
  fraction, after (c+1)/2 leading zeros.
- oracle: long division of a partial sum, trusted only up to its stability index.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import islice
from math import gcd

from .config import STREAM_CHUNK_DIGITS
from .radix_core import (
    PreconditionError,
    ReducedFraction,
    expand,
    is_prime,
    is_primitive_root,
    long_division,
    multiplicative_order,
    rotate_left,
)

_SEGMENT_BYTES = 4096


class Radix(Enum):
    BASE = "b"
    SQUARE = "b2"


@dataclass(frozen=True)
class StonehamSpec:
    b: int
    c: int

    def __post_init__(self):
        if self.b < 2 or self.c < 2:
            raise ValueError(f"b and c must be at least 2, got b={self.b}, c={self.c}")
        if gcd(self.b, self.c) != 1:
            raise ValueError(f"b={self.b} and c={self.c} must be coprime")

    def radix_base(self, radix: Radix) -> int:
        return self.b if radix is Radix.BASE else self.b * self.b

    def __str__(self) -> str:
        return f"alpha_{{{self.b},{self.c}}}"


def partial_sum(spec: StonehamSpec, m: int) -> ReducedFraction:
    """sum_{n=1}^{m} 1/(c^n b^(c^n)) over the common denominator c^m b^(c^m)."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    b, c = spec.b, spec.c
    top = c**m
    numerator = sum(c ** (m - n) * b ** (top - c**n) for n in range(1, m + 1))
    fraction = ReducedFraction(numerator, c**m * b**top)
    if gcd(fraction.numerator, b * c) != 1:
        raise RuntimeError(f"partial sum {m} of {spec} has a numerator sharing factors with {b * c}")
    return fraction


def stability_index(spec: StonehamSpec, m: int, radix: Radix = Radix.BASE) -> int:
    """Last position whose digit, computed from partial_sum(spec, m), is final."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    reach = spec.c ** (m + 1)
    if radix is Radix.BASE:
        return reach
    # with b < c the next term starts past base-b position c^(m+1)+1, so the base-b^2
    # digit covering positions c^(m+1) and c^(m+1)+1 is already final
    return -(-reach // 2) if spec.b < spec.c else reach // 2


def fast_path_available(spec: StonehamSpec, radix: Radix = Radix.BASE) -> bool:
    if not is_prime(spec.c):
        return False
    if radix is Radix.BASE:
        return True
    return spec.b == 2 and spec.c != 2 and is_primitive_root(2, spec.c * spec.c)


def _zero_prefix_length(spec: StonehamSpec, radix: Radix) -> int:
    return spec.c if radix is Radix.BASE else (spec.c + 1) // 2


def prefix_is_zero_bound(spec: StonehamSpec, radix: Radix = Radix.BASE) -> bool:
    """Exact check that alpha sits below one unit in the last all-zero place.

    alpha < 1/(c b^c) + 1/b^(c^2), the first term plus a bound on the tail.
    """
    b, c = spec.b, spec.c
    upper = Fraction(1, c * b**c) + Fraction(1, b ** (c * c))
    places = _zero_prefix_length(spec, radix)
    return upper < Fraction(1, spec.radix_base(radix) ** places)


def _check_block_prime(b: int, p: int, m: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if b % p == 0:
        raise ValueError(f"p={p} must not divide b={b}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")


def _check_square_prime(p: int, m: int) -> None:
    _check_block_prime(2, p, m)
    if p == 2:
        raise ValueError("p must be an odd prime")
    if not is_primitive_root(2, p * p):
        raise PreconditionError(f"2 is not a primitive root of {p} and {p}^2")


def _block_fraction(p: int, m: int, scale: int = 1) -> ReducedFraction:
    return ReducedFraction(scale * (p**m - 1) // (p - 1), p**m)


@lru_cache(maxsize=256)
def block_word(b: int, p: int, m: int) -> bytes:
    """Minimal base-b period of ((p^m-1)/(p-1))/p^m."""
    _check_block_prime(b, p, m)
    return expand(_block_fraction(p, m), b).period


@lru_cache(maxsize=256)
def block_word_sq(p: int, m: int) -> bytes:
    """Base-4 period of ((p^m-1)/(p-1))/p^m, of length phi(p^m)/2."""
    _check_square_prime(p, m)
    return expand(_block_fraction(p, m), 4).period


@lru_cache(maxsize=256)
def square_stream_block(p: int, m: int) -> bytes:
    """Base-4 word tiling level m of the base-4 stream: the period of twice the block fraction."""
    _check_square_prime(p, m)
    return expand(_block_fraction(p, m, scale=2), 4).period


def pair_digits(binary: bytes) -> bytes:
    """Regroup binary digits in pairs: d = 2a + a'."""
    if len(binary) % 2:
        raise ValueError("pairing needs an even number of binary digits")
    return bytes(2 * high + low for high, low in zip(binary[0::2], binary[1::2]))


@dataclass(frozen=True)
class BlockLevel:
    m: int
    word: bytes
    repetitions: int
    start: int  # 1-based, inclusive
    end: int

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class BlockDecomposition:
    spec: StonehamSpec
    radix: Radix
    prefix: bytes
    levels: tuple[BlockLevel, ...]

    @property
    def p(self) -> int:
        return self.spec.c

    @property
    def base(self) -> int:
        return self.spec.radix_base(self.radix)

    @property
    def end(self) -> int:
        return self.levels[-1].end if self.levels else len(self.prefix)

    def digits(self) -> bytes:
        return self.prefix + b"".join(level.word * level.repetitions for level in self.levels)


def _level(spec: StonehamSpec, radix: Radix, m: int) -> BlockLevel:
    p = spec.c
    if radix is Radix.BASE:
        word = block_word(spec.b, p, m)
        start, end = p**m + 1, p ** (m + 1)
    else:
        word = square_stream_block(p, m)
        start, end = (p**m + 1) // 2 + 1, (p ** (m + 1) + 1) // 2
    span = end - start + 1
    if span % len(word):
        raise RuntimeError(f"level {m} of {spec}: word length {len(word)} does not divide {span}")
    return BlockLevel(m, word, span // len(word), start, end)


def block_decomposition(spec: StonehamSpec, levels: int, radix: Radix = Radix.BASE) -> BlockDecomposition:
    if not fast_path_available(spec, radix):
        raise PreconditionError(f"no block structure is known for {spec} in radix {radix.value}")
    if levels < 0:
        raise ValueError(f"levels must be nonnegative, got {levels}")
    return BlockDecomposition(
        spec,
        radix,
        bytes(_zero_prefix_length(spec, radix)),
        tuple(_level(spec, radix, m) for m in range(1, levels + 1)),
    )


class DigitStream:
    """Single-consumer iterator over the digits of alpha_{b,c}.

    ``position`` counts digits already emitted; ``path`` is "fast" or "oracle".
    """

    def __init__(self, spec: StonehamSpec, radix: Radix = Radix.BASE, *, prefer_fast: bool = True):
        self.spec = spec
        self.radix = radix
        self.base = spec.radix_base(radix)
        self.position = 0
        if prefer_fast and fast_path_available(spec, radix):
            if not prefix_is_zero_bound(spec, radix):
                raise RuntimeError(f"leading zeros of {spec} are not covered by the bound")
            self.path = "fast"
            self._segments = self._fast_segments()
        else:
            self.path = "oracle"
            self._segments = self._oracle_segments()
        self._buffer = b""
        self._offset = 0

    def _fast_segments(self) -> Iterator[bytes]:
        yield bytes(_zero_prefix_length(self.spec, self.radix))
        m = 1
        while True:
            level = _level(self.spec, self.radix, m)
            batch = max(1, _SEGMENT_BYTES // level.length)
            remaining = level.repetitions
            while remaining:
                take = min(batch, remaining)
                yield level.word * take
                remaining -= take
            m += 1

    def _oracle_segments(self) -> Iterator[bytes]:
        emitted = 0
        m = 1
        while True:
            reach = stability_index(self.spec, m, self.radix)
            if reach > emitted:
                digits = long_division(partial_sum(self.spec, m), self.base, start=emitted)
                while emitted < reach:
                    size = min(_SEGMENT_BYTES, reach - emitted)
                    yield bytes(islice(digits, size))
                    emitted += size
            m += 1

    def read(self, count: int) -> bytes:
        if count < 0:
            raise ValueError(f"count must be nonnegative, got {count}")
        available = len(self._buffer) - self._offset
        if count <= available:
            out = self._buffer[self._offset : self._offset + count]
            self._offset += count
        else:
            parts = [self._buffer[self._offset :]]
            while available < count:
                segment = next(self._segments)
                parts.append(segment)
                available += len(segment)
            self._buffer = b"".join(parts)
            self._offset = count
            out = self._buffer[:count]
        self.position += count
        return out

    def chunks(self, count: int, size: int = STREAM_CHUNK_DIGITS) -> Iterator[bytes]:
        """The next ``count`` digits in pieces of at most ``size``."""
        if size < 1:
            raise ValueError(f"chunk size must be positive, got {size}")
        while count > 0:
            piece = min(size, count)
            yield self.read(piece)
            count -= piece

    def __iter__(self) -> DigitStream:
        return self

    def __next__(self) -> int:
        return self.read(1)[0]


@dataclass(frozen=True)
class StreamedDigits:
    spec: StonehamSpec
    radix: Radix
    digits: bytes
    path: str


def digit_stream(
    spec: StonehamSpec, radix: Radix = Radix.BASE, count: int = 0, *, prefer_fast: bool = True
) -> StreamedDigits:
    """First ``count`` digits, with the path that produced them."""
    stream = DigitStream(spec, radix, prefer_fast=prefer_fast)
    return StreamedDigits(spec, radix, stream.read(count), stream.path)


@dataclass(frozen=True)
class BlockCheck:
    ok: bool
    detail: str
    first_mismatch: int | None = None  # 1-based position


def _first_difference(left: bytes, right: bytes) -> int:
    return next((i for i, (x, y) in enumerate(zip(left, right)) if x != y), min(len(left), len(right)))


def verify_block_structure(spec: StonehamSpec, m_max: int, radix: Radix = Radix.BASE) -> BlockCheck:
    """Compare the block layout with long division of the partial sums, level by level."""
    if not is_prime(spec.c):
        raise PreconditionError(f"c must be prime, got {spec.c}")
    decomposition = block_decomposition(spec, m_max, radix)
    p = spec.c
    oracle = DigitStream(spec, radix, prefer_fast=False).read(decomposition.end)

    prefix = decomposition.prefix
    if oracle[: len(prefix)] != prefix:
        position = _first_difference(oracle, prefix) + 1
        return BlockCheck(False, f"prefix is not {len(prefix)} zeros", position)

    for level in decomposition.levels:
        modulus = p**level.m
        if radix is Radix.BASE:
            expected_length = multiplicative_order(spec.b, modulus)
        else:
            expected_length = multiplicative_order(4, modulus)
            paired = pair_digits(rotate_left(block_word(2, p, level.m), 1))
            if paired != level.word:
                return BlockCheck(False, f"level {level.m}: pairing of the rotated binary word disagrees")
            if block_word_sq(p, level.m) != pair_digits(block_word(2, p, level.m)):
                return BlockCheck(False, f"level {level.m}: base-4 block is not the paired binary block")
        if level.length != expected_length:
            return BlockCheck(False, f"level {level.m}: word length {level.length}, order {expected_length}")
        if level.repetitions * level.length != level.end - level.start + 1:
            return BlockCheck(False, f"level {level.m}: repetitions do not cover the level")
        window = oracle[level.start - 1 : level.end]
        tiled = level.word * level.repetitions
        if window != tiled:
            position = level.start + _first_difference(window, tiled)
            return BlockCheck(False, f"level {level.m}: digit mismatch", position)

    return BlockCheck(True, f"{len(decomposition.levels)} levels match through position {decomposition.end}")
