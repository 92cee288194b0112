"""Exact per-n checks of the two digit-sum identities for alpha_{2,3} and alpha_{3,5}.

fc1: base-4 digits d_k of alpha_{2,3}. Over k = (3^(n+1)+3)/2 .. +3^n-1 the
sum of i^(d_k) is -i for odd n and -1 for even n, and d_k = d_{3^n+k} = d_{2*3^n+k}.

fc2: base-3 digits a_k of alpha_{3,5}. As printed, the sum of e^(pi i/3)^(a_k)
over k = 1+5^(n+1) .. 1+5^(n+1)+4*5^n is (-1)^n e^(pi i/3). The identity that
actually holds uses the primitive cube root and exactly one period, 4*5^n
terms. Both readings are checked: ``literal`` and ``corrected``.
"""

from __future__ import annotations

import asyncio
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from .census import DigitCensus, census_closed_form, census_of_digits, exp_sum, orbit_census
from .config import THREADS
from .cyclotomic import CyclotomicInt
from .stoneham import DigitStream, Radix, StonehamSpec

CONJECTURES = ("fc1", "fc2")

# (g, modulus) -> (g^n mod modulus for even n, for odd n), n >= 1
_PARITY_PATTERNS = {(5, 15): (10, 5), (3, 12): (9, 3)}


class Mode(Enum):
    LITERAL = "literal"
    CORRECTED = "corrected"


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    n: int
    mode: Mode
    sum: CyclotomicInt
    expected: CyclotomicInt
    part_i_pass: bool
    part_ii_pass: bool
    range: tuple[int, int]
    census: DigitCensus
    census_consistent: bool
    first_mismatch: int | None = None

    def __post_init__(self):
        if self.range[1] < self.range[0]:
            raise ValueError(f"empty range {self.range}")
        if self.part_i_pass != (self.sum == self.expected):
            raise ValueError("part_i_pass must record whether sum equals expected")

    @property
    def passed(self) -> bool:
        return self.part_i_pass and self.part_ii_pass and self.census_consistent


def _first_repeat_mismatch(digits: bytes, start: int, span: int, copies: int) -> int | None:
    """First k in [start, start+span) whose digit differs in one of the later copies."""
    head = digits[start - 1 : start - 1 + span]
    for copy in range(1, copies):
        offset = start - 1 + copy * span
        shifted = digits[offset : offset + span]
        if shifted != head:
            return start + next(i for i, (x, y) in enumerate(zip(head, shifted)) if x != y)
    return None


def verify_fc1(n: int, mode: Mode = Mode.LITERAL) -> ConjectureReport:
    """The statement needs no correction, so both modes run the same check."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    span = 3**n
    start = (3 ** (n + 1) + 3) // 2
    end = start + span - 1
    digits = DigitStream(StonehamSpec(2, 3), Radix.SQUARE).read(end + 2 * span)
    window = digits[start - 1 : end]

    total = exp_sum(window, 4)
    expected = -CyclotomicInt.root(4, 1) if n % 2 else -CyclotomicInt.one(4)
    census = census_of_digits(window, 4)
    first_mismatch = _first_repeat_mismatch(digits, start, span, copies=3)
    return ConjectureReport(
        conjecture="fc1",
        n=n,
        mode=mode,
        sum=total,
        expected=expected,
        part_i_pass=total == expected,
        part_ii_pass=first_mismatch is None,
        range=(start, end),
        census=census,
        census_consistent=census == orbit_census(8, 3, n + 1, 4),
        first_mismatch=first_mismatch,
    )


def verify_fc2(n: int, mode: Mode = Mode.CORRECTED) -> ConjectureReport:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    span = 4 * 5**n
    start = 5 ** (n + 1) + 1
    if mode is Mode.LITERAL:
        root_order, end = 6, start + span
    else:
        root_order, end = 3, start + span - 1
    digits = DigitStream(StonehamSpec(3, 5)).read(5 ** (n + 2))
    window = digits[start - 1 : end]
    block = digits[start - 1 : start - 1 + span]

    total = exp_sum(window, root_order)
    expected = CyclotomicInt.root(root_order, 1) * (-1) ** n
    first_mismatch = _first_repeat_mismatch(digits, start, span, copies=5)
    return ConjectureReport(
        conjecture="fc2",
        n=n,
        mode=mode,
        sum=total,
        expected=expected,
        part_i_pass=total == expected,
        part_ii_pass=first_mismatch is None,
        range=(start, end),
        census=census_of_digits(window, 3),
        census_consistent=census_of_digits(block, 3) == census_closed_form(5, n + 1, 3),
        first_mismatch=first_mismatch,
    )


def verify(conjecture: str, n: int, mode: Mode = Mode.CORRECTED) -> ConjectureReport:
    if conjecture == "fc1":
        return verify_fc1(n, mode)
    if conjecture == "fc2":
        return verify_fc2(n, mode)
    raise ValueError(f"unknown conjecture {conjecture!r}; expected one of {', '.join(CONJECTURES)}")


def power_residue_cases(g: int, modulus: int, n_max: int, n_min: int = 1) -> dict[int, int]:
    """g^n mod modulus for n_min..n_max; the known two-case patterns are asserted."""
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if n_min < 0:
        raise ValueError(f"n_min must be nonnegative, got {n_min}")
    table = {n: pow(g, n, modulus) for n in range(n_min, n_max + 1)}
    pattern = _PARITY_PATTERNS.get((g, modulus))
    if pattern:
        for n, residue in table.items():
            if n >= 1 and residue != pattern[n % 2]:
                raise RuntimeError(f"{g}^{n} mod {modulus} = {residue} breaks the parity pattern")
    return table


def fc1_census_cases(n: int) -> DigitCensus:
    """Census of the period of 8/3^n in base 4 from the parity-case formulas."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    q = 3**n // 12
    if n % 2:
        counts = {0: q, 1: q, 2: q + 1, 3: q}
    else:
        counts = {0: q + 1, 1: q, 2: q + 1, 3: q + 1}
    census = DigitCensus(4, counts, 3 ** (n - 1))
    if census != orbit_census(8, 3, n, 4):
        raise RuntimeError(f"case formulas disagree with the orbit census at n={n}")
    return census


def fc2_census_cases(n: int) -> DigitCensus:
    """Census of the period of 1/5^n in base 3 from the parity-case formulas."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    q = 5**n // 15
    if n % 2:
        counts = {0: 4 * q + 1, 1: 4 * q + 2, 2: 4 * q + 1}
    else:
        counts = {0: 4 * q + 3, 1: 4 * q + 2, 2: 4 * q + 3}
    census = DigitCensus(3, counts, 4 * 5 ** (n - 1))
    if census != census_closed_form(5, n, 3):
        raise RuntimeError(f"case formulas disagree with the closed-form census at n={n}")
    return census


async def _verify_all(
    conjecture: str,
    ns: list[int],
    mode: Mode,
    threads: int,
    on_report: Callable[[ConjectureReport], None] | None,
) -> list[ConjectureReport]:
    semaphore = asyncio.Semaphore(max(1, threads))

    async def run_one(n: int) -> ConjectureReport:
        async with semaphore:
            report = await asyncio.to_thread(verify, conjecture, n, mode)
        if on_report is not None:
            on_report(report)
        return report

    return list(await asyncio.gather(*(run_one(n) for n in ns)))


def run_verifications(
    conjecture: str,
    max_n: int,
    mode: Mode = Mode.CORRECTED,
    *,
    threads: int = THREADS,
    on_report: Callable[[ConjectureReport], None] | None = None,
) -> list[ConjectureReport]:
    """Reports for n = 0..max_n in ascending n; ``on_report`` sees them in completion order."""
    if conjecture not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conjecture!r}; expected one of {', '.join(CONJECTURES)}")
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    return asyncio.run(_verify_all(conjecture, list(range(max_n + 1)), mode, threads, on_report))
