#!/usr/bin/env python3
"""Streaming throughput of the Stoneham digit paths. A benchmark, not a test.

Run from the repo root:  PYTHONPATH=src python scripts/throughput_bench.py [digits]
"""
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src"))
from radix_census.console import print
from radix_census.stoneham import DigitStream, Radix, StonehamSpec

ORACLE_CHECK_DIGITS = 10_000


def bench(spec: StonehamSpec, radix: Radix, count: int) -> bool:
    started = time.perf_counter()
    stream = DigitStream(spec, radix)
    consumed = sum(len(chunk) for chunk in stream.chunks(count))
    elapsed = time.perf_counter() - started
    rate = consumed / elapsed if elapsed else float("inf")
    print(f"[STREAM] {spec} radix {radix.value} {stream.path}: {consumed} digits in {elapsed:.3f}s ({rate:,.0f}/s)")

    fast = DigitStream(spec, radix).read(ORACLE_CHECK_DIGITS)
    oracle = DigitStream(spec, radix, prefer_fast=False).read(ORACLE_CHECK_DIGITS)
    same = fast == oracle
    print(f"[BLOCKS] first {ORACLE_CHECK_DIGITS} digits match the oracle {'✓' if same else '✗'}")
    return same and elapsed < 1.0


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    results = [
        bench(StonehamSpec(3, 5), Radix.BASE, count),
        bench(StonehamSpec(2, 3), Radix.SQUARE, count),
    ]
    print("\nOK" if all(results) else "\n[!] below target")
    sys.exit(0 if all(results) else 1)


main()
