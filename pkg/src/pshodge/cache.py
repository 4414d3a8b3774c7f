r"""Plain-text persistence for the psi-correlator memo table.

File format, pinned exactly:

* line 1 (header): ``PSHODGE-WKCACHE v1``
* every other line: ``g <TAB> n <TAB> exponents <TAB> numerator <TAB>
  denominator`` where ``exponents`` is the comma-separated ascending
  list of the n psi exponents and the value is in lowest terms with a
  positive denominator.

Example: ``1\t1\t1\t1\t24`` stores the one-pointed genus-1 value 1/24.

Loading a missing file yields an empty table; a wrong header or any
malformed line is refused with its line number.  Loaded values should be
trusted only after re-verifying a sampled subset against recomputation
(:func:`cache_verify`).
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .wk import WKTable, default_table

__all__ = ["HEADER", "CacheFormatError", "cache_store", "cache_load",
           "cache_verify"]

HEADER = "PSHODGE-WKCACHE v1"


class CacheFormatError(ValueError):
    """A cache file that does not conform to the pinned format."""

    def __init__(self, message, line=None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)
        self.line = line


def cache_store(path, table=None):
    """Write the table's pure-psi values to ``path``; returns the entry count."""
    table = table if table is not None else default_table()
    entries = table.psi_items()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(HEADER + "\n")
        for (g, d), value in entries:
            exps = ",".join(str(x) for x in d)
            fh.write(f"{g}\t{len(d)}\t{exps}\t{value.numerator}\t{value.denominator}\n")
    return len(entries)


def cache_load(path, table=None):
    """Read a cache file into ``table`` (a fresh one by default).

    A missing file gives an empty table.  Header or line defects raise
    :class:`CacheFormatError` carrying the offending line number.
    """
    table = table if table is not None else WKTable()
    if not os.path.exists(path):
        return table
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != HEADER:
        raise CacheFormatError(f"bad header; expected {HEADER!r}", line=1)
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise CacheFormatError("expected 5 tab-separated fields", lineno)
        try:
            g = int(fields[0])
            n = int(fields[1])
            d = tuple(int(x) for x in fields[2].split(",")) if fields[2] else ()
            num = int(fields[3])
            den = int(fields[4])
        except ValueError:
            raise CacheFormatError("non-integer field", lineno) from None
        if g < 0 or n < 1 or len(d) != n or any(x < 0 for x in d):
            raise CacheFormatError("invalid key", lineno)
        if tuple(sorted(d)) != d:
            raise CacheFormatError("exponents not sorted ascending", lineno)
        if den <= 0:
            raise CacheFormatError("denominator must be positive", lineno)
        value = Fraction(num, den)
        if value.numerator != num or value.denominator != den:
            raise CacheFormatError("value not in lowest terms", lineno)
        entries.append(((g, d), value))
    table.preload(entries)
    return table


def cache_verify(path, sample=25, seed=0):
    """Recompute a sampled subset of a cache file on a fresh evaluator.

    Returns ``(checked, mismatches)`` where ``mismatches`` lists
    ``(g, d, stored, recomputed)`` tuples; an empty list means the sample
    verified.
    """
    table = cache_load(path)
    keys = [key for key, _ in table.psi_items()]
    rng = random.Random(seed)
    if len(keys) > sample:
        keys = rng.sample(keys, sample)
    fresh = WKTable()
    mismatches = []
    for g, d in keys:
        stored = table.lookup(g, d)
        again = fresh.integral(g, d)
        if stored != again:
            mismatches.append((g, d, stored, again))
    return len(keys), mismatches
