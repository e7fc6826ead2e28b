"""Exact matrix rank by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over the rationals.

    Rows are cleared of denominators, then eliminated with Bareiss'
    one-step division, which keeps every entry an integer.
    """
    a = [r for r in integer_rows(rows) if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            a[i] = [(p * a[i][k] - f * a[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == len(a):
            break
    return r
