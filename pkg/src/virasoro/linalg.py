"""Exact linear algebra over Q by fraction-free (Bareiss) elimination.

Rows are scaled to integers, eliminated with exact integer division,
and only the final back substitution goes through ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


def echelon(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form; returns (integer rows, pivot columns)."""
    m = _integer_rows(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for k in range(c, ncols):
                val = p * row_i[k] - f * row_r[k]
                q, rem = divmod(val, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[k] = q
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(echelon(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : rows * x = 0}, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = echelon(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        _back_substitute(m, pivots, x, rhs=None)
        basis.append(x)
    return basis


def _back_substitute(m, pivots, x, rhs):
    ncols = len(x)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        s = Fraction(-rhs[r]) if rhs is not None else Fraction(0)
        row = m[r]
        for k in range(c + 1, ncols):
            if row[k] and x[k]:
                s += row[k] * x[k]
        x[c] = -s / row[c]


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One solution of rows * x = rhs (free variables set to 0), or None if inconsistent."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    body = [row[:ncols] for row in m]
    _back_substitute(body, pivots, x, rhs=[row[ncols] for row in m])
    return x


def matmul_vec(rows: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, x) if a and b), Fraction(0)) for row in rows]
