"""Multi-indices for negative-mode monomials and the total order on them.

A multi-index ``i`` is stored as the tuple ``(i_1, i_2, ..., i_k)`` with
trailing zeros stripped; it stands for ``l^i = ... l_{-2}^{i_2} l_{-1}^{i_1}``.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

MultiIndex = Tuple[int, ...]

ZERO: MultiIndex = ()

LESS, EQUAL, GREATER = -1, 0, 1


def make(entries: Sequence[int]) -> MultiIndex:
    entries = list(entries)
    if any(e < 0 for e in entries):
        raise ValueError("multi-index entries must be non-negative")
    while entries and entries[-1] == 0:
        entries.pop()
    return tuple(entries)


def eps(s: int) -> MultiIndex:
    if s < 1:
        raise ValueError("eps(s) needs s >= 1")
    return (0,) * (s - 1) + (1,)


def add(i: MultiIndex, j: MultiIndex) -> MultiIndex:
    n = max(len(i), len(j))
    return make([(i[k] if k < len(i) else 0) + (j[k] if k < len(j) else 0) for k in range(n)])


def sub(i: MultiIndex, j: MultiIndex) -> MultiIndex:
    n = max(len(i), len(j))
    return make([(i[k] if k < len(i) else 0) - (j[k] if k < len(j) else 0) for k in range(n)])


def entry(i: MultiIndex, s: int) -> int:
    return i[s - 1] if 0 < s <= len(i) else 0


def weight(i: MultiIndex) -> int:
    return sum(s * n for s, n in enumerate(i, start=1))


def degree(i: MultiIndex) -> int:
    return sum(i)


def min_support(i: MultiIndex) -> int:
    """Smallest s with i_s != 0 (0 for the zero index)."""
    for s, n in enumerate(i, start=1):
        if n:
            return s
    return 0


def compare(i: MultiIndex, j: MultiIndex) -> int:
    """Three-way comparison under the recursive order.

    Weight first, then degree; on a tie the index whose smallest occupied
    slot is larger is the smaller one, and on a further tie one copy of
    that slot is removed from both and the comparison repeats.  Removing a
    common slot keeps weights and degrees equal, so the loop only needs to
    walk the sorted slot lists.
    """
    wi, wj = weight(i), weight(j)
    if wi != wj:
        return LESS if wi < wj else GREATER
    di, dj = degree(i), degree(j)
    if di != dj:
        return LESS if di < dj else GREATER
    for a, b in zip(parts(i), parts(j)):
        if a != b:
            return LESS if a > b else GREATER
    return EQUAL


def compare_recursive(i: MultiIndex, j: MultiIndex) -> int:
    """Literal transcription of the four-clause recursion (test oracle)."""
    wi, wj = weight(i), weight(j)
    if wi != wj:
        return LESS if wi < wj else GREATER
    di, dj = degree(i), degree(j)
    if di != dj:
        return LESS if di < dj else GREATER
    if not i:
        return EQUAL
    pi, pj = min_support(i), min_support(j)
    if pi != pj:
        return LESS if pi > pj else GREATER
    return compare_recursive(sub(i, eps(pi)), sub(j, eps(pi)))


def precedes(i: MultiIndex, j: MultiIndex) -> bool:
    return compare(i, j) == LESS


def sort_key(i: MultiIndex):
    """Key whose natural ordering agrees with :func:`compare`."""
    return (weight(i), degree(i), tuple(-s for s in parts(i)))


def parts(i: MultiIndex) -> List[int]:
    """Occupied slots with multiplicity, ascending."""
    out: List[int] = []
    for s, n in enumerate(i, start=1):
        out.extend([s] * n)
    return out


def to_modes(i: MultiIndex) -> Tuple[int, ...]:
    """Negative modes of ``l^i`` in PBW (non-decreasing) order."""
    return tuple(-s for s in reversed(parts(i)))


def from_modes(modes: Sequence[int]) -> MultiIndex:
    out: List[int] = []
    for m in modes:
        if m >= 0:
            raise ValueError("only negative modes form a multi-index")
        s = -m
        if len(out) < s:
            out.extend([0] * (s - len(out)))
        out[s - 1] += 1
    return make(out)


def of_weight(w: int) -> Iterator[MultiIndex]:
    """All multi-indices of weight exactly ``w`` (partitions of ``w``)."""
    def rec(remaining, largest):
        if remaining == 0:
            yield []
            return
        for s in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - s, s):
                yield [s] + rest

    for part in rec(w, w):
        counts = [0] * (max(part) if part else 0)
        for s in part:
            counts[s - 1] += 1
        yield make(counts)


def up_to_weight(w: int) -> List[MultiIndex]:
    out = []
    for k in range(w + 1):
        out.extend(of_weight(k))
    return sorted(out, key=sort_key)


def format_index(i: MultiIndex) -> str:
    return "[" + ",".join(str(n) for n in i) + "]"


def parse_index(text: str) -> MultiIndex:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"multi-index must look like [i1,i2,...]: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ZERO
    return make(int(tok) for tok in body.split(","))


def support_and_max(x):
    """Support and maximal term of an element of the induced module."""
    supp = x.support()
    if not supp:
        raise ValueError("the zero element has no maximal term")
    return supp, max(supp, key=sort_key)
