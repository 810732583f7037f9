"""The Virasoro Lie algebra and its universal enveloping algebra.

Generators are ``l_i`` (``i`` any integer) and the central element ``c``
with ``[l_i, l_j] = (j - i) l_{i+j} + delta_{i,-j} (i^3 - i)/12 c``.

Enveloping algebra elements are combinations of PBW words: tuples of mode
indices sorted non-decreasingly left to right, together with a power of
``c``.  Normal ordering rewrites any word into that basis by adjacent
swaps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

# Sign of the central term.  Only the mutation harness in ``checks`` touches it.
_CENTRAL_SIGN = 1

Word = Tuple[int, ...]
PbwKey = Tuple[Word, int]  # (sorted modes, power of c)


def central_coefficient(i: int) -> Fraction:
    """Coefficient of ``c`` in ``[l_i, l_{-i}]``."""
    return _CENTRAL_SIGN * Fraction(i ** 3 - i, 12)


def structure(i: int, j: int) -> Tuple[int, Fraction]:
    """``[l_i, l_j] = a l_{i+j} + b c``; returns ``(a, b)``."""
    return j - i, (central_coefficient(i) if i + j == 0 else Fraction(0))


def _add_into(acc: dict, key, value):
    s = acc.get(key)
    s = value if s is None else s + value
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class LieElt:
    """Finite combination of ``l_i`` plus a multiple of ``c``."""

    __slots__ = ("modes", "central")

    def __init__(self, modes: Mapping[int, object] = None, central=0):
        self.modes = {int(i): c for i, c in (modes or {}).items() if c}
        self.central = central if central else Fraction(0)

    @classmethod
    def l(cls, i: int, coeff=1) -> "LieElt":
        return cls({i: Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def c(cls, coeff=1) -> "LieElt":
        return cls({}, Fraction(coeff) if isinstance(coeff, int) else coeff)

    def is_zero(self) -> bool:
        return not self.modes and not self.central

    def __add__(self, other: "LieElt") -> "LieElt":
        modes = dict(self.modes)
        for i, c in other.modes.items():
            _add_into(modes, i, c)
        return LieElt(modes, self.central + other.central)

    def __neg__(self):
        return LieElt({i: -c for i, c in self.modes.items()}, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        if not s:
            return LieElt()
        return LieElt({i: s * c for i, c in self.modes.items()}, s * self.central)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((frozenset(self.modes.items()), self.central))

    def __repr__(self):
        from .parse import render
        return f"LieElt({render(self)})"

    def to_uea(self) -> "UeaElt":
        terms = {((i,), 0): c for i, c in self.modes.items()}
        if self.central:
            terms[((), 1)] = self.central
        return UeaElt(terms)


def bracket(x: LieElt, y: LieElt) -> LieElt:
    """Lie bracket, bilinear extension of the structure constants."""
    modes: Dict[int, object] = {}
    central = Fraction(0)
    for i, a in x.modes.items():
        for j, b in y.modes.items():
            k, cen = structure(i, j)
            if k:
                _add_into(modes, i + j, k * a * b)
            if cen:
                central = central + cen * a * b
    return LieElt(modes, central)


def hat(k: int, z) -> LieElt:
    """``l_k - z^(k-1) l_1``, the spanning elements of the subalgebra a_z."""
    return LieElt({k: Fraction(1), 1: -(z ** (k - 1))})


# -- enveloping algebra ----------------------------------------------------

@lru_cache(maxsize=None)
def _order_word(word: Word) -> Tuple[Tuple[PbwKey, Fraction], ...]:
    for pos in range(len(word) - 1):
        a, b = word[pos], word[pos + 1]
        if a > b:
            break
    else:
        return (((word, 0), Fraction(1)),)
    head, tail = word[:pos], word[pos + 2:]
    acc: Dict[PbwKey, Fraction] = {}
    for key, c in _order_word(head + (b, a) + tail):
        _add_into(acc, key, c)
    k, cen = structure(a, b)
    if k:
        for key, c in _order_word(head + (a + b,) + tail):
            _add_into(acc, key, k * c)
    if cen:
        for (w, p), c in _order_word(head + tail):
            _add_into(acc, (w, p + 1), cen * c)
    return tuple(sorted(acc.items()))


def clear_caches():
    _order_word.cache_clear()


class UeaElt:
    """Combination of PBW words ``l_{i1} ... l_{ir} c^p`` with ``i1 <= ... <= ir``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PbwKey, object] = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "UeaElt":
        return cls({((), 0): Fraction(1)})

    @classmethod
    def word(cls, modes: Iterable[int], cpow: int = 0, coeff=1) -> "UeaElt":
        return normal_order(tuple(modes), cpow).scale(coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, s) -> "UeaElt":
        if isinstance(s, int):
            s = Fraction(s)
        if s == 1:
            return self
        return UeaElt({k: s * c for k, c in self.terms.items()})

    def __add__(self, other: "UeaElt") -> "UeaElt":
        if isinstance(other, LieElt):
            other = other.to_uea()
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c)
        return UeaElt(terms)

    def __neg__(self):
        return UeaElt({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, LieElt):
            other = other.to_uea()
        return self + (-other)

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if isinstance(other, (UeaElt, LieElt)):
            return uea_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, LieElt):
            other = other.to_uea()
        if not isinstance(other, UeaElt):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        from .parse import render
        return f"UeaElt({render(self)})"

    def degree(self) -> int:
        return max((len(w) + p for w, p in self.terms), default=-1)


def normal_order(word: Word, cpow: int = 0) -> UeaElt:
    """Rewrite the product ``l_{w1} ... l_{wr} c^cpow`` into PBW words."""
    return UeaElt({(w, p + cpow): c for (w, p), c in _order_word(tuple(word))})


def uea_mul(a, b) -> UeaElt:
    """Associative product in U(V)."""
    if isinstance(a, LieElt):
        a = a.to_uea()
    if isinstance(b, LieElt):
        b = b.to_uea()
    acc: Dict[PbwKey, object] = {}
    for (w1, p1), c1 in a.terms.items():
        for (w2, p2), c2 in b.terms.items():
            coeff = c1 * c2
            for (w, p), c in _order_word(w1 + w2):
                _add_into(acc, (w, p + p1 + p2), c * coeff)
    return UeaElt(acc)


def commutator(a, b) -> UeaElt:
    return uea_mul(a, b) - uea_mul(b, a)
