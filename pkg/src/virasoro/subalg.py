"""Codimension-one subalgebras a_z of the positive part.

Coordinates with respect to the spanning set ``l_k - a_k l_1``, the closure
test, the constraint polynomials ``D_{i,j}``, a Buchberger implementation,
and the Groebner-basis classification showing ``a_k = a_2^(k-1)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import LieElt, bracket
from .coeff import Poly, PolyRing, format_poly, lex_key, poly_divmod, simplify_scalar


class GroebnerResourceError(RuntimeError):
    """Buchberger exceeded its pair, basis-size or time budget."""


# -- coordinates and closure -----------------------------------------------------

def _family(a) -> Callable[[int], object]:
    if callable(a):
        return a
    if not a:
        raise ValueError("z must be nonzero")
    return lambda k: a ** (k - 1)


def generator(k: int, a) -> LieElt:
    """``l_k - a_k l_1`` where ``a_k = z^(k-1)`` (or ``a(k)`` for a callable)."""
    if k < 2:
        raise ValueError("generators are indexed by k >= 2")
    return LieElt({k: Fraction(1), 1: -_family(a)(k)})


@dataclass
class AzCoords:
    coords: Dict[int, object]
    defect: object
    l0_part: object
    negative_part: Dict[int, object]
    central: object


def az_coords(x: LieElt, a) -> AzCoords:
    """Write the positive part of ``x`` as a combination of generators plus ``defect * l_1``."""
    fam = _family(a)
    coords = {k: c for k, c in x.modes.items() if k >= 2}
    defect = x.modes.get(1, Fraction(0))
    for k, c in coords.items():
        defect = defect + c * fam(k)
    return AzCoords(coords=coords, defect=simplify_scalar(defect),
                    l0_part=x.modes.get(0, Fraction(0)),
                    negative_part={k: c for k, c in x.modes.items() if k < 0},
                    central=x.central)


def check_closure(a, kmax: int) -> List[Tuple[int, int, object]]:
    """Pairs ``(i, j, defect)`` whose bracket leaves the span; empty means closed."""
    if kmax < 3:
        raise ValueError("kmax must be at least 3")
    bad = []
    gens = {k: generator(k, a) for k in range(2, kmax + 1)}
    for i, j in combinations(range(2, kmax + 1), 2):
        d = az_coords(bracket(gens[i], gens[j]), a).defect
        if d:
            bad.append((i, j, d))
    return bad


# -- constraint polynomials ----------------------------------------------------------

def dij(i: int, j: int, coeffs: Mapping[int, object]):
    """``(j-i) a_{i+j} - (j-1) a_i a_{j+1} + (i-1) a_{i+1} a_j``."""
    if not 2 <= i < j:
        raise ValueError("need 2 <= i < j")
    try:
        a = {k: coeffs[k] for k in (i, j, i + 1, j + 1, i + j)}
    except KeyError as exc:
        raise KeyError(f"missing coefficient a_{exc.args[0]}") from None
    return (j - i) * a[i + j] - (j - 1) * a[i] * a[j + 1] + (i - 1) * a[i + 1] * a[j]


def recursive_coefficients(ring: PolyRing, kmax: int) -> Dict[int, Poly]:
    """Solve ``D_{2,j} = 0`` for ``a_{j+2}`` in terms of ``a_2, a_3, a_4``."""
    a: Dict[int, Poly] = {k: ring.gen(f"a{k}") for k in (2, 3, 4)}
    for j in range(3, kmax - 1):
        # D_{2,j} = (j-2) a_{j+2} - (j-1) a_2 a_{j+1} + a_3 a_j
        a[j + 2] = ((j - 1) * a[2] * a[j + 1] - a[3] * a[j]).scale(Fraction(1, j - 2))
    return a


def constraint_pairs(kmax: int) -> List[Tuple[int, int]]:
    """Pairs (i, j), 3 <= i < j, i + j <= kmax: the constraints left after the D_{2,j} recursion."""
    return [(i, j) for i in range(3, kmax) for j in range(i + 1, kmax) if i + j <= kmax]


# -- Buchberger ------------------------------------------------------------------------

def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def s_polynomial(f: Poly, g: Poly, order: Sequence[str] = None) -> Poly:
    key = lex_key(f.ring, order)
    ef, cf = f.leading(key)
    eg, cg = g.leading(key)
    m = _lcm(ef, eg)
    left = f.mul_term(tuple(x - y for x, y in zip(m, ef)), 1 / cf)
    right = g.mul_term(tuple(x - y for x, y in zip(m, eg)), 1 / cg)
    return left - right


def reduce(p: Poly, basis: Sequence[Poly], order: Sequence[str] = None) -> Poly:
    if not basis:
        return p
    return poly_divmod(p, basis, order)[1]


def buchberger(gens: Sequence[Poly], order: Sequence[str] = None, *, max_pairs: int = 20000,
               max_basis: int = 400, max_seconds: float = 300.0) -> List[Poly]:
    """Reduced lex Groebner basis; pairs chosen by smallest lcm degree (normal strategy)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    key = lex_key(ring, order)
    basis: List[Poly] = []
    pairs: List[Tuple[int, int]] = []
    start = time.monotonic()
    processed = 0

    def lead(k):
        return basis[k].leading(key)[0]

    def add(poly: Poly):
        poly = poly.monic(key)
        idx = len(basis)
        basis.append(poly)
        lp = lead(idx)
        for k in range(idx):
            if basis[k] is None:
                continue
            lk = lead(k)
            # product criterion: coprime leading monomials give a zero S-polynomial
            if all(not (x and y) for x, y in zip(lp, lk)):
                continue
            pairs.append((k, idx))
        if len(basis) > max_basis:
            raise GroebnerResourceError(f"basis exceeded {max_basis} elements")

    for g in gens:
        r = reduce(g, [b for b in basis if b is not None], order)
        if not r.is_zero():
            add(r)

    while pairs:
        if processed >= max_pairs:
            raise GroebnerResourceError(f"more than {max_pairs} S-pairs")
        if time.monotonic() - start > max_seconds:
            raise GroebnerResourceError(f"exceeded {max_seconds} s")
        pairs.sort(key=lambda pq: (sum(_lcm(lead(pq[0]), lead(pq[1]))),
                                   key(_lcm(lead(pq[0]), lead(pq[1]))) if key else _lcm(lead(pq[0]), lead(pq[1]))))
        i, j = pairs.pop(0)
        processed += 1
        m = _lcm(lead(i), lead(j))
        # chain criterion: some third element's leading monomial divides the lcm
        # and both companion pairs are already gone
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or basis[k] is None:
                continue
            if _divides(lead(k), m):
                pi, pj = tuple(sorted((i, k))), tuple(sorted((j, k)))
                if pi not in pairs and pj not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        r = reduce(s, [b for b in basis if b is not None], order)
        if not r.is_zero():
            add(r)

    return _interreduce([b for b in basis if b is not None], order)


def _interreduce(basis: List[Poly], order) -> List[Poly]:
    key = lex_key(basis[0].ring, order)
    minimal: List[Poly] = []
    leads = [b.leading(key)[0] for b in basis]
    for n, b in enumerate(basis):
        ln = leads[n]
        dominated = any(
            _divides(leads[k], ln) and (leads[k] != ln or k < n)
            for k in range(len(basis)) if k != n)
        if not dominated:
            minimal.append(b)
    reduced = []
    for n, b in enumerate(minimal):
        others = minimal[:n] + minimal[n + 1:]
        r = reduce(b, others, order) if others else b
        reduced.append(r.monic(key))
    reduced.sort(key=lambda p: key(p.leading(key)[0]) if key else p.leading()[0], reverse=True)
    return reduced


def is_groebner(basis: Sequence[Poly], order: Sequence[str] = None) -> bool:
    return all(reduce(s_polynomial(f, g, order), basis, order).is_zero()
               for f, g in combinations(basis, 2))


# -- classification -----------------------------------------------------------------------

@dataclass
class Classification:
    kmax: int
    constraints: List[Tuple[int, int]]
    saturated_basis: List[Poly]
    a3_reduces: bool
    a4_reduces: bool
    converse: bool
    unsaturated: Dict[str, bool]
    full_ideal: Optional[Dict[str, object]] = None

    @property
    def passed(self) -> bool:
        full_ok = self.full_ideal is None or all(
            v for k, v in self.full_ideal.items() if isinstance(v, bool))
        return self.a3_reduces and self.a4_reduces and self.converse and all(self.unsaturated.values()) and full_ok

    def as_dict(self) -> Dict[str, object]:
        out = {
            "kmax": self.kmax,
            "constraints": [f"D_{i},{j}" for i, j in self.constraints],
            "saturated_basis": [format_poly(p) for p in self.saturated_basis],
            "a3 - a2^2 reduces to 0": self.a3_reduces,
            "a4 - a2^3 reduces to 0": self.a4_reduces,
            "a_k = a2^(k-1) satisfies all constraints": self.converse,
            "unsaturated membership": dict(self.unsaturated),
        }
        if self.full_ideal is not None:
            out["full_ideal"] = self.full_ideal
        return out


def classify_codim_one(kmax: int = 9, full_ideal: bool = False, max_seconds: float = 300.0) -> Classification:
    """Show that the constraints force ``a_3 = a_2^2`` and ``a_4 = a_2^3``.

    ``a_5 .. a_kmax`` are eliminated through the ``D_{2,j}`` recursion; the
    remaining constraints live in Q[a2, a3, a4].  Nonvanishing of
    ``a2 a3 a4`` is imposed by saturation with ``u a2 a3 a4 - 1``.
    """
    if kmax < 9:
        raise ValueError("kmax must be at least 9")
    pairs = constraint_pairs(kmax)

    ring = PolyRing(["u", "a4", "a3", "a2"])
    a = recursive_coefficients(ring, kmax)
    cons = [dij(i, j, a) for i, j in pairs]
    cons = [c for c in cons if not c.is_zero()]
    u, a4, a3, a2 = ring.gens()
    sat = buchberger(cons + [u * a2 * a3 * a4 - 1], max_seconds=max_seconds)
    a3_ok = reduce(a3 - a2 ** 2, sat).is_zero()
    a4_ok = reduce(a4 - a2 ** 3, sat).is_zero()

    unsat = {}
    order1 = ["a4", "a3", "a2", "u"]
    g1 = buchberger(cons, order1, max_seconds=max_seconds)
    unsat["a3^6 - a3^5*a2^2"] = reduce(a3 ** 6 - a3 ** 5 * a2 ** 2, g1, order1).is_zero()
    order2 = ["a2", "a3", "a4", "u"]
    g2 = buchberger(cons, order2, max_seconds=max_seconds)
    unsat["a4^3*a2 - a4^2*a3^2"] = reduce(a4 ** 3 * a2 - a4 ** 2 * a3 ** 2, g2, order2).is_zero()

    converse = _converse_holds(kmax)

    full = _full_ideal_run(max_seconds) if full_ideal else None
    return Classification(kmax, pairs, sat, a3_ok, a4_ok, converse, unsat, full)


def _converse_holds(kmax: int) -> bool:
    ring = PolyRing(["a2"])
    a2 = ring.gen("a2")
    coeffs = {k: a2 ** (k - 1) for k in range(2, kmax + 2)}
    return all(dij(i, j, coeffs).is_zero()
               for i in range(2, kmax) for j in range(i + 1, kmax) if i + j <= kmax)


def full_constraint_ideal() -> Tuple[PolyRing, List[Poly]]:
    """The nine generators D_{2,3..7}, D_{3,4}, D_{3,5}, D_{3,6}, D_{4,5} in a_2..a_9."""
    ring = PolyRing([f"a{k}" for k in range(9, 1, -1)])
    a = {k: ring.gen(f"a{k}") for k in range(2, 10)}
    pairs = [(2, j) for j in range(3, 8)] + [(3, 4), (3, 5), (3, 6), (4, 5)]
    return ring, [dij(i, j, a) for i, j in pairs]


def _full_ideal_run(max_seconds: float) -> Dict[str, object]:
    ring, gens = full_constraint_ideal()
    a = {k: ring.gen(f"a{k}") for k in range(2, 10)}
    out: Dict[str, object] = {}
    try:
        g1 = buchberger(gens, max_seconds=max_seconds)
        out["basis_size_a9>...>a2"] = len(g1)
        out["a3^6 - a3^5*a2^2 in I"] = reduce(a[3] ** 6 - a[3] ** 5 * a[2] ** 2, g1).is_zero()
        order2 = [f"a{k}" for k in (9, 8, 7, 6, 5, 2, 3, 4)]
        g2 = buchberger(gens, order2, max_seconds=max_seconds)
        out["basis_size_...>a2>a3>a4"] = len(g2)
        out["a4^3*a2 - a4^2*a3^2 in I"] = reduce(a[4] ** 3 * a[2] - a[4] ** 2 * a[3] ** 2, g2, order2).is_zero()
    except GroebnerResourceError as exc:
        out["error"] = str(exc)
        out["completed"] = False
    return out
