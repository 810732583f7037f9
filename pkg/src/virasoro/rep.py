"""Induced modules V_m, W_m and Ind_{z,theta}(C_m).

Basis vectors are PBW words ``l_{a1} ... l_{ar} v`` with ``a1 <= ... <= ar <= 1``:
negative modes first, then powers of ``l_0`` and ``l_1``.  V_m uses only
``l_1``, W_m uses ``l_0`` and ``l_1``, Ind uses everything.  The action of
``l_n`` is computed by commuting it to the right until it either sits in
canonical position or reaches ``v``, where ``l_n v = m_n v + z^(n-1) l_1 v``
for ``n >= 2`` and ``c`` acts by ``theta``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import algebra, order
from .algebra import LieElt, UeaElt, structure
from .coeff import RatFunc, as_fraction, param, simplify_scalar
from .linalg import nullspace, solve

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

SPACES = ("V", "W", "Ind")

Word = Tuple[int, ...]

# Additive perturbations of the character, keyed by k.  Only the mutation
# harness in ``checks`` touches it.
_CHARACTER_SHIFT: Dict[int, Fraction] = {}


class InadmissibleError(ValueError):
    """An operator mode that does not act on the chosen space."""


class BoundsOverflow(ValueError):
    """A computed vector left the declared truncation."""

    def __init__(self, word, bounds):
        super().__init__(f"basis vector {format_word(word)} exceeds {bounds}")
        self.word = word
        self.bounds = bounds


class ParameterError(ValueError):
    """Parameters outside the admissible range."""


# -- character ---------------------------------------------------------------

CONDITION_NAMES = ("z*m3 != m4", "2*z*m2 != m3", "3*z*m3 != 2*m4", "z^2*m2 + m4 != 2*z*m3")


@dataclass(frozen=True)
class CharacterParams:
    z: object
    m2: object
    m3: object
    m4: object
    theta: object = Fraction(0)
    shifts: Tuple[Tuple[int, object], ...] = ()

    def __post_init__(self):
        if not self.z:
            raise ParameterError("z must be nonzero")

    @classmethod
    def symbolic(cls, **fixed) -> "CharacterParams":
        values = {name: param(name) for name in ("z", "m2", "m3", "m4", "theta")}
        values.update(fixed)
        return cls(**values)

    @classmethod
    def numeric(cls, z, m2, m3, m4, theta=0) -> "CharacterParams":
        return cls(as_fraction(z), as_fraction(m2), as_fraction(m3), as_fraction(m4), as_fraction(theta))

    def m(self, k: int):
        return character_value(self, k)

    def condition_values(self) -> Tuple[object, ...]:
        """The four quantities that must be nonzero for simplicity."""
        z, m2, m3, m4 = self.z, self.m2, self.m3, self.m4
        return (z * m3 - m4, 2 * z * m2 - m3, 3 * z * m3 - 2 * m4, z * z * m2 + m4 - 2 * z * m3)

    def conditions(self) -> Dict[str, bool]:
        return {name: bool(v) for name, v in zip(CONDITION_NAMES, self.condition_values())}

    @property
    def conditions_hold(self) -> bool:
        return all(self.conditions().values())

    def is_numeric(self) -> bool:
        return all(isinstance(v, Fraction) for v in (self.z, self.m2, self.m3, self.m4, self.theta))

    def as_dict(self) -> Dict[str, str]:
        from .coeff import format_scalar
        return {k: format_scalar(getattr(self, k)) for k in ("z", "m2", "m3", "m4", "theta")}


def character_value(p: CharacterParams, k: int):
    """Value of ``l_k - z^(k-1) l_1`` on the one-dimensional module C_m."""
    if k < 2:
        raise ValueError("the character is defined on l_k - z^(k-1) l_1 for k >= 2")
    if k == 2:
        val = p.m2
    elif k == 3:
        val = p.m3
    elif k == 4:
        val = p.m4
    else:
        val = -(k - 4) * p.m3 * p.z ** (k - 3) + (k - 3) * p.m4 * p.z ** (k - 4)
    for kk, delta in p.shifts:
        if kk == k:
            val = val + delta
    if k in _CHARACTER_SHIFT:
        val = val + _CHARACTER_SHIFT[k]
    return val


def character_defect(p: CharacterParams, i: int, j: int):
    """Character of ``[hat_i, hat_j]``; a genuine character makes this vanish."""
    z = p.z
    return ((j - i) * p.m(i + j) + (i - 1) * z ** (j - 1) * p.m(i + 1)
            - (j - 1) * z ** (i - 1) * p.m(j + 1))


def verify_character(p: CharacterParams, kmax: int) -> List[Tuple[int, int, object]]:
    """Pairs (i, j, defect) with nonzero defect, 2 <= i < j <= kmax."""
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    bad = []
    for i in range(2, kmax + 1):
        for j in range(i + 1, kmax + 1):
            d = character_defect(p, i, j)
            if d:
                bad.append((i, j, d))
    return bad


# -- words and elements ------------------------------------------------------

def word_key(word: Word) -> Tuple[order.MultiIndex, int, int]:
    neg = tuple(a for a in word if a < 0)
    return order.from_modes(neg), word.count(0), word.count(1)


def key_word(i: order.MultiIndex, j: int, k: int) -> Word:
    return order.to_modes(i) + (0,) * j + (1,) * k


def word_sort_key(word: Word):
    i, j, k = word_key(word)
    return (order.sort_key(i), j, k)


def format_word(word: Word) -> str:
    if not word:
        return "v"
    parts = []
    pos = 0
    while pos < len(word):
        a = word[pos]
        n = 1
        while pos + n < len(word) and word[pos + n] == a:
            n += 1
        parts.append(f"l({a})" if n == 1 else f"l({a})^{n}")
        pos += n
    return "*".join(parts) + "*v"


def _check_word(space: str, word: Word):
    if any(a > 1 for a in word) or list(word) != sorted(word):
        raise ValueError(f"not a canonical basis word: {word}")
    if space == "V" and any(a != 1 for a in word):
        raise InadmissibleError(f"V_m has no basis vector {format_word(word)}")
    if space == "W" and any(a < 0 for a in word):
        raise InadmissibleError(f"W_m has no basis vector {format_word(word)}")


class ModElt:
    """Finite combination of basis words of one of the three spaces."""

    __slots__ = ("space", "terms")

    def __init__(self, space: str, terms: Mapping[Word, object] = None):
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        self.space = space
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if c}
        for w in self.terms:
            _check_word(space, w)

    @classmethod
    def basis(cls, space: str, word: Word, coeff=1) -> "ModElt":
        return cls(space, {tuple(word): as_fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def v(cls, space: str = "Ind") -> "ModElt":
        return cls.basis(space, ())

    def _same(self, other: "ModElt"):
        if other.space != self.space:
            raise ValueError(f"cannot combine elements of {self.space} and {other.space}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ModElt") -> "ModElt":
        self._same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            algebra._add_into(terms, w, c)
        return ModElt(self.space, terms)

    def __neg__(self):
        return ModElt(self.space, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        if not s:
            return ModElt(self.space)
        return ModElt(self.space, {w: s * c for w, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, ModElt):
            return NotImplemented
        return self.space == other.space and (self - other).is_zero()

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __repr__(self):
        from .parse import render
        return f"ModElt[{self.space}]({render(self)})"

    def coeff(self, word: Word):
        return self.terms.get(tuple(word), Fraction(0))

    def keys(self):
        return sorted((word_key(w) for w in self.terms), key=lambda t: (order.sort_key(t[0]), t[1], t[2]))

    def support(self) -> set:
        return {word_key(w)[0] for w in self.terms}

    def component(self, i: order.MultiIndex) -> "ModElt":
        """W_m-component attached to ``l^i``."""
        n = len(order.to_modes(i))
        out = {}
        for w, c in self.terms.items():
            if word_key(w)[0] == i:
                out[w[n:]] = c
        return ModElt("W", out)

    def top(self) -> order.MultiIndex:
        return order.support_and_max(self)[1]

    def map_coeffs(self, f) -> "ModElt":
        return ModElt(self.space, {w: f(c) for w, c in self.terms.items()})

    def specialize(self, assignment) -> "ModElt":
        from .coeff import specialize
        return self.map_coeffs(lambda c: specialize(c, assignment))


def embed(x: ModElt, space: str) -> ModElt:
    """Inclusion V_m -> W_m -> Ind."""
    return ModElt(space, x.terms)


@dataclass(frozen=True)
class Bounds:
    max_weight: Optional[int] = None
    max_j: Optional[int] = None
    max_k: Optional[int] = None

    def admits(self, word: Word) -> bool:
        i, j, k = word_key(word)
        return ((self.max_weight is None or order.weight(i) <= self.max_weight)
                and (self.max_j is None or j <= self.max_j)
                and (self.max_k is None or k <= self.max_k))

    def check(self, x: ModElt):
        for w in x.terms:
            if not self.admits(w):
                raise BoundsOverflow(w, self)

    def basis(self, space: str) -> List[Word]:
        if self.max_k is None or (space != "V" and self.max_j is None) or (
                space == "Ind" and self.max_weight is None):
            raise ValueError(f"{self} does not bound {space}")
        indices = order.up_to_weight(self.max_weight) if space == "Ind" else [order.ZERO]
        js = range(self.max_j + 1) if space != "V" else range(1)
        return [key_word(i, j, k) for i in indices for j in js for k in range(self.max_k + 1)]


# -- the module engine ---------------------------------------------------------

class InducedModule:
    """One of V_m, W_m, Ind_{z,theta}(C_m) with exact action and a per-instance memo."""

    def __init__(self, params: CharacterParams, space: str = "Ind"):
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        self.params = params
        self.space = space
        self._memo: Dict[Tuple[int, Word], Tuple[Tuple[Word, object], ...]] = {}
        self._mvals: Dict[int, object] = {}
        self._zpow: Dict[int, object] = {}

    # scalars
    def _m(self, n):
        val = self._mvals.get(n)
        if val is None:
            val = self._mvals[n] = self.params.m(n)
        return val

    def _z(self, n):
        val = self._zpow.get(n)
        if val is None:
            val = self._zpow[n] = self.params.z ** n
        return val

    def admissible_mode(self, n: int) -> bool:
        return n >= {"V": 1, "W": 0, "Ind": -(10 ** 9)}[self.space]

    def _act_word(self, n: int, word: Word):
        key = (n, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        acc: Dict[Word, object] = {}
        if not word:
            if n <= 1:
                acc[(n,)] = Fraction(1)
            else:
                algebra._add_into(acc, (), self._m(n))
                algebra._add_into(acc, (1,), self._z(n - 1))
        else:
            a = word[0]
            if n <= a:
                acc[(n,) + word] = Fraction(1)
            else:
                rest = word[1:]
                # l_n l_a rest = l_a (l_n rest) + [l_n, l_a] rest
                for w, c in self._act_word(n, rest):
                    for w2, c2 in self._act_word(a, w):
                        algebra._add_into(acc, w2, c * c2)
                k, cen = structure(n, a)
                if k:
                    for w, c in self._act_word(n + a, rest):
                        algebra._add_into(acc, w, k * c)
                if cen:
                    algebra._add_into(acc, rest, cen * self.params.theta)
        result = tuple(acc.items())
        self._memo[key] = result
        return result

    def act_mode(self, n: int, x: ModElt) -> ModElt:
        if x.space != self.space:
            raise ValueError(f"element lives in {x.space}, module is {self.space}")
        if not self.admissible_mode(n):
            raise InadmissibleError(f"l({n}) does not act on {self.space}")
        acc: Dict[Word, object] = {}
        for w, c in x.terms.items():
            for w2, c2 in self._act_word(n, w):
                algebra._add_into(acc, w2, c * c2)
        return ModElt(self.space, acc)

    def act(self, u, x: ModElt, bounds: Bounds = None) -> ModElt:
        """Exact action of ``u`` (mode index, LieElt or UeaElt) on ``x``."""
        if isinstance(u, int):
            result = self.act_mode(u, x)
        else:
            if isinstance(u, LieElt):
                u = u.to_uea()
            result = ModElt(self.space)
            for (word, cpow), coeff in u.terms.items():
                if cpow and self.space != "Ind":
                    raise InadmissibleError(f"c does not act on {self.space}")
                y = x
                for n in reversed(word):
                    y = self.act_mode(n, y)
                    if y.is_zero():
                        break
                scale = coeff * self.params.theta ** cpow if cpow else coeff
                result = result + scale * y
        if bounds is not None:
            bounds.check(result)
        return result

    def hat_minus_m(self, k: int) -> UeaElt:
        """``l_k - z^(k-1) l_1 - m_k`` as an element of U(V)."""
        return UeaElt({((k,), 0): Fraction(1), ((1,), 0): -self._z(k - 1), ((), 0): -self._m(k)})

    def generators(self) -> List[Tuple[str, object]]:
        """Named operators used for span searches in this space."""
        ops = [("hat2-m2", self.hat_minus_m(2)), ("hat3-m3", self.hat_minus_m(3)),
               ("l(1)", 1), ("l(2)", 2)]
        if self.space in ("W", "Ind"):
            ops.append(("l(0)", 0))
        if self.space == "Ind":
            ops.extend([("l(-1)", -1), ("l(-2)", -2)])
        return ops

    def borel_generators(self) -> List[Tuple[str, object]]:
        return [op for op in self.generators() if op[0] not in ("l(-1)", "l(-2)")]

    def v(self) -> ModElt:
        return ModElt.v(self.space)

    def element(self, terms: Mapping[Word, object]) -> ModElt:
        return ModElt(self.space, terms)


# -- truncated operators ---------------------------------------------------------

@dataclass
class TruncatedOperator:
    space: str
    domain: List[Word]
    codomain: List[Word]
    rows: List[List[object]]  # rows[r][c] = coefficient of codomain[r] in op(domain[c])

    def column(self, c: int) -> ModElt:
        return ModElt(self.space, {w: self.rows[r][c] for r, w in enumerate(self.codomain)})

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[r][c] for r in range(len(self.rows)) for c in range(min(r, len(self.domain))))

    def diagonal(self) -> List[object]:
        return [self.rows[n][n] for n in range(min(len(self.domain), len(self.codomain)))]

    def vector(self, x: ModElt) -> List[object]:
        index = {w: n for n, w in enumerate(self.codomain)}
        out = [Fraction(0)] * len(self.codomain)
        for w, c in x.terms.items():
            if w not in index:
                raise BoundsOverflow(w, "codomain")
            out[index[w]] = c
        return out

    def element(self, coords: Sequence[object]) -> ModElt:
        return ModElt(self.space, {w: c for w, c in zip(self.domain, coords)})


def operator_matrix(module: InducedModule, u, domain: Bounds, codomain: Bounds) -> TruncatedOperator:
    dom = domain.basis(module.space)
    cod = codomain.basis(module.space)
    index = {w: n for n, w in enumerate(cod)}
    rows = [[Fraction(0)] * len(dom) for _ in cod]
    for c, w in enumerate(dom):
        image = module.act(u, ModElt.basis(module.space, w))
        for w2, coeff in image.terms.items():
            r = index.get(w2)
            if r is None:
                raise BoundsOverflow(w2, codomain)
            rows[r][c] = coeff
    return TruncatedOperator(module.space, dom, cod, rows)


def image_operator(module: InducedModule, u, domain: Bounds) -> TruncatedOperator:
    """Matrix of ``u`` on a bounded domain; the codomain is whatever the images span."""
    dom = domain.basis(module.space)
    images = [module.act(u, ModElt.basis(module.space, w)) for w in dom]
    cod = sorted({w for im in images for w in im.terms}, key=word_sort_key)
    index = {w: n for n, w in enumerate(cod)}
    rows = [[Fraction(0)] * len(dom) for _ in cod]
    for c, im in enumerate(images):
        for w, coeff in im.terms.items():
            rows[index[w]][c] = coeff
    return TruncatedOperator(module.space, dom, cod, rows)


def eigen_matrix(k: int, n_max: int, p: CharacterParams) -> TruncatedOperator:
    """Matrix of ``l_k - z^(k-1) l_1`` on span{v, l_1 v, ..., l_1^N v} in V_m."""
    if k < 2 or n_max < 0:
        raise ValueError("need k >= 2 and N >= 0")
    module = InducedModule(p, "V")
    b = Bounds(max_k=n_max)
    return operator_matrix(module, algebra.hat(k, p.z), b, b)


def eigenvalue(p: CharacterParams, k: int, n: int):
    return p.m(k) + n * p.z ** k * (1 - k)


def _require_numeric(op: TruncatedOperator):
    for row in op.rows:
        for x in row:
            if not isinstance(x, Fraction):
                raise ParameterError("kernel computations need numeric parameters")


def kernel(op: TruncatedOperator) -> List[ModElt]:
    """Exact kernel basis of a truncated operator over Q."""
    _require_numeric(op)
    return [op.element(vec) for vec in nullspace(op.rows, len(op.domain))]


def solve_affine(ops: Sequence[TruncatedOperator], targets: Sequence[ModElt]):
    """Solve ``op_r x = target_r`` simultaneously within the truncation.

    Returns ``(particular, kernel_basis)`` or ``None`` when the bounded
    system is inconsistent.
    """
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for op, target in zip(ops, targets):
        _require_numeric(op)
        rows.extend(op.rows)
        rhs.extend(op.vector(target))
    x = solve(rows, rhs)
    if x is None:
        return None
    particular = ops[0].element(x)
    return particular, [ops[0].element(vec) for vec in nullspace(rows, len(ops[0].domain))]


def hat_minus_m_operator(k: int, p: CharacterParams, space: str, j_max: int, n_max: int) -> TruncatedOperator:
    """``hat_k - m_k`` from the (J, N) truncation of W_m into the (J, N+1) one."""
    module = InducedModule(p, space)
    return operator_matrix(module, module.hat_minus_m(k), Bounds(max_j=j_max, max_k=n_max),
                           Bounds(max_j=j_max, max_k=n_max + 1))


def y2(p: CharacterParams) -> ModElt:
    """Solution of (hat_2 - m_2) x = v in W_m."""
    base = ModElt("W", {(0,): p.z, (1,): Fraction(-1)})
    return _scaled(base, p.m3 - 2 * p.z * p.m2, Fraction(1))


def y3(p: CharacterParams) -> ModElt:
    """Solution of (hat_3 - m_3) x = z v in W_m."""
    base = ModElt("W", {(0,): p.z, (1,): Fraction(-1)})
    return _scaled(base, 2 * p.m4 - 3 * p.z * p.m3, p.z)


def _scaled(x: ModElt, denominator, numerator) -> ModElt:
    if not denominator:
        raise ZeroDivisionError("closed-form solution undefined: denominator vanishes")
    if isinstance(denominator, Fraction) and isinstance(numerator, Fraction):
        f = numerator / denominator
    else:
        f = (numerator if isinstance(numerator, RatFunc) else RatFunc.const(numerator)) / denominator
    return simplify_scalar(f) * x


# -- generation by span search ---------------------------------------------------

class _Span:
    """Incremental echelon basis of W-vectors, each row remembering how it was produced.

    A row's ``combo`` maps operator sequences (indices into the generator list,
    in application order) to coefficients; applying that combination to the
    starting vector gives the row's vector.
    """

    def __init__(self):
        self.rows: List[Tuple[Word, Dict[Word, object], Dict[Tuple[int, ...], object]]] = []

    def _reduce(self, vec: Dict[Word, object]):
        vec = dict(vec)
        factors = []
        for pivot, pvec, combo in self.rows:
            c = vec.get(pivot)
            if c:
                f = c / pvec[pivot]
                for w, a in pvec.items():
                    algebra._add_into(vec, w, -f * a)
                factors.append((f, combo))
        return vec, factors

    def insert(self, x: ModElt, seq: Tuple[int, ...]) -> bool:
        """Add ``x`` (produced by ``seq``) if it is independent of the rows so far."""
        vec, factors = self._reduce(x.terms)
        if not vec:
            return False
        combo: Dict[Tuple[int, ...], object] = {seq: Fraction(1)}
        for f, other in factors:
            for s, a in other.items():
                algebra._add_into(combo, s, -f * a)
        pivot = min(vec, key=word_sort_key)
        self.rows.append((pivot, vec, combo))
        return True

    def express(self, target: Dict[Word, object]) -> Optional[Dict[Tuple[int, ...], object]]:
        """Operator combination producing ``target``, if it lies in the span."""
        vec, factors = self._reduce(target)
        if vec:
            return None
        combo: Dict[Tuple[int, ...], object] = {}
        for f, other in factors:
            for s, a in other.items():
                algebra._add_into(combo, s, f * a)
        return combo

    def __len__(self):
        return len(self.rows)


def normalize_top(module: InducedModule, x: ModElt, bounds: Bounds, max_dim: int = 400) -> Optional[ModElt]:
    """Element of the submodule generated by ``x`` whose top component is ``v``.

    For ``u`` in the Borel subalgebra the component of ``u x`` at ``t(x)``
    depends only on the component of ``x`` there, so the search runs on that
    component alone (``l_0`` picks up a shift by the weight of ``t(x)``; the
    projection handles it), within the ``max_j``/``max_k`` bounds.  The
    combination found is then applied to all of ``x``.  Returns ``None`` when
    nothing is found within the budget.
    """
    if x.is_zero():
        return None
    top = x.top()
    prefix = order.to_modes(top)
    start = x.component(top)
    ops = [op for _, op in module.borel_generators()]

    def image_of(op, y: ModElt) -> ModElt:
        lifted = ModElt(module.space, {prefix + w: c for w, c in y.terms.items()})
        image = module.act(op, lifted).component(top)
        for w in image.terms:
            if not (bounds.max_j is None or w.count(0) <= bounds.max_j) or not (
                    bounds.max_k is None or w.count(1) <= bounds.max_k):
                raise BoundsOverflow(w, bounds)
        return image

    span = _Span()
    span.insert(start, ())
    queue = [(start, ())]
    target = {(): Fraction(1)}
    combo = span.express(target)
    while combo is None and queue and len(span) < max_dim:
        y, seq = queue.pop(0)
        for n, op in enumerate(ops):
            try:
                image = image_of(op, y)
            except BoundsOverflow:
                continue
            if image.is_zero() or not span.insert(image, seq + (n,)):
                continue
            queue.append((image, seq + (n,)))
            combo = span.express(target)
            if combo is not None:
                break
    if combo is None:
        return None
    cache: Dict[Tuple[int, ...], ModElt] = {(): x}

    def apply(seq):
        y = cache.get(seq)
        if y is None:
            y = cache[seq] = module.act(ops[seq[-1]], apply(seq[:-1]))
        return y

    out = ModElt(module.space)
    for seq in sorted(combo, key=lambda s: (len(s), s)):
        out = out + combo[seq] * apply(seq)
    if out.is_zero() or out.top() != top or out.component(top) != ModElt.v("W"):
        raise AssertionError("Borel normalization produced the wrong top component")
    return out


def reaches_generator(module: InducedModule, x: ModElt, bounds: Bounds,
                      max_steps: int = 64, max_dim: int = 400) -> bool:
    """Bounded search for a nonzero multiple of ``v`` in the submodule generated by ``x``.

    ``True`` is a proof (an explicit element was produced); ``False`` only
    means nothing was found within ``bounds`` and the step budget.
    """
    if x.is_zero():
        raise ValueError("x must be nonzero")
    for _ in range(max_steps):
        xn = normalize_top(module, x, bounds, max_dim)
        if xn is None:
            return False
        top = xn.top()
        if top == order.ZERO:
            return True
        nxt = None
        for k in (2, 3):
            y = module.act(module.hat_minus_m(k), xn)
            if not y.is_zero() and order.precedes(y.top(), top):
                nxt = y
                break
        if nxt is None:
            return False
        x = nxt
    return False


def check_reducible_restriction(p: CharacterParams, kmax: int) -> List[Tuple[int, object]]:
    """Compare the one-dimensional n-module's restriction with C_m for k <= kmax.

    The n-module has l_1 -> -m3/z^2, l_2 -> m2 - m3/z and l_k -> 0 for k >= 3.
    Returns the list of (k, mismatch) pairs; empty means the restriction is C_m.
    """
    z = p.z
    l1 = -p.m3 / z ** 2
    values = {1: l1, 2: p.m2 - p.m3 / z}
    bad = []
    for k in range(2, kmax + 1):
        restricted = values.get(k, Fraction(0)) - z ** (k - 1) * l1
        diff = simplify_scalar(restricted - p.m(k))
        if diff:
            bad.append((k, diff))
    return bad
