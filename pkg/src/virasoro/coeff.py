"""Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides sparse multivariate polynomials over Q (:class:`Poly`), a
recursive gcd, multivariate division, and reduced rational functions
(:class:`RatFunc`) in the parameter ring ``z, m2, m3, m4, theta, t``.

A *scalar* throughout the package is either a ``Fraction`` (numeric
parameters) or a ``RatFunc`` (symbolic parameters).  Both support the
usual operators and mix freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]

PARAM_NAMES = ("z", "m2", "m3", "m4", "theta", "t")


class CoeffError(ValueError):
    """Malformed coefficient input."""


class RingMismatchError(TypeError):
    """Operands live in different polynomial rings."""


class EvaluationError(ValueError):
    """Substitution failed: unassigned variable or vanishing denominator."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise CoeffError(f"not a rational: {x!r}")


class PolyRing:
    """A polynomial ring Q[x_1, ..., x_n] with a fixed variable order.

    The variable order doubles as the default lex priority: the first
    variable is the largest.
    """

    __slots__ = ("names", "index", "_one", "_zero")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise CoeffError(f"duplicate variable names in {self.names}")
        self.index = {n: i for i, n in enumerate(self.names)}
        self._zero = Poly(self, {})
        self._one = Poly(self, {self.zero_exp: Fraction(1)})

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def zero(self) -> "Poly":
        return self._zero

    def one(self) -> "Poly":
        return self._one

    def const(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def gen(self, name: str) -> "Poly":
        if name not in self.index:
            raise CoeffError(f"{name!r} is not a variable of {self}")
        e = [0] * len(self.names)
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, powers: Mapping[str, int], coeff=1) -> "Poly":
        e = [0] * len(self.names)
        for name, k in powers.items():
            if k < 0:
                raise CoeffError("negative exponent")
            e[self.index[name]] = k
        c = as_fraction(coeff)
        return Poly(self, {tuple(e): c} if c else {})


class Poly:
    """Sparse polynomial: map from exponent tuple to nonzero Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exponent, Fraction]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- construction helpers -------------------------------------------------
    def _new(self, terms):
        return Poly(self.ring, terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise CoeffError("polynomial is not constant")
        return self.terms.get(self.ring.zero_exp, Fraction(0))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(self.ring.zero_exp) == 1

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring.names[i])
        return used

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return self._new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise CoeffError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp: Exponent, coeff: Fraction) -> "Poly":
        return self._new({tuple(a + b for a, b in zip(e, exp)): c * coeff
                          for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- order-dependent helpers ---------------------------------------------
    def leading(self, key: Callable[[Exponent], tuple] = None) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise CoeffError("zero polynomial has no leading term")
        e = max(self.terms, key=key) if key else max(self.terms)
        return e, self.terms[e]

    def monic(self, key=None) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading(key)[1])

    # -- substitution ---------------------------------------------------------
    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        names = self.ring.names
        missing = sorted(n for n in self.variables() if n not in values)
        if missing:
            raise EvaluationError(f"unassigned variable(s): {', '.join(missing)}")
        vals = [as_fraction(values[n]) if n in values else Fraction(0) for n in names]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Partial substitution by rationals or polynomials of the same ring."""
        ring = self.ring
        result = ring.zero()
        for e, c in self.terms.items():
            term = ring.const(c)
            rest = list(e)
            for name, val in values.items():
                i = ring.index.get(name)
                if i is None or not e[i]:
                    continue
                rest[i] = 0
                if isinstance(val, Poly):
                    term = term * (val ** e[i])
                else:
                    term = term.scale(as_fraction(val) ** e[i])
            result = result + term.mul_term(tuple(rest), Fraction(1))
        return result

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def lex_key(ring: PolyRing, priority: Sequence[str] = None):
    """Key function for lex order with the given variable priority (largest first)."""
    if priority is None or tuple(priority) == ring.names:
        return None
    if sorted(priority) != sorted(ring.names):
        raise CoeffError(f"priority {priority} is not a permutation of {ring.names}")
    perm = [ring.index[n] for n in priority]
    return lambda e: tuple(e[i] for i in perm)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def poly_divmod(p: Poly, divisors: Sequence[Poly], order: Sequence[str] = None):
    """Multivariate division with remainder.

    Returns ``(quotients, remainder)`` with ``p == sum(q*d) + r`` and no term
    of ``r`` divisible by a leading term of a divisor.
    """
    ring = p.ring
    for d in divisors:
        if d.ring != ring:
            raise RingMismatchError(f"{ring} vs {d.ring}")
        if d.is_zero():
            raise CoeffError("division by the zero polynomial")
    key = lex_key(ring, order)
    leads = [d.leading(key) for d in divisors]
    quotients = [dict() for _ in divisors]
    rem: Dict[Exponent, Fraction] = {}
    work = dict(p.terms)
    while work:
        e = max(work, key=key) if key else max(work)
        c = work[e]
        for idx, (le, lc) in enumerate(leads):
            if _divides(le, e):
                shift = tuple(x - y for x, y in zip(e, le))
                f = c / lc
                quotients[idx][shift] = quotients[idx].get(shift, 0) + f
                for de, dc in divisors[idx].terms.items():
                    te = tuple(x + y for x, y in zip(de, shift))
                    s = work.get(te, 0) - f * dc
                    if s:
                        work[te] = s
                    else:
                        work.pop(te, None)
                break
        else:
            rem[e] = c
            del work[e]
    qs = [Poly(ring, {e: c for e, c in q.items() if c}) for q in quotients]
    return qs, Poly(ring, rem)


def exact_div(p: Poly, d: Poly) -> Poly:
    (q,), r = poly_divmod(p, [d])
    if not r.is_zero():
        raise CoeffError("inexact polynomial division")
    return q


# -- gcd -----------------------------------------------------------------------

def _split(p: Poly, i: int) -> Dict[int, Poly]:
    """View ``p`` as a polynomial in variable ``i`` with coefficients in the rest."""
    parts: Dict[int, Dict[Exponent, Fraction]] = {}
    for e, c in p.terms.items():
        k = e[i]
        parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
    return {k: Poly(p.ring, t) for k, t in parts.items()}


def _var_power(ring: PolyRing, i: int, k: int) -> Exponent:
    e = [0] * ring.nvars
    e[i] = k
    return tuple(e)


def _normalize_unit(p: Poly) -> Poly:
    return p.monic() if p.terms else p


def _content(p: Poly, i: int) -> Poly:
    g = None
    for coeff in _split(p, i).values():
        g = coeff if g is None else poly_gcd(g, coeff)
        if g.is_constant():
            return p.ring.one()
    return g


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    db = b.degree_in(i)
    lc_b = _split(b, i)[db]
    while not a.is_zero() and a.degree_in(i) >= db:
        da = a.degree_in(i)
        lc_a = _split(a, i)[da]
        a = lc_b * a - (lc_a * b).mul_term(_var_power(a.ring, i, da - db), Fraction(1))
    return a


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor over Q, normalized to leading coefficient 1."""
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    if p.is_zero():
        return _normalize_unit(q)
    if q.is_zero():
        return _normalize_unit(p)
    if p.is_constant() or q.is_constant():
        return p.ring.one()
    vars_p = p.variables()
    vars_q = q.variables()
    common = vars_p & vars_q
    if not common:
        return p.ring.one()
    ring = p.ring
    # a variable present in only one operand: gcd divides that operand's content
    for name in ring.names:
        i = ring.index[name]
        if (name in vars_p) != (name in vars_q):
            if name in vars_p:
                return poly_gcd(_content(p, i), q)
            return poly_gcd(p, _content(q, i))
    i = ring.index[next(n for n in ring.names if n in common)]
    cp, cq = _content(p, i), _content(q, i)
    c = poly_gcd(cp, cq)
    a, b = exact_div(p, cp), exact_div(q, cq)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, i)
        if r.is_zero():
            a, b = b, r
            break
        if r.degree_in(i) == 0:
            a = ring.one()
            break
        a, b = b, exact_div(r, _content(r, i))
    g = exact_div(a, _content(a, i)) if not a.is_constant() else ring.one()
    return _normalize_unit(c * g)


# -- rational functions --------------------------------------------------------

PARAM_RING = PolyRing(PARAM_NAMES)


class RatFunc:
    """Reduced quotient of two polynomials; the denominator is monic under lex."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, *, _reduced: bool = False):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise RingMismatchError(f"{num.ring} vs {den.ring}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def var(cls, name: str, ring: PolyRing = PARAM_RING) -> "RatFunc":
        return cls(ring.gen(name), _reduced=True)

    @classmethod
    def const(cls, c, ring: PolyRing = PARAM_RING) -> "RatFunc":
        return cls(ring.const(c), _reduced=True)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.ring.const(other), _reduced=True)
        if isinstance(other, Poly):
            return RatFunc(other, _reduced=True) if other.ring == self.ring else _raise_mismatch(self, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> Fraction:
        return self.num.constant_value()

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, self.den, _reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc(self.ring.zero(), _reduced=True)
            return RatFunc(self.num.scale(other), self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, _reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise CoeffError("integer exponent required")
        if k < 0:
            return RatFunc(self.ring.one(), _reduced=True) / (self ** (-k))
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == other
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        d = self.den.evaluate(values)
        if d == 0:
            raise EvaluationError("denominator vanishes at the given point")
        return self.num.evaluate(values) / d

    def subs(self, values: Mapping[str, object]) -> "RatFunc":
        polys = {k: (v.num if isinstance(v, RatFunc) and v.den.is_one() else v)
                 for k, v in values.items()}
        if any(isinstance(v, RatFunc) for v in polys.values()):
            return _subs_rational(self, values)
        den = self.den.subs(polys)
        if den.is_zero():
            raise EvaluationError("denominator vanishes under substitution")
        return RatFunc(self.num.subs(polys), den)

    def __repr__(self):
        return f"RatFunc({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _raise_mismatch(a, b):
    raise RingMismatchError(f"{a.ring} vs {b.ring}")


def _subs_rational(f: RatFunc, values) -> RatFunc:
    def sub_poly(p: Poly) -> RatFunc:
        out = RatFunc.const(0, p.ring)
        for e, c in p.terms.items():
            term = RatFunc.const(c, p.ring)
            for i, k in enumerate(e):
                if not k:
                    continue
                name = p.ring.names[i]
                base = values.get(name)
                if base is None:
                    base = RatFunc.var(name, p.ring)
                elif not isinstance(base, RatFunc):
                    base = RatFunc(base if isinstance(base, Poly) else p.ring.const(base))
                term = term * base ** k
            out = out + term
        return out

    den = sub_poly(f.den)
    if den.is_zero():
        raise EvaluationError("denominator vanishes under substitution")
    return sub_poly(f.num) / den


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, num.ring.one()
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(1 / c)), num.ring.one()
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = exact_div(num, g), exact_div(den, g)
    lc = den.leading()[1]
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


# -- scalar helpers ------------------------------------------------------------

Scalar = Union[Fraction, RatFunc]


def simplify_scalar(x) -> Scalar:
    """Demote constant rational functions to Fractions."""
    if isinstance(x, RatFunc) and x.is_constant():
        return x.constant_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return not x


def scalar_arith(a, b, op: str):
    """Exact ``a op b`` for op in add/sub/mul/div; division by zero raises."""
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if not b:
            raise ZeroDivisionError("division by zero scalar")
        if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
            r = Fraction(a) / Fraction(b)
        else:
            r = (a if isinstance(a, RatFunc) else RatFunc.const(a)) / b
    else:
        raise CoeffError(f"unknown operation {op!r}")
    return simplify_scalar(r)


def evaluate(s, assignment: Mapping[str, object]) -> Fraction:
    """Substitute rationals for every parameter of ``s``."""
    values = {k: as_fraction(v) for k, v in assignment.items()}
    if "z" in values and values["z"] == 0:
        raise EvaluationError("z must be nonzero")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, Poly):
        return s.evaluate(values)
    return s.evaluate(values)


def specialize(s, assignment: Mapping[str, object]):
    """Partial substitution; returns a Fraction when nothing symbolic remains."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return simplify_scalar(s.subs({k: as_fraction(v) for k, v in assignment.items()}))


def param(name: str) -> RatFunc:
    return RatFunc.var(name)


# -- printing ------------------------------------------------------------------

def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(names, e) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = _format_monomial(p.ring.names, e)
        mag = abs(c)
        if not mono:
            body = format_fraction(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_fraction(mag)}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _is_atomic_poly(p: Poly) -> bool:
    """True when the printed form needs no parentheses as a factor."""
    if len(p.terms) != 1:
        return False
    (e, c), = p.terms.items()
    return c > 0 and (c.denominator == 1 or not any(e))


def _is_single_power(p: Poly) -> bool:
    if len(p.terms) != 1:
        return False
    (e, c), = p.terms.items()
    return c == 1 and sum(1 for k in e if k) == 1


def format_scalar(x) -> str:
    """Re-parseable text for a scalar."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return format_fraction(x)
    if x.den.is_one():
        return format_poly(x.num)
    num = format_poly(x.num)
    if not (len(x.num.terms) == 1 and _is_atomic_poly(x.num)):
        num = f"({num})"
    den = format_poly(x.den)
    if not _is_single_power(x.den):
        den = f"({den})"
    return f"{num}/{den}"


def scalar_needs_parens(x) -> bool:
    """Whether ``format_scalar(x)`` must be parenthesized before ``*``."""
    if isinstance(x, (int, Fraction)):
        return False
    if not x.den.is_one():
        return True
    return len(x.num.terms) > 1


def scalar_sign_split(x):
    """Split off a leading minus sign for pretty sums: returns (negative, magnitude)."""
    if isinstance(x, (int, Fraction)):
        return (x < 0, abs(Fraction(x)))
    if x.den.is_one() and len(x.num.terms) == 1:
        c = next(iter(x.num.terms.values()))
        if c < 0:
            return True, -x
    return False, x
