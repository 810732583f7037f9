"""Text syntax for scalars, enveloping-algebra elements and module elements.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*
    factor := atom ('^' uint)?
    atom   := number | param | 'l(' int ')' | 'c' | 'v' | '(' expr ')'

``param`` is one of ``z m2 m3 m4 theta t``.  ``v`` may only close a product.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Tuple

from .algebra import LieElt, UeaElt, uea_mul
from .coeff import (PARAM_NAMES, RatFunc, format_scalar, param, scalar_needs_parens,
                    scalar_sign_split, simplify_scalar)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Mode:
    index: int


@dataclass(frozen=True)
class Central:
    pass


@dataclass(frozen=True)
class Gen:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple  # of (op, node) with op in {"*", "/"}; first op is "*"


@dataclass(frozen=True)
class Power:
    base: object
    exp: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3))
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        _check_generator(node)
        return node

    def expr(self):
        terms = []
        sign = "+"
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = tok[1]
        terms.append((sign, self.term()))
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                terms.append((tok[1], self.term()))
            else:
                break
        if len(terms) == 1:
            sign, node = terms[0]
            return node if sign == "+" else Neg(node)
        return Sum(tuple(terms))

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        factors = [("*", self.factor())]
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                factors.append((tok[1], self.factor()))
            elif self._starts_factor(tok):
                factors.append(("*", self.factor()))
            else:
                break
        return factors[0][1] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal", exp_tok[2])
            self.take()
            return Power(base, int(exp_tok[1]))
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return Num(int(val))
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect("op", ")")
            return node
        if kind == "name":
            if val == "l":
                self.expect("op", "(")
                sign = 1
                nxt = self.peek()
                if nxt[0] == "op" and nxt[1] in "+-":
                    self.take()
                    sign = -1 if nxt[1] == "-" else 1
                idx = self.expect("int")
                self.expect("op", ")")
                return Mode(sign * int(idx[1]))
            if val == "c":
                return Central()
            if val == "v":
                return Gen()
            if val in PARAM_NAMES:
                return Param(val)
            raise ParseError(f"unknown name {val!r}", pos)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def _contains_gen(node) -> bool:
    if isinstance(node, Gen):
        return True
    if isinstance(node, Neg):
        return _contains_gen(node.arg)
    if isinstance(node, Power):
        return _contains_gen(node.base)
    if isinstance(node, Sum):
        return any(_contains_gen(n) for _, n in node.terms)
    if isinstance(node, Product):
        return any(_contains_gen(n) for _, n in node.factors)
    return False


def _check_generator(node, pos=0):
    if isinstance(node, Power) and _contains_gen(node.base):
        raise ParseError("v cannot be raised to a power", pos)
    if isinstance(node, Product):
        for n, (op, f) in enumerate(node.factors):
            if _contains_gen(f) and (n != len(node.factors) - 1 or op == "/"):
                raise ParseError("v must be the rightmost factor of a product", pos)
            _check_generator(f, pos)
    elif isinstance(node, Sum):
        for _, n in node.terms:
            _check_generator(n, pos)
    elif isinstance(node, Neg):
        _check_generator(node.arg, pos)


def parse(text: str):
    """Parse text into an AST; raises :class:`ParseError` with a position."""
    return _Parser(text).parse()


# -- evaluation -----------------------------------------------------------------

class Evaluator:
    """Turns ASTs into scalars, UeaElt or ModElt.

    ``values`` maps parameter names to rationals; unassigned names stay
    symbolic.  ``module`` supplies the action when ``v`` appears.
    """

    def __init__(self, values: Mapping[str, Fraction] = None, module=None, space: str = "Ind"):
        self.values = dict(values or {})
        self.module = module
        self.space = space

    def _module(self):
        if self.module is None:
            from .rep import CharacterParams, InducedModule
            p = CharacterParams.symbolic(**{k: v for k, v in self.values.items()
                                            if k in ("z", "m2", "m3", "m4", "theta")})
            self.module = InducedModule(p, self.space)
        return self.module

    def scalar(self, name: str):
        if name in self.values:
            return self.values[name]
        return param(name)

    def eval(self, node):
        from .rep import ModElt
        if isinstance(node, Num):
            return Fraction(node.value)
        if isinstance(node, Param):
            return self.scalar(node.name)
        if isinstance(node, Mode):
            return UeaElt({((node.index,), 0): Fraction(1)})
        if isinstance(node, Central):
            return UeaElt({((), 1): Fraction(1)})
        if isinstance(node, Gen):
            return ModElt.v(self._module().space)
        if isinstance(node, Neg):
            return _scale(self.eval(node.arg), Fraction(-1))
        if isinstance(node, Power):
            base = self.eval(node.base)
            if _is_scalar(base):
                return simplify_scalar(base ** node.exp) if node.exp else Fraction(1)
            result = UeaElt.one()
            for _ in range(node.exp):
                result = uea_mul(result, base)
            return result
        if isinstance(node, Sum):
            total = None
            for sign, n in node.terms:
                val = self.eval(n)
                if sign == "-":
                    val = _scale(val, Fraction(-1))
                total = val if total is None else _add(total, val)
            return total
        if isinstance(node, Product):
            acc = None
            for op, n in node.factors:
                val = self.eval(n)
                if acc is None:
                    acc = val
                elif op == "/":
                    if not _is_scalar(val):
                        raise ValueError("only scalars can divide")
                    if not val:
                        raise ZeroDivisionError("division by zero in expression")
                    inv = Fraction(1) / val if isinstance(val, Fraction) else RatFunc.const(1) / val
                    acc = _scale(acc, simplify_scalar(inv))
                else:
                    acc = self._mul(acc, val)
            return acc
        raise TypeError(f"unknown node {node!r}")

    def _mul(self, a, b):
        from .rep import ModElt
        if _is_scalar(a):
            return _scale(b, a)
        if _is_scalar(b):
            return _scale(a, b)
        if isinstance(a, ModElt):
            raise ValueError("v must be the rightmost factor of a product")
        if isinstance(b, ModElt):
            return self._module().act(a, b)
        return uea_mul(a, b)


def _is_scalar(x) -> bool:
    return isinstance(x, (Fraction, RatFunc, int))


def _scale(x, s):
    if _is_scalar(x):
        return simplify_scalar(x * s)
    return s * x if not isinstance(x, UeaElt) else x.scale(s)


def _add(a, b):
    from .rep import ModElt
    if _is_scalar(a) and _is_scalar(b):
        return simplify_scalar(a + b)
    if _is_scalar(a):
        a = UeaElt.one().scale(a)
    if _is_scalar(b):
        b = UeaElt.one().scale(b)
    if isinstance(a, ModElt) != isinstance(b, ModElt):
        raise ValueError("cannot add a module element and an algebra element")
    return a + b


def parse_value(text: str, values: Mapping[str, Fraction] = None, module=None, space: str = "Ind"):
    """Parse and evaluate ``text`` in one step."""
    return Evaluator(values, module, space).eval(parse(text))


def parse_scalar(text: str, values: Mapping[str, Fraction] = None):
    val = parse_value(text, values)
    if not _is_scalar(val):
        raise ValueError(f"not a scalar expression: {text!r}")
    return val


# -- rendering --------------------------------------------------------------------

def _word_text(word, cpow=0) -> str:
    parts = []
    pos = 0
    while pos < len(word):
        a = word[pos]
        n = 1
        while pos + n < len(word) and word[pos + n] == a:
            n += 1
        parts.append(f"l({a})" if n == 1 else f"l({a})^{n}")
        pos += n
    if cpow:
        parts.append("c" if cpow == 1 else f"c^{cpow}")
    return "*".join(parts)


def _join(terms: List[Tuple[object, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for coeff, basis in terms:
        coeff = simplify_scalar(coeff)
        neg, mag = scalar_sign_split(coeff)
        if basis and mag == 1 and not neg:
            body = basis
        else:
            text = format_scalar(mag)
            if basis and scalar_needs_parens(mag):
                text = f"({text})"
            body = f"{text}*{basis}" if basis else text
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _uea_order(key):
    word, cpow = key
    return (-(len(word) + cpow), cpow, word)


def render_text(x) -> str:
    from .rep import ModElt, format_word
    if _is_scalar(x):
        return format_scalar(simplify_scalar(x))
    if isinstance(x, LieElt):
        terms = [(c, f"l({i})") for i, c in sorted(x.modes.items())]
        if x.central:
            terms.append((x.central, "c"))
        return _join(terms)
    if isinstance(x, UeaElt):
        keys = sorted(x.terms, key=_uea_order)
        return _join([(x.terms[k], _word_text(*k)) for k in keys])
    if isinstance(x, ModElt):
        from .rep import word_sort_key
        words = sorted(x.terms, key=word_sort_key, reverse=True)
        return _join([(x.terms[w], format_word(w)) for w in words])
    raise TypeError(f"cannot render {type(x).__name__}")


def render_json_obj(x):
    from .rep import ModElt, word_key, word_sort_key
    if _is_scalar(x):
        return {"scalar": format_scalar(simplify_scalar(x))}
    if isinstance(x, LieElt):
        terms = [{"mode": i, "coeff": format_scalar(simplify_scalar(c))} for i, c in sorted(x.modes.items())]
        if x.central:
            terms.append({"central": True, "coeff": format_scalar(simplify_scalar(x.central))})
        return {"terms": terms}
    if isinstance(x, UeaElt):
        keys = sorted(x.terms, key=_uea_order)
        return {"terms": [{"word": list(w), "c": p, "coeff": format_scalar(simplify_scalar(x.terms[(w, p)]))}
                          for w, p in keys]}
    if isinstance(x, ModElt):
        out = []
        for w in sorted(x.terms, key=word_sort_key, reverse=True):
            i, j, k = word_key(w)
            out.append({"i": list(i), "j": j, "k": k, "coeff": format_scalar(simplify_scalar(x.terms[w]))})
        return {"terms": out}
    raise TypeError(f"cannot render {type(x).__name__}")


def render(x, fmt: str = "text") -> str:
    """Text form re-parses to an equal element; JSON lists explicit basis keys."""
    if fmt == "text":
        return render_text(x)
    if fmt == "json":
        return json.dumps(render_json_obj(x), separators=(",", ":"))
    raise ValueError(f"unknown format {fmt!r}")
