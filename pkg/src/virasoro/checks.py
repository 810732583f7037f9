"""Machine-runnable checks of every computational claim, plus the simplicity probe.

Each check returns a :class:`CheckReport`.  A failing report always carries
a concrete counterexample in ``details``; a passing one records the ranges
that were verified.  All randomness flows from per-check string seeds, so a
report depends only on ``(seed, trials)``.
"""

from __future__ import annotations

import contextlib
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from . import algebra, fock, order, rep, subalg
from .algebra import LieElt, UeaElt, bracket
from .coeff import format_scalar, param, simplify_scalar, specialize
from .parse import render
from .rep import Bounds, CharacterParams, InducedModule, ModElt

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckReport:
    id: str
    status: str
    details: Dict[str, object] = field(default_factory=dict)
    params: Dict[str, object] = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_json(self, timing: bool = True) -> Dict[str, object]:
        details = dict(self.details)
        if self.params:
            details["params"] = self.params
        return {"check": self.id, "status": self.status, "details": details,
                "elapsed_ms": self.elapsed_ms if timing else 0}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_json(timing), sort_keys=True, separators=(",", ":"))

    def to_text(self, timing: bool = True) -> str:
        head = f"{self.id}: {self.status.upper()}"
        if timing:
            head += f" ({self.elapsed_ms} ms)"
        lines = [head]
        for key in sorted(self.details):
            lines.append(f"  {key}: {json.dumps(self.details[key], sort_keys=True)}")
        return "\n".join(lines)


def _s(x) -> str:
    return format_scalar(simplify_scalar(x))


def _rng(seed, *tags) -> random.Random:
    return random.Random("-".join(str(t) for t in (seed,) + tags))


def random_rational(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def random_params(rng: random.Random, valid: bool = True, log: List[str] = None,
                  theta: bool = True) -> CharacterParams:
    """Uniform small rationals; rejects points violating the simplicity conditions when ``valid``."""
    while True:
        p = CharacterParams.numeric(random_rational(rng, nonzero=True), random_rational(rng),
                                    random_rational(rng), random_rational(rng),
                                    random_rational(rng) if theta else 0)
        if not valid or p.conditions_hold:
            return p
        if log is not None:
            log.append(json.dumps(p.as_dict(), sort_keys=True))


def degenerate_params(rng: random.Random) -> CharacterParams:
    """Random point on the locus m4 = z*m3."""
    z = random_rational(rng, nonzero=True)
    m3 = random_rational(rng, nonzero=True)
    return CharacterParams.numeric(z, random_rational(rng), m3, z * m3)


def random_word(rng: random.Random, space: str, max_weight: int = 6, max_j: int = 4, max_k: int = 4,
                indices: Sequence[order.MultiIndex] = None):
    if space == "Ind":
        i = rng.choice(indices if indices is not None else order.up_to_weight(max_weight))
    else:
        i = order.ZERO
    j = rng.randint(0, max_j) if space != "V" else 0
    return rep.key_word(i, j, rng.randint(0, max_k))


def random_element(rng: random.Random, space: str, terms: int = None, **bounds) -> ModElt:
    n = terms if terms is not None else rng.randint(1, 6)
    out = {}
    for _ in range(n):
        out[random_word(rng, space, **bounds)] = random_rational(rng, nonzero=True)
    return ModElt(space, out)


def element_with_top(rng: random.Random, top: order.MultiIndex, extra: int = None,
                     max_weight: int = 6, max_j: int = 4, max_k: int = 4) -> ModElt:
    """``l^top v`` plus random terms with strictly smaller multi-indices."""
    lower = [i for i in order.up_to_weight(max_weight) if order.precedes(i, top)]
    x = {rep.key_word(top, 0, 0): Fraction(1)}
    n = rng.randint(0, 5) if extra is None else extra
    for _ in range(n if lower else 0):
        i = rng.choice(lower)
        x[rep.key_word(i, rng.randint(0, max_j), rng.randint(0, max_k))] = random_rational(rng, nonzero=True)
    return ModElt("Ind", x)


# -- individual checks -------------------------------------------------------------

def check_closure(seed=0, trials=None) -> Tuple[str, dict]:
    z = param("z")
    bad = subalg.check_closure(z, 12)
    deformed = subalg.check_closure(lambda k: z ** (k - 1) + 1, 5)
    details = {"kmax": 12, "pairs_checked": 55,
               "deformed_family_rejected": bool(deformed)}
    if bad:
        details["counterexamples"] = [{"i": i, "j": j, "defect": _s(d)} for i, j, d in bad]
        return FAIL, details
    if not deformed:
        details["counterexamples"] = [{"family": "z^(k-1)+1", "defect": "0 for all pairs up to 5"}]
        return FAIL, details
    return PASS, details


def check_bracket_jacobi(seed=0, trials=None) -> Tuple[str, dict]:
    rng_modes = range(-6, 7)
    bad = []
    for a, b, c in product(rng_modes, repeat=3):
        x, y, w = LieElt.l(a), LieElt.l(b), LieElt.l(c)
        s = bracket(x, bracket(y, w)) + bracket(y, bracket(w, x)) + bracket(w, bracket(x, y))
        if not s.is_zero():
            bad.append({"modes": [a, b, c], "sum": render(s)})
            if len(bad) >= 5:
                break
    anti = [(a, b) for a in rng_modes for b in rng_modes
            if not (bracket(LieElt.l(a), LieElt.l(b)) + bracket(LieElt.l(b), LieElt.l(a))).is_zero()]
    details = {"mode_range": [-6, 6], "triples": 13 ** 3}
    if bad or anti:
        details["counterexamples"] = bad + [{"antisymmetry": list(p)} for p in anti[:5]]
        return FAIL, details
    return PASS, details


def check_bracket_fock(seed=0, trials=None) -> Tuple[str, dict]:
    """Commutators in a free-boson realization; this is what sees the central term's sign."""
    rng = _rng(seed, "fock")
    states = [fock.vacuum()]
    for _ in range(3):
        st = {}
        for _ in range(3):
            mono = tuple(sorted(rng.randint(1, 3) for _ in range(rng.randint(0, 3))))
            st[mono] = random_rational(rng, nonzero=True)
        states.append({m: c for m, c in st.items() if c})
    momenta = [Fraction(0), random_rational(rng)]
    bad = []
    for p in momenta:
        for n, st in enumerate(states):
            for i in range(-5, 6):
                for j in range(-5, 6):
                    d = fock.commutator_defect(LieElt.l(i), LieElt.l(j), st, p)
                    if d:
                        bad.append({"i": i, "j": j, "state": n, "momentum": _s(p),
                                    "defect": {" ".join(map(str, m)) or "vac": _s(c) for m, c in sorted(d.items())}})
    details = {"mode_range": [-5, 5], "states": len(states), "momenta": [_s(p) for p in momenta]}
    if bad:
        details["counterexamples"] = bad[:5]
        details["failures"] = len(bad)
        return FAIL, details
    return PASS, details


def check_character(seed=0, trials=None) -> Tuple[str, dict]:
    p = CharacterParams.symbolic()
    bad = rep.verify_character(p, 12)
    details = {"kmax": 12, "pairs_checked": 55}
    if bad:
        details["counterexamples"] = [{"i": i, "j": j, "defect": _s(d)} for i, j, d in bad[:10]]
        return FAIL, details
    return PASS, details


def check_classify(seed=0, trials=None) -> Tuple[str, dict]:
    result = subalg.classify_codim_one(9)
    details = result.as_dict()
    return (PASS if result.passed else FAIL), details


def check_eigen(seed=0, trials=None) -> Tuple[str, dict]:
    p = CharacterParams.symbolic()
    bad = []
    for k in range(2, 7):
        op = rep.eigen_matrix(k, 10, p)
        if not op.is_upper_triangular():
            bad.append({"k": k, "problem": "not upper triangular"})
        for n, d in enumerate(op.diagonal()):
            expected = rep.eigenvalue(p, k, n)
            if simplify_scalar(d - expected):
                bad.append({"k": k, "n": n, "diagonal": _s(d), "expected": _s(expected)})
    details = {"k_range": [2, 6], "N": 10}
    if bad:
        details["counterexamples"] = bad
        return FAIL, details
    return PASS, details


def check_reducible(seed=0, trials=None) -> Tuple[str, dict]:
    z, m3 = param("z"), param("m3")
    sym = CharacterParams.symbolic(m4=z * m3)
    bad_sym = rep.check_reducible_restriction(sym, 12)
    rng = _rng(seed, "reducible")
    bounds = Bounds(max_k=8)
    stuck, reached = [], []
    bad = []
    for n in range(5):
        p = degenerate_params(rng)
        mod = InducedModule(p, "V")
        x = ModElt("V", {(1,): Fraction(1), (): p.m3 / p.z ** 2})
        ok = rep.reaches_generator(mod, x, bounds)
        stuck.append(p.as_dict())
        if ok:
            bad.append({"degenerate_point": p.as_dict(), "element": render(x), "problem": "reached v"})
    for n in range(5):
        while True:
            p = random_params(rng, valid=False, theta=False)
            if p.z * p.m3 != p.m4:
                break
        mod = InducedModule(p, "V")
        x = ModElt("V", {(1,): Fraction(1)})
        ok = rep.reaches_generator(mod, x, bounds)
        reached.append(p.as_dict())
        if not ok:
            bad.append({"point": p.as_dict(), "element": "l(1)*v", "problem": "did not reach v"})
    details = {"kmax": 12, "budget": {"max_k": 8}, "degenerate_points": stuck, "valid_points": reached}
    if bad_sym:
        bad.extend({"k": k, "mismatch": _s(d)} for k, d in bad_sym)
    if bad:
        details["counterexamples"] = bad
        return FAIL, details
    return PASS, details


def check_w_kernels(seed=0, trials=None) -> Tuple[str, dict]:
    samples = 20
    p = CharacterParams.symbolic()
    W = InducedModule(p, "W")
    bad = []
    r2 = W.act(W.hat_minus_m(2), rep.y2(p))
    if r2 != W.v():
        bad.append({"identity": "(hat2-m2) y2 = v", "got": render(r2)})
    r3 = W.act(W.hat_minus_m(3), rep.y3(p))
    if r3 != p.z * W.v():
        bad.append({"identity": "(hat3-m3) y3 = z v", "got": render(r3)})
    # y2 - y3 is a multiple of v only on the locus z^2 m2 + m4 = 2 z m3
    diff = (rep.y2(p) - rep.y3(p)).coeff((1,))
    cond4 = p.condition_values()[3]
    ratio = simplify_scalar(diff / cond4)
    if not diff or simplify_scalar(diff - ratio * cond4):
        bad.append({"identity": "y2 - y3 not in <v>", "l1_coefficient": _s(diff)})

    rng = _rng(seed, "w_kernels")
    rejected: List[str] = []
    points = []
    for _ in range(samples):
        q = random_params(rng, log=rejected, theta=False)
        ops = [rep.hat_minus_m_operator(k, q, "W", 6, 6) for k in (2, 3)]
        dims = [len(rep.kernel(op)) for op in ops]
        kernels_ok = all(len(basis) == 1 and basis[0].terms.keys() == {()}
                         for basis in (rep.kernel(op) for op in ops))
        v = ModElt.v("W")
        joint = rep.solve_affine(ops, [v, q.z * v])
        points.append({"params": q.as_dict(), "kernel_dims": dims, "joint_solution": joint is not None})
        if dims != [1, 1] or not kernels_ok or joint is not None:
            bad.append(points[-1])
    details = {"samples": samples, "truncation": {"J": 6, "N": 6}, "rejected_points": len(rejected),
               "points": points}
    if bad:
        details["counterexamples"] = bad
        return FAIL, details
    return PASS, details


def _obstruction_elements(p: CharacterParams, t):
    z, m2, m3, m4 = p.z, p.m2, p.m3, p.m4
    W = InducedModule(p, "W")
    d1 = 2 * z ** 2 * m2 - z * m3
    x1 = (t / d1) * W.element({
        (0, 0): -z ** 3,
        (0,): -(2 * z ** 5 * (1 + t) * m2 - z ** 4 * (4 + t) * m3 + 2 * z ** 2 * m2 * m3
                + 2 * z ** 3 * m4 - z * m3 ** 2) / d1,
        (0, 1): 2 * z ** 2,
        (1,): (2 * z ** 4 * t * m2 + 4 * z ** 2 * m2 ** 2 - z ** 3 * (3 + t) * m3
               - 2 * z * m2 * m3 + 2 * z ** 2 * m4) / d1,
        (1, 1): -z})
    d2 = 3 * z * m3 - 2 * m4
    x2 = (t / d2) * W.element({
        (0, 0): -z ** 3,
        (0,): 4 * z * m2 - 2 * m4 / z - t * z ** 3,
        (0, 1): 2 * z ** 2,
        (1,): t * z ** 2 - z ** 2 - 4 * m2 + 3 * m3 / z,
        (1, 1): -z})
    return W, x1, x2


def obstruction_rhs(p: CharacterParams, t, sign: int = 1):
    """Right-hand sides of the two-equation system; ``sign`` is that of the ``(t-1)`` term."""
    z = p.z
    r1 = t * ModElt("W", {(1,): Fraction(-3), (0,): 2 * z, (): sign * z * (t - 1)})
    r2 = t * ModElt("W", {(): -4 * p.m2 + sign * z ** 2 * (t - 1), (1,): -4 * z, (0,): 2 * z ** 2})
    return r1, r2


def check_w_obstruction(seed=0, trials=None) -> Tuple[str, dict]:
    p = CharacterParams.symbolic()
    t = param("t")
    W, x1, x2 = _obstruction_elements(p, t)
    r1, r2 = obstruction_rhs(p, t)
    bad = []
    e1 = W.act(W.hat_minus_m(2), x1) - r1
    if not e1.is_zero():
        bad.append({"equation": 1, "residual": render(e1)})
    e2 = W.act(W.hat_minus_m(3), x2) - r2
    if not e2.is_zero():
        bad.append({"equation": 2, "residual": render(e2)})
    c1, c2 = x1.coeff((0, 0)), x2.coeff((0, 0))
    diff = simplify_scalar(c1 - c2)
    on_locus = specialize(diff, {}) if not diff else diff.subs(
        {"m4": 2 * p.z * p.m3 - p.z ** 2 * p.m2})
    details = {"l0^2 coefficient 1": _s(c1), "l0^2 coefficient 2": _s(c2),
               "difference": _s(diff), "difference on z^2*m2 + m4 = 2*z*m3": _s(on_locus)}
    if not diff:
        bad.append({"problem": "l0^2 coefficients coincide identically"})
    if on_locus:
        bad.append({"problem": "l0^2 coefficients differ on the locus", "value": _s(on_locus)})
    if bad:
        details["counterexamples"] = bad
        return FAIL, details
    return PASS, details


def check_w_obstruction_corrected(seed=0, trials=None) -> Tuple[str, dict]:
    """Same conclusion for the system with the engine-derived constant terms.

    Shifting each right-hand side by a multiple of ``v`` shifts the solutions by
    the same multiple of ``y_2`` (resp. ``y_3 / z``), neither of which has an
    ``l_0^2`` term, so the incompatibility argument is unchanged.
    """
    p = CharacterParams.symbolic()
    t = param("t")
    W, x1, x2 = _obstruction_elements(p, t)
    shift = 2 * p.z * t * (t - 1)
    x1c = x1 - shift * rep.y2(p)
    x2c = x2 - shift * rep.y3(p)
    r1, r2 = obstruction_rhs(p, t, sign=-1)
    bad = []
    e1 = W.act(W.hat_minus_m(2), x1c) - r1
    e2 = W.act(W.hat_minus_m(3), x2c) - r2
    if not e1.is_zero():
        bad.append({"equation": 1, "residual": render(e1)})
    if not e2.is_zero():
        bad.append({"equation": 2, "residual": render(e2)})
    same = (x1c.coeff((0, 0)) == x1.coeff((0, 0))) and (x2c.coeff((0, 0)) == x2.coeff((0, 0)))
    if not same:
        bad.append({"problem": "l0^2 coefficients moved"})
    details = {"shift": _s(shift), "l0^2 coefficients unchanged": same}
    if bad:
        details["counterexamples"] = bad
        return FAIL, details
    return PASS, details


def check_order_laws(seed=0, trials=None) -> Tuple[str, dict]:
    small = order.up_to_weight(6)
    bad = []
    for a in small:
        for b in small:
            c = order.compare(a, b)
            if c != -order.compare(b, a) or (c == 0) != (a == b):
                bad.append({"law": "antisymmetry/totality", "pair": [order.format_index(a), order.format_index(b)]})
            if c != order.compare_recursive(a, b):
                bad.append({"law": "agrees with recursion", "pair": [order.format_index(a), order.format_index(b)]})
            if (order.sort_key(a) < order.sort_key(b)) != (c < 0):
                bad.append({"law": "sort key", "pair": [order.format_index(a), order.format_index(b)]})
    for a, b, c in product(small, repeat=3):
        if order.precedes(a, b) and order.precedes(b, c) and not order.precedes(a, c):
            bad.append({"law": "transitivity", "triple": [order.format_index(x) for x in (a, b, c)]})
    rng = _rng(seed, "order")
    big = order.up_to_weight(12)
    samples = 3000
    for _ in range(samples):
        a, b, c = rng.choice(big), rng.choice(big), rng.choice(big)
        ab, bc = order.compare(a, b), order.compare(b, c)
        if ab != order.compare_recursive(a, b) or ab != -order.compare(b, a):
            bad.append({"law": "random antisymmetry/recursion", "pair": [order.format_index(a), order.format_index(b)]})
        if ab < 0 and bc < 0 and order.compare(a, c) >= 0:
            bad.append({"law": "random transitivity", "triple": [order.format_index(x) for x in (a, b, c)]})
    # the sum-with-epsilon step used by the descent lowers the index
    for i in small:
        for s in range(2, 7):
            if order.entry(i, s):
                j = order.add(order.sub(i, order.eps(s)), order.eps(s - 1))
                if not order.precedes(j, i):
                    bad.append({"law": "i - eps_s + eps_(s-1) < i", "index": order.format_index(i), "s": s})
    details = {"exhaustive_weight": 6, "indices": len(small), "random_weight": 12, "random_triples": samples}
    if bad:
        details["counterexamples"] = bad[:10]
        return FAIL, details
    return PASS, details


_BOREL_MODES = (0, 1, 2, 3, 4)


def random_borel(rng: random.Random, p: CharacterParams) -> UeaElt:
    """Random product of one to three Borel elements (modes 0..4 plus hat_k - m_k)."""
    u = UeaElt.one()
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.3:
            k = rng.choice((2, 3))
            f = UeaElt({((k,), 0): Fraction(1), ((1,), 0): -p.z ** (k - 1), ((), 0): -p.m(k)})
        else:
            f = LieElt({m: random_rational(rng) for m in rng.sample(_BOREL_MODES, rng.randint(1, 3))}).to_uea()
            if f.is_zero():
                f = LieElt.l(rng.choice(_BOREL_MODES)).to_uea()
        u = u * f
    return u


def check_descent_lemma(seed=0, trials=None) -> Tuple[str, dict]:
    log: List[str] = []
    pairs = 500
    rng = _rng(seed, "descent")
    points = [random_params(rng, log=log) for _ in range(5)]
    mods = [InducedModule(p, "Ind") for p in points]
    indices = [i for i in order.up_to_weight(6)]
    bad, zero = [], 0
    for n in range(pairs):
        mod = mods[n % len(mods)]
        x = random_element(rng, "Ind", terms=rng.randint(1, 4), indices=indices, max_j=2, max_k=2)
        u = random_borel(rng, mod.params)
        y = mod.act(u, x)
        if y.is_zero():
            zero += 1
            continue
        if order.precedes(x.top(), y.top()):
            bad.append({"u": render(u), "x": render(x), "t(ux)": order.format_index(y.top()),
                        "t(x)": order.format_index(x.top()), "params": mod.params.as_dict()})
    details = {"pairs": pairs, "zero_products": zero, "points": [p.as_dict() for p in points]}
    if bad:
        details["counterexamples"] = bad[:5]
        return FAIL, details
    return PASS, details


def contribution(i: order.MultiIndex, k: int, module: InducedModule):
    """``(j, component)``: the W-coefficient of ``l^j`` in ``(hat_k - m_k) l^i v``."""
    x = ModElt.basis("Ind", rep.key_word(i, 0, 0))
    y = module.act(module.hat_minus_m(k), x)
    p = order.min_support(i)
    j = order.sub(i, order.eps(1)) if p == 1 else order.add(order.sub(i, order.eps(p)), order.eps(p - 1))
    return j, y.component(j)


def stated_contribution(i: order.MultiIndex, k: int, params: CharacterParams, sign: int = 1) -> ModElt:
    """The printed contribution formulas; ``sign = -1`` flips both printed signs."""
    z = params.z
    p = order.min_support(i)
    if p > 1:
        ip = order.entry(i, p)
        return ModElt("W", {(): -sign * ip * (p + 1) * z ** (k - 1)})
    t = order.entry(i, 1)
    if k == 2:
        return t * ModElt("W", {(1,): Fraction(-3), (0,): 2 * z, (): sign * z * (t - 1)})
    return t * ModElt("W", {(): -4 * params.m2 + sign * z ** 2 * (t - 1), (1,): -4 * z, (0,): 2 * z ** 2})


def _check_contrib(sign: int) -> Tuple[str, dict]:
    params = CharacterParams.symbolic()
    module = InducedModule(params, "Ind")
    bad = []
    checked = 0
    for i in order.up_to_weight(6):
        if i == order.ZERO:
            continue
        for k in (2, 3):
            j, got = contribution(i, k, module)
            expected = stated_contribution(i, k, params, sign)
            checked += 1
            if got != expected:
                bad.append({"i": order.format_index(i), "k": k, "j": order.format_index(j),
                            "expected": render(expected), "got": render(got)})
    details = {"max_weight": 6, "k": [2, 3], "cases": checked}
    if bad:
        details["failures"] = len(bad)
        details["counterexamples"] = bad[:8]
        return FAIL, details
    return PASS, details


def check_contrib(seed=0, trials=None) -> Tuple[str, dict]:
    """Contribution identities with the signs exactly as printed."""
    return _check_contrib(1)


def check_contrib_corrected(seed=0, trials=None) -> Tuple[str, dict]:
    """Contribution identities with both printed signs flipped (the values the engine produces)."""
    return _check_contrib(-1)


def descent_step(module: InducedModule, x: ModElt) -> Dict[str, object]:
    """One maximal-term descent step: which ``y_k`` is nonzero with a smaller top."""
    top = x.top()
    out = {"t(x)": order.format_index(top), "ok": top == order.ZERO, "k": None}
    if top == order.ZERO:
        return out
    for k in (2, 3):
        y = module.act(module.hat_minus_m(k), x)
        if y.is_zero():
            continue
        yt = y.top()
        out[f"t(y{k})"] = order.format_index(yt)
        if order.precedes(yt, top) and out["k"] is None:
            out["k"], out["ok"] = k, True
    return out


def probe_simplicity(space: str = "Ind", params: CharacterParams = None, trials: int = 100, seed=0,
                     bounds: Bounds = None, points: int = 5, reach_trials: int = None,
                     force: bool = False) -> Tuple[str, dict]:
    """Randomized check of the maximal-term descent.

    Each trial draws ``x`` whose top component is ``v`` (the normalization the
    descent starts from) and checks that ``hat_2 - m_2`` or ``hat_3 - m_3``
    lowers the top.  The first ``reach_trials`` elements per point (default:
    all of them in V and W, two in Ind) are also run through
    :func:`rep.reaches_generator`.  Running out of budget there is recorded
    but is not a counterexample, so it does not decide the status.
    """
    if space not in rep.SPACES:
        raise ValueError(f"unknown space {space!r}")
    rng = _rng(seed, "probe", space)
    rejected: List[str] = []
    if params is not None:
        if not params.is_numeric():
            raise rep.ParameterError("the probe needs numeric parameters")
        if not params.conditions_hold and not force:
            raise rep.ParameterError("parameters violate the simplicity conditions: "
                                     + ", ".join(n for n, ok in params.conditions().items() if not ok))
        point_list = [params]
    else:
        point_list = [random_params(rng, log=rejected) for _ in range(points)]
    bounds = bounds or Bounds(max_weight=8, max_j=6, max_k=6)
    if reach_trials is None:
        reach_trials = trials if space != "Ind" else 2
    # in Ind the W-components grow with every descent step; keep those searches small
    reach_kw = {"max_steps": 12, "max_dim": 60} if space == "Ind" else {}
    indices = [i for i in order.up_to_weight(6) if i != order.ZERO]
    failures, summary, reach = [], [], []
    zero_top = 0
    for pn, p in enumerate(point_list):
        mod = InducedModule(p, space)
        descents = 0
        for n in range(trials):
            trng = _rng(seed, "probe", space, pn, n)
            if space == "Ind":
                x = element_with_top(trng, trng.choice(indices))
            else:
                x = random_element(trng, space)
            if x.is_zero():
                continue
            step = descent_step(mod, x)
            if x.top() == order.ZERO:
                zero_top += 1
            elif step["ok"]:
                descents += 1
            else:
                failures.append({"params": p.as_dict(), "trial": n, "x": render(x), "trace": step})
            if n < reach_trials:
                ok = rep.reaches_generator(mod, x, bounds, **reach_kw)
                reach.append({"point": pn, "trial": n, "reached_v": ok})
        summary.append({"params": p.as_dict(), "trials": trials, "descents": descents})
    details = {"space": space, "trials_per_point": trials, "points": summary,
               "trials_with_zero_top": zero_top, "rejected_points": len(rejected),
               "reaches_generator": {"attempted": len(reach),
                                     "reached": sum(r["reached_v"] for r in reach),
                                     "budget": {"max_weight": bounds.max_weight, "max_j": bounds.max_j,
                                                "max_k": bounds.max_k}}}
    if space == "Ind":
        p = point_list[0]
        witness_mod = InducedModule(p, "Ind")
        x = ModElt.basis("Ind", rep.key_word(order.eps(2), 0, 0))
        supp = set()
        for k in (2, 3):
            supp |= witness_mod.act(witness_mod.hat_minus_m(k), x).support()
        ok = order.eps(1) in supp
        details["witness l(-2)*v"] = {"eps_1 in supp(y2) or supp(y3)": ok}
        if not ok:
            failures.append({"x": "l(-2)*v", "problem": "eps_1 missing from supp(y2) and supp(y3)"})
    if space == "V" and params is not None and params.z * params.m3 == params.m4:
        mod = InducedModule(params, "V")
        inv = ModElt("V", {(1,): Fraction(1), (): params.m3 / params.z ** 2})
        details["invariant element"] = {"element": render(inv),
                                        "reached_v": rep.reaches_generator(mod, inv, bounds)}
    if failures:
        details["counterexamples"] = failures[:5]
        details["failures"] = len(failures)
        return FAIL, details
    return PASS, details


def check_probe_simplicity(seed=0, trials=None) -> Tuple[str, dict]:
    return probe_simplicity("Ind", trials=100 if trials is None else trials, seed=seed)


# -- registry and runner ------------------------------------------------------------------

CHECKS: Dict[str, Callable[..., Tuple[str, dict]]] = {
    "closure": check_closure,
    "bracket_jacobi": check_bracket_jacobi,
    "bracket_fock": check_bracket_fock,
    "character": check_character,
    "classify": check_classify,
    "eigen": check_eigen,
    "reducible": check_reducible,
    "w_kernels": check_w_kernels,
    "w_obstruction": check_w_obstruction,
    "w_obstruction_corrected": check_w_obstruction_corrected,
    "order_laws": check_order_laws,
    "descent_lemma": check_descent_lemma,
    "contrib": check_contrib,
    "contrib_corrected": check_contrib_corrected,
    "probe_simplicity": check_probe_simplicity,
}


def run_check(check_id: str, seed=0, trials: int = None) -> CheckReport:
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}; choose from {', '.join(CHECKS)}")
    start = time.perf_counter()
    try:
        status, details = CHECKS[check_id](seed=seed, trials=trials)
    except Exception as exc:  # reported, not raised: the battery keeps going
        status, details = ERROR, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = int((time.perf_counter() - start) * 1000)
    return CheckReport(check_id, status, details, {"seed": seed} if trials is None else
                       {"seed": seed, "trials": trials}, elapsed)


def run_all(seed=0, trials: int = None, ids: Sequence[str] = None) -> List[CheckReport]:
    return [run_check(cid, seed, trials) for cid in (ids or CHECKS)]


MUTATIONS = ("central_sign", "m5")


@contextlib.contextmanager
def mutated(name: str) -> Iterator[None]:
    """Temporarily inject a known defect: flip the central term, or add 1 to m_5."""
    if name not in MUTATIONS:
        raise KeyError(f"unknown mutation {name!r}; choose from {', '.join(MUTATIONS)}")
    saved_sign, saved_shift = algebra._CENTRAL_SIGN, dict(rep._CHARACTER_SHIFT)
    try:
        if name == "central_sign":
            algebra._CENTRAL_SIGN = -saved_sign
        else:
            rep._CHARACTER_SHIFT[5] = rep._CHARACTER_SHIFT.get(5, 0) + 1
        algebra.clear_caches()
        yield
    finally:
        algebra._CENTRAL_SIGN = saved_sign
        rep._CHARACTER_SHIFT.clear()
        rep._CHARACTER_SHIFT.update(saved_shift)
        algebra.clear_caches()
