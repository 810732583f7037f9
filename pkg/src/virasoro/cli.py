"""Command-line front end: ``vir <verb> ...``.

Exit codes: 0 success, 1 a check (or solve) came back negative, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import checks, order, rep, subalg
from .algebra import LieElt, UeaElt, bracket
from .coeff import as_fraction
from .parse import ParseError, parse_value, render, render_json_obj
from .rep import Bounds, CharacterParams, InducedModule, ModElt

PARAM_NAMES = ("z", "m2", "m3", "m4", "theta", "t")


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _add_params(p: argparse.ArgumentParser):
    for name in PARAM_NAMES:
        p.add_argument(f"--{name}", type=_rational, default=None, metavar="Q")


def _add_format(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_bounds(p: argparse.ArgumentParser, weight=None, j=None, k=None):
    p.add_argument("--max-weight", type=int, default=weight)
    p.add_argument("--max-j", type=int, default=j)
    p.add_argument("--max-k", type=int, default=k)


def _values(args) -> Dict[str, Fraction]:
    return {n: getattr(args, n) for n in PARAM_NAMES if getattr(args, n, None) is not None}


def _params(args, numeric: bool = False) -> CharacterParams:
    vals = _values(args)
    if vals.get("z", 1) == 0:
        raise UsageError("--z must be nonzero")
    if numeric:
        needed = ["z", "m2", "m3", "m4"] + (["theta"] if args.module == "Ind" else [])
        missing = [n for n in needed if n not in vals]
        if missing:
            raise UsageError("this verb needs numeric parameters; missing " + ", ".join(f"--{n}" for n in missing))
        return CharacterParams.numeric(vals["z"], vals["m2"], vals["m3"], vals["m4"], vals.get("theta", 0))
    return CharacterParams.symbolic(**{k: v for k, v in vals.items() if k != "t"})


def _module(args, numeric: bool = False) -> InducedModule:
    return InducedModule(_params(args, numeric), args.module)


def _eval(text: str, args, module: InducedModule = None):
    return parse_value(text, _values(args), module, getattr(args, "module", "Ind"))


def _as_lie(x, text: str) -> LieElt:
    if isinstance(x, LieElt):
        return x
    if not isinstance(x, UeaElt):
        raise UsageError(f"not a Lie algebra element: {text!r}")
    modes, central = {}, Fraction(0)
    for (word, cpow), c in x.terms.items():
        if len(word) == 1 and cpow == 0:
            modes[word[0]] = c
        elif not word and cpow == 1:
            central = c
        else:
            raise UsageError(f"not a Lie algebra element: {text!r}")
    return LieElt(modes, central)


def _as_uea(x, text: str) -> UeaElt:
    if isinstance(x, (LieElt, UeaElt)):
        return x if isinstance(x, UeaElt) else x.to_uea()
    if isinstance(x, ModElt):
        raise UsageError(f"expected an operator, got a module element: {text!r}")
    return UeaElt.one().scale(x)


def _as_mod(x, text: str, space: str) -> ModElt:
    if not isinstance(x, ModElt):
        raise UsageError(f"expected a module element ending in v: {text!r}")
    return x


def _bounds(args) -> Bounds:
    return Bounds(args.max_weight, args.max_j, args.max_k)


def _emit(obj, args, text: str):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


# -- verbs ---------------------------------------------------------------------------

def cmd_bracket(args) -> int:
    x = _as_lie(_eval(args.x, args), args.x)
    y = _as_lie(_eval(args.y, args), args.y)
    r = bracket(x, y)
    _emit(render_json_obj(r), args, render(r))
    return 0


def cmd_normal_order(args) -> int:
    x = _as_uea(_eval(args.expr, args), args.expr)
    _emit(render_json_obj(x), args, render(x))
    return 0


def cmd_act(args) -> int:
    module = _module(args)
    u = _as_uea(_eval(args.op, args, module), args.op)
    x = _as_mod(_eval(args.element, args, module), args.element, args.module)
    b = _bounds(args)
    r = module.act(u, x, b if any(v is not None for v in (b.max_weight, b.max_j, b.max_k)) else None)
    _emit(render_json_obj(r), args, render(r))
    return 0


def _domain(args) -> Bounds:
    b = _bounds(args)
    if b.max_k is None or (args.module != "V" and b.max_j is None) or (args.module == "Ind" and b.max_weight is None):
        raise UsageError(f"--module {args.module} needs "
                         + {"V": "--max-k", "W": "--max-j and --max-k",
                            "Ind": "--max-weight, --max-j and --max-k"}[args.module])
    return b


def cmd_kernel(args) -> int:
    module = _module(args, numeric=True)
    u = _as_uea(_eval(args.op, args, module), args.op)
    op = rep.image_operator(module, u, _domain(args))
    basis = rep.kernel(op)
    _emit({"dimension": len(basis), "basis": [render_json_obj(b) for b in basis]}, args,
          "\n".join([f"dimension {len(basis)}"] + [render(b) for b in basis]))
    return 0


def cmd_solve(args) -> int:
    if len(args.pairs) % 2:
        raise UsageError("solve takes operator/target pairs")
    module = _module(args, numeric=True)
    domain = _domain(args)
    ops, targets = [], []
    for n in range(0, len(args.pairs), 2):
        u = _as_uea(_eval(args.pairs[n], args, module), args.pairs[n])
        target = _as_mod(_eval(args.pairs[n + 1], args, module), args.pairs[n + 1], args.module)
        op = rep.image_operator(module, u, domain)
        extra = [w for w in sorted(target.terms, key=rep.word_sort_key) if w not in op.codomain]
        op.codomain.extend(extra)
        op.rows.extend([Fraction(0)] * len(op.domain) for _ in extra)
        ops.append(op)
        targets.append(target)
    result = rep.solve_affine(ops, targets)
    if result is None:
        _emit({"solvable": False}, args, "no solution within the truncation")
        return 1
    particular, kernel = result
    _emit({"solvable": True, "particular": render_json_obj(particular),
           "kernel": [render_json_obj(k) for k in kernel]}, args,
          "\n".join([f"particular {render(particular)}", f"kernel dimension {len(kernel)}"]
                    + [f"  {render(k)}" for k in kernel]))
    return 0


def _report_out(reports: Sequence[checks.CheckReport], args) -> int:
    timing = not args.no_timing
    for r in reports:
        print(r.to_json(timing) if args.format == "json" else r.to_text(timing))
    return 0 if all(r.passed for r in reports) else 1


def cmd_check(args) -> int:
    if args.id != "all" and args.id not in checks.CHECKS:
        raise UsageError(f"unknown check {args.id!r}; choose from all, {', '.join(checks.CHECKS)}")
    ids = None if args.id == "all" else [args.id]
    if args.mutate:
        with checks.mutated(args.mutate):
            reports = checks.run_all(args.seed, args.trials, ids)
    else:
        reports = checks.run_all(args.seed, args.trials, ids)
    return _report_out(reports, args)


def cmd_probe(args) -> int:
    given = _values(args)
    params = _params(args, numeric=True) if given else None
    b = Bounds(args.max_weight, args.max_j, args.max_k)
    import time
    start = time.perf_counter()
    try:
        status, details = checks.probe_simplicity(args.module, params, args.trials, args.seed, b,
                                                  force=args.force)
    except rep.ParameterError as exc:
        raise UsageError(str(exc)) from exc
    report = checks.CheckReport("probe_simplicity", status, details,
                                {"seed": args.seed, "trials": args.trials},
                                int((time.perf_counter() - start) * 1000))
    return _report_out([report], args)


def cmd_classify(args) -> int:
    if args.kmax < 9:
        raise UsageError("--kmax must be at least 9")
    result = subalg.classify_codim_one(args.kmax, full_ideal=args.full_ideal)
    d = result.as_dict()
    d["passed"] = result.passed
    lines = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in d.items()]
    _emit(d, args, "\n".join(lines))
    return 0 if result.passed else 1


def cmd_compare(args) -> int:
    try:
        i, j = order.parse_index(args.i), order.parse_index(args.j)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    word = {order.LESS: "less", order.EQUAL: "equal", order.GREATER: "greater"}[order.compare(i, j)]
    _emit({"result": word, "i": order.format_index(i), "j": order.format_index(j),
           "weights": [order.weight(i), order.weight(j)], "degrees": [order.degree(i), order.degree(j)]},
          args, word)
    return 0


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vir", description="Exact computations with the Virasoro algebra "
                                     "and its induced modules Ind_{z,theta}(C_m).")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bracket", help="Lie bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    _add_params(p)
    _add_format(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("normal-order", help="rewrite a product into PBW order")
    p.add_argument("expr")
    _add_params(p)
    _add_format(p)
    p.set_defaults(func=cmd_normal_order)

    p = sub.add_parser("act", help="act with an operator on a module element")
    p.add_argument("op")
    p.add_argument("element")
    p.add_argument("--module", choices=rep.SPACES, default="Ind")
    _add_params(p)
    _add_bounds(p)
    _add_format(p)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("kernel", help="kernel of an operator on a truncated module (numeric parameters)")
    p.add_argument("op")
    p.add_argument("--module", choices=rep.SPACES, default="W")
    _add_params(p)
    _add_bounds(p)
    _add_format(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("solve", help="solve op_1 x = target_1, op_2 x = target_2, ... in a truncation")
    p.add_argument("pairs", nargs="+", metavar="OP TARGET")
    p.add_argument("--module", choices=rep.SPACES, default="W")
    _add_params(p)
    _add_bounds(p)
    _add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="run one check of the battery, or all of them")
    p.add_argument("id")
    p.add_argument("--seed", default="0")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--mutate", choices=checks.MUTATIONS, default=None,
                   help="inject a known defect before running")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")
    _add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("probe", help="randomized maximal-term descent probe")
    p.add_argument("--module", choices=rep.SPACES, default="Ind")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", default="0")
    p.add_argument("--force", action="store_true", help="allow parameters violating the simplicity conditions")
    p.add_argument("--no-timing", action="store_true")
    _add_params(p)
    _add_bounds(p, 8, 6, 6)
    _add_format(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("classify-subalgebra", help="Groebner classification of the subalgebras a_z")
    p.add_argument("--kmax", type=int, default=9)
    p.add_argument("--full-ideal", action="store_true", help="also run the 8-variable ideal (resource capped)")
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare-index", help="compare two multi-indices, e.g. [0,1] [2]")
    p.add_argument("i")
    p.add_argument("j")
    _add_format(p)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "seed", None) is not None and str(args.seed).lstrip("-").isdigit():
        args.seed = int(args.seed)
    try:
        return args.func(args)
    except (UsageError, ParseError, rep.ParameterError, rep.InadmissibleError, rep.BoundsOverflow,
            ValueError, ZeroDivisionError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"vir {args.verb}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
