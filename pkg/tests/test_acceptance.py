"""Acceptance suite: one test per criterion, each with its runtime limit.

Run directly (``python tests/test_acceptance.py``) or through pytest; either
way a pass/fail line per criterion is printed at the end.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from virasoro import checks, rep, subalg
from virasoro.algebra import UeaElt
from virasoro.coeff import param, simplify_scalar
from virasoro.parse import parse_value, render
from virasoro.rep import Bounds, CharacterParams, InducedModule, ModElt


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


def test_criterion_01_closure():
    with Timer(5):
        assert subalg.check_closure(param("z"), 12) == []


def test_criterion_02_character():
    with Timer(5):
        assert rep.verify_character(CharacterParams.symbolic(), 12) == []


def test_criterion_03_classification():
    with Timer(60):
        result = subalg.classify_codim_one(9)
        assert result.a3_reduces and result.a4_reduces
        assert result.converse
        assert result.unsaturated["a3^6 - a3^5*a2^2"]


def test_criterion_04_eigenvalues():
    p = CharacterParams.symbolic()
    with Timer(10):
        for k in range(2, 7):
            op = rep.eigen_matrix(k, 10, p)
            assert op.is_upper_triangular()
            for n, d in enumerate(op.diagonal()):
                assert simplify_scalar(d - (p.m(k) + n * p.z ** k * (1 - k))) == 0


def test_criterion_05_reducible_direction():
    z, m3 = param("z"), param("m3")
    rng = checks._rng(0, "acceptance-5")
    budget = Bounds(max_k=8)
    with Timer(30):
        assert rep.check_reducible_restriction(CharacterParams.symbolic(m4=z * m3), 12) == []
        for _ in range(5):
            q = checks.degenerate_params(rng)
            x = ModElt("V", {(1,): Fraction(1), (): q.m3 / q.z ** 2})
            assert not rep.reaches_generator(InducedModule(q, "V"), x, budget)
        for _ in range(5):
            while True:
                q = checks.random_params(rng, valid=False)
                if q.z * q.m3 != q.m4:
                    break
            assert rep.reaches_generator(InducedModule(q, "V"), ModElt("V", {(1,): Fraction(1)}), budget)


def test_criterion_06_w_kernels():
    p = CharacterParams.symbolic()
    W = InducedModule(p, "W")
    rng = checks._rng(0, "acceptance-6")
    with Timer(60):
        assert W.act(W.hat_minus_m(2), rep.y2(p)) == W.v()
        assert W.act(W.hat_minus_m(3), rep.y3(p)) == p.z * W.v()
        # the two solution sets y2 + <v> and y3 + <v> meet only where condition 4 fails
        diff = (rep.y2(p) - rep.y3(p)).coeff((1,))
        assert diff != 0
        assert simplify_scalar(diff).subs({"m4": 2 * p.z * p.m3 - p.z ** 2 * p.m2}) == 0
        for _ in range(20):
            q = checks.random_params(rng, theta=False)
            ops = [rep.hat_minus_m_operator(k, q, "W", 6, 6) for k in (2, 3)]
            for op in ops:
                basis = rep.kernel(op)
                assert len(basis) == 1 and set(basis[0].terms) == {()}
            assert rep.solve_affine(ops, [ModElt.v("W"), q.z * ModElt.v("W")]) is None
            assert (rep.y2(q) - rep.y3(q)).coeff((1,)) != 0


def test_criterion_07_two_equation_obstruction():
    p = CharacterParams.symbolic()
    t = param("t")
    with Timer(10):
        W, x1, x2 = checks._obstruction_elements(p, t)
        r1, r2 = checks.obstruction_rhs(p, t)
        assert W.act(W.hat_minus_m(2), x1) == r1
        assert W.act(W.hat_minus_m(3), x2) == r2
        c1, c2 = x1.coeff((0, 0)), x2.coeff((0, 0))
        assert simplify_scalar(c1 - c2) != 0
        on_locus = simplify_scalar(c1 - c2).subs({"m4": 2 * p.z * p.m3 - p.z ** 2 * p.m2})
        assert on_locus == 0


def test_criterion_08_order_and_descent():
    with Timer(30):
        assert checks.run_check("order_laws").status == "pass"
        report = checks.run_check("descent_lemma")
        assert report.status == "pass" and report.details["pairs"] == 500


def test_criterion_09_contribution_identities():
    with Timer(30):
        status, details = checks.check_contrib()
    assert status == "pass", (f"{details.get('failures')} of {details['cases']} cases differ; "
                              f"first: {details.get('counterexamples', [None])[0]}")


def test_criterion_10_descent_probe():
    with Timer(120):
        status, details = checks.probe_simplicity("Ind", trials=100, seed=0, points=5)
    assert len(details["points"]) == 5
    assert status == "pass" and "failures" not in details
    assert all(pt["descents"] == 100 for pt in details["points"])


def test_criterion_11_mutation_sensitivity():
    baseline = {r.id for r in checks.run_all() if r.status != "pass"}
    for name in checks.MUTATIONS:
        with checks.mutated(name):
            reports = checks.run_all()
        caught = [r for r in reports if r.status == "fail" and r.id not in baseline]
        assert caught, name
        assert all(r.details.get("counterexamples") for r in caught)


def _random_element(rng):
    def scalar():
        s = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if rng.random() < 0.4:
            s = s + rng.randint(1, 4) * param(rng.choice(["z", "m2", "m3", "m4", "theta"]))
        return s
    kind = rng.choice(["uea", "V", "W", "Ind"])
    if kind == "uea":
        out = UeaElt()
        for _ in range(rng.randint(1, 3)):
            word = tuple(sorted(rng.randint(-4, 4) for _ in range(rng.randint(1, 3))))
            out = out + UeaElt({(word, rng.randint(0, 1)): scalar()})
        return out
    terms = {}
    for _ in range(rng.randint(1, 4)):
        neg = tuple(sorted(-rng.randint(1, 4) for _ in range(rng.randint(0, 3)))) if kind == "Ind" else ()
        j = rng.randint(0, 3) if kind != "V" else 0
        terms[neg + (0,) * j + (1,) * rng.randint(0, 3)] = scalar()
    return ModElt(kind, terms)


def test_criterion_12_round_trip_and_stable_reports():
    rng = random.Random(2024)
    done = 0
    while done < 500:
        x = _random_element(rng)
        if x.is_zero():
            continue
        done += 1
        space = x.space if isinstance(x, ModElt) else "Ind"
        assert parse_value(render(x), space=space) == x
    cmd = [sys.executable, "-m", "virasoro.cli", "check", "all", "--no-timing", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.stdout and first.stdout == second.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
