from fractions import Fraction

import pytest

from virasoro import rep
from virasoro.algebra import LieElt, UeaElt, bracket, hat, uea_mul
from virasoro.checks import _rng, degenerate_params, random_element, random_params
from virasoro.coeff import simplify_scalar
from virasoro.rep import (
    Bounds,
    BoundsOverflow,
    CharacterParams,
    InadmissibleError,
    InducedModule,
    ModElt,
    ParameterError,
    character_value,
    eigen_matrix,
    eigenvalue,
    hat_minus_m_operator,
    kernel,
    solve_affine,
    verify_character,
)

P = CharacterParams.symbolic()
z, m2, m3, m4, theta = P.z, P.m2, P.m3, P.m4, P.theta


def test_character_values():
    assert character_value(P, 3) == m3
    assert character_value(P, 4) == m4
    assert character_value(P, 5) == -m3 * z ** 2 + 2 * m4 * z
    # the k > 4 formula specialises to m3 and m4 at k = 3, 4
    for k in (3, 4):
        assert -(k - 4) * m3 * z ** (k - 3) + (k - 3) * m4 * z ** (k - 4) == character_value(P, k)


def test_verify_character():
    assert verify_character(P, 12) == []
    bumped = CharacterParams(z, m2, m3, m4, shifts=((5, Fraction(1)),))
    assert verify_character(bumped, 6)
    zero = CharacterParams.numeric(1, 0, 0, 0)
    assert verify_character(zero, 6) == []


def test_params_validation():
    with pytest.raises(ParameterError):
        CharacterParams.numeric(0, 1, 1, 1)
    p = CharacterParams.numeric(1, 1, 2, 2)
    assert not p.conditions()["z*m3 != m4"]
    assert not p.conditions()["2*z*m2 != m3"]
    assert not p.conditions_hold


def test_act_examples():
    V = InducedModule(P, "V")
    assert V.act(hat(2, z), V.v()) == m2 * V.v()
    assert V.act(1, ModElt("V", {(1, 1): 1})) == ModElt("V", {(1, 1, 1): 1})
    W = InducedModule(P, "W")
    x = ModElt("W", {(0,): z, (1,): Fraction(-1)})
    assert W.act(W.hat_minus_m(2), x) == (m3 - 2 * z * m2) * W.v()
    assert W.act(W.hat_minus_m(3), x) == (2 * m4 - 3 * z * m3) * W.v()


def test_inadmissible_modes():
    V = InducedModule(P, "V")
    with pytest.raises(InadmissibleError):
        V.act(0, V.v())
    W = InducedModule(P, "W")
    with pytest.raises(InadmissibleError):
        W.act(-1, W.v())
    with pytest.raises(InadmissibleError):
        W.act(UeaElt({((), 1): Fraction(1)}), W.v())


def test_bounds_overflow_reported():
    Ind = InducedModule(P, "Ind")
    with pytest.raises(BoundsOverflow):
        Ind.act(-3, Ind.v(), Bounds(max_weight=2, max_j=1, max_k=1))


def test_eigen_matrix_examples():
    op = eigen_matrix(2, 1, P)
    assert op.rows == [[m2, -m3], [0, m2 - z ** 2]]
    assert eigen_matrix(2, 0, P).rows == [[m2]]


@pytest.mark.parametrize("k", range(2, 7))
def test_eigen_triangular_with_expected_diagonal(k):
    op = eigen_matrix(k, 10, P)
    assert op.is_upper_triangular()
    diag = op.diagonal()
    for n, d in enumerate(diag):
        assert simplify_scalar(d - eigenvalue(P, k, n)) == 0
    assert len({str(d) for d in diag}) == len(diag)


def test_kernel_examples():
    rng = _rng(0, "rep-kernel")
    for _ in range(3):
        p = random_params(rng, theta=False)
        for k in (2, 3):
            basis = kernel(hat_minus_m_operator(k, p, "W", 6, 6))
            assert len(basis) == 1 and set(basis[0].terms) == {()}
        basis = kernel(hat_minus_m_operator(2, p, "W", 0, 6))
        assert len(basis) == 1 and set(basis[0].terms) == {()}


def test_kernel_needs_numeric_parameters():
    with pytest.raises(ParameterError):
        kernel(hat_minus_m_operator(2, P, "W", 1, 1))


def test_solve_affine_examples():
    rng = _rng(0, "rep-solve")
    for _ in range(3):
        p = random_params(rng, theta=False)
        v = ModElt.v("W")
        W = InducedModule(p, "W")
        op2 = hat_minus_m_operator(2, p, "W", 3, 3)
        op3 = hat_minus_m_operator(3, p, "W", 3, 3)
        x, ker = solve_affine([op2], [v])
        assert len(ker) == 1
        diff = x - rep.y2(p)
        assert set(diff.terms) <= {()}
        assert W.act(W.hat_minus_m(2), x) == v
        x, _ = solve_affine([op3], [p.z * v])
        assert set((x - rep.y3(p)).terms) <= {()}
        assert solve_affine([op2, op3], [v, p.z * v]) is None


def test_closed_forms_symbolic():
    W = InducedModule(P, "W")
    assert W.act(W.hat_minus_m(2), rep.y2(P)) == W.v()
    assert W.act(W.hat_minus_m(3), rep.y3(P)) == z * W.v()


def test_closed_forms_undefined_on_bad_locus():
    with pytest.raises(ZeroDivisionError):
        rep.y2(CharacterParams.numeric(1, 1, 2, 5))
    with pytest.raises(ZeroDivisionError):
        rep.y3(CharacterParams.numeric(1, 1, 2, 3))


SPACE_MODES = {"V": (1, 4), "W": (0, 4), "Ind": (-3, 3)}


@pytest.mark.parametrize("space", ["V", "W", "Ind"])
def test_module_axiom(space):
    rng = _rng(0, "axiom", space)
    lo, hi = SPACE_MODES[space]
    for _ in range(25):
        p = random_params(rng)
        M = InducedModule(p, space)
        u = UeaElt.word(tuple(rng.randint(lo, hi) for _ in range(rng.randint(1, 2))))
        w = UeaElt.word(tuple(rng.randint(lo, hi) for _ in range(rng.randint(1, 2))))
        x = random_element(rng, space, terms=2, max_weight=3, max_j=2, max_k=2)
        assert M.act(uea_mul(u, w), x) == M.act(u, M.act(w, x))


@pytest.mark.parametrize("space", ["V", "W", "Ind"])
def test_lie_compatibility(space):
    rng = _rng(0, "lie", space)
    lo, hi = SPACE_MODES[space]
    for _ in range(40):
        p = random_params(rng)
        M = InducedModule(p, space)
        a, b = rng.randint(lo, hi), rng.randint(lo, hi)
        br = bracket(LieElt.l(a), LieElt.l(b))
        if space != "Ind":
            br = LieElt(br.modes)
            if br.central or (a + b == 0 and a ** 3 != a):
                continue
        x = random_element(rng, space, terms=3, max_weight=3, max_j=2, max_k=2)
        assert M.act(br, x) == M.act(a, M.act(b, x)) - M.act(b, M.act(a, x))


def test_symbolic_lie_compatibility():
    M = InducedModule(P, "Ind")
    x = ModElt("Ind", {(-1, 0, 1): Fraction(1), (): Fraction(2)})
    for a, b in [(2, -2), (3, -1), (2, 1), (4, 0)]:
        br = bracket(LieElt.l(a), LieElt.l(b))
        assert M.act(br, x) == M.act(a, M.act(b, x)) - M.act(b, M.act(a, x))


def test_central_element_acts_by_theta():
    rng = _rng(0, "theta")
    c = UeaElt({((), 1): Fraction(1)})
    for _ in range(20):
        p = random_params(rng)
        M = InducedModule(p, "Ind")
        x = random_element(rng, "Ind", max_weight=4)
        assert M.act(c, x) == p.theta * x


def test_reaches_generator_examples():
    rng = _rng(0, "reach")
    b = Bounds(max_k=8)
    for _ in range(3):
        while True:
            p = random_params(rng, valid=False)
            if p.z * p.m3 != p.m4:
                break
        V = InducedModule(p, "V")
        assert rep.reaches_generator(V, ModElt("V", {(1,): 1}), b)
        assert rep.reaches_generator(V, V.v(), b)
        q = degenerate_params(rng)
        Vq = InducedModule(q, "V")
        x = ModElt("V", {(1,): Fraction(1), (): q.m3 / q.z ** 2})
        assert not rep.reaches_generator(Vq, x, b)
    with pytest.raises(ValueError):
        rep.reaches_generator(V, ModElt("V"), b)


def test_reducible_restriction():
    sym = CharacterParams.symbolic(m4=z * m3)
    assert rep.check_reducible_restriction(sym, 12) == []
    assert rep.check_reducible_restriction(P, 5)


def test_normalize_top_produces_v_component():
    rng = _rng(0, "normalize")
    from virasoro.checks import element_with_top
    for top in [(1,), (0, 1), (2,)]:
        p = random_params(rng)
        M = InducedModule(p, "Ind")
        x = element_with_top(rng, top, max_weight=2, max_j=1, max_k=1)
        x = x + ModElt("Ind", {rep.key_word(top, 1, 1): Fraction(3)})
        y = rep.normalize_top(M, x, Bounds(max_weight=4, max_j=6, max_k=6))
        assert y is not None
        assert y.top() == top and y.component(top) == ModElt.v("W")
