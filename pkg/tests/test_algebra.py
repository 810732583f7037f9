import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from virasoro import fock
from virasoro.algebra import LieElt, UeaElt, bracket, commutator, normal_order, uea_mul
from virasoro.coeff import param
from virasoro.parse import render

l, c = LieElt.l, LieElt.c


def test_bracket_examples():
    assert bracket(l(2), l(3)) == l(5)
    assert bracket(l(2), l(-2)) == LieElt({0: Fraction(-4)}, Fraction(1, 2))
    assert bracket(c(), l(5)).is_zero()
    assert render(bracket(l(2), l(-2))) == "-4*l(0) + 1/2*c"


def test_normal_order_examples():
    assert render(normal_order((1, -1))) == "l(-1)*l(1) - 2*l(0)"
    assert normal_order((2, -2)) == UeaElt.word((-2, 2)) - 4 * UeaElt.word((0,)) + UeaElt({((), 1): Fraction(1, 2)})
    assert normal_order((-2, -1)).terms == {((-2, -1), 0): 1}


def test_uea_mul_examples():
    assert uea_mul(l(1), l(1)).terms == {((1, 1), 0): 1}
    assert commutator(l(1), l(-1)) == (-2 * l(0)).to_uea()
    assert uea_mul(c(), l(5)).terms == {((5,), 1): 1}


modes = st.integers(-8, 8)
lie = st.dictionaries(modes, st.integers(-3, 3), max_size=3).map(
    lambda d: LieElt({k: Fraction(v) for k, v in d.items()}))


@settings(max_examples=500, deadline=None)
@given(lie, lie, lie)
def test_jacobi_and_antisymmetry(x, y, w):
    assert (bracket(x, y) + bracket(y, x)).is_zero()
    s = bracket(x, bracket(y, w)) + bracket(y, bracket(w, x)) + bracket(w, bracket(x, y))
    assert s.is_zero()


def test_symbolic_coefficients():
    z = param("z")
    x = l(3) - z ** 2 * l(1)
    y = l(2) - z * l(1)
    assert bracket(x, y) == -1 * l(5) + 2 * z * l(4) - z ** 2 * l(3)


words = st.lists(st.integers(-4, 4), max_size=3).map(tuple)


@settings(max_examples=150, deadline=None)
@given(words, words, words)
def test_associativity(a, b, w):
    A, B, W = UeaElt.word(a), UeaElt.word(b), UeaElt.word(w)
    assert uea_mul(uea_mul(A, B), W) == uea_mul(A, uea_mul(B, W))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-5, 5), max_size=4).map(lambda w: tuple(sorted(w))), st.integers(0, 2))
def test_normal_order_identity_on_canonical_words(word, cpow):
    assert normal_order(word, cpow).terms == {(word, cpow): 1}


def test_commutator_matches_bracket():
    for i in range(-6, 7):
        for j in range(-6, 7):
            assert commutator(l(i), l(j)) == bracket(l(i), l(j)).to_uea()


def test_fock_realization_is_a_representation():
    rng = random.Random(2)
    for _ in range(5):
        state = {tuple(sorted(rng.randint(1, 3) for _ in range(rng.randint(0, 3)))): Fraction(rng.randint(1, 5))}
        p = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for i in range(-4, 5):
            for j in range(-4, 5):
                assert not fock.commutator_defect(l(i), l(j), state, p)
