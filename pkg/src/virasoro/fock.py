"""Free-boson Fock space, a concrete representation used to test the bracket.

Oscillators satisfy ``[a_m, a_n] = m delta_{m+n,0}`` with ``a_0`` acting as
the momentum ``p``.  The Sugawara operators ``L_n = 1/2 sum :a_{n-k} a_k:``
satisfy ``[L_m, L_n] = (m-n) L_{m+n} + (m^3-m)/12 delta_{m+n,0}``, so
``l_i -> -L_i``, ``c -> 1`` represents the bracket in :mod:`virasoro.algebra`.
Unlike the Jacobi identity this detects the sign of the central term.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .algebra import LieElt, _add_into

State = Dict[Tuple[int, ...], Fraction]  # sorted creator levels -> coefficient


def vacuum() -> State:
    return {(): Fraction(1)}


def level(state: State) -> int:
    return max((sum(m) for m in state), default=0)


def oscillator(n: int, state: State, p: Fraction) -> State:
    out: State = {}
    for mono, c in state.items():
        if n < 0:
            _add_into(out, tuple(sorted(mono + (-n,))), c)
        elif n == 0:
            _add_into(out, mono, c * p)
        else:
            k = mono.count(n)
            if k:
                rest = list(mono)
                rest.remove(n)
                _add_into(out, tuple(rest), c * n * k)
    return out


def virasoro_op(n: int, state: State, p: Fraction) -> State:
    """``L_n`` applied to ``state``."""
    top = max(level(state), 0)
    out: State = {}
    s_min = -(-n // 2)  # ceil(n/2), so r = n - s <= s
    for s in range(s_min, max(top, s_min) + 1):
        r = n - s
        weight = Fraction(1, 2) if r == s else Fraction(1)
        for mono, c in oscillator(r, oscillator(s, state, p), p).items():
            _add_into(out, mono, c * weight)
    return out


def act(x: LieElt, state: State, p: Fraction) -> State:
    """Image of ``x`` under ``l_i -> -L_i``, ``c -> 1``."""
    out: State = {}
    for i, c in x.modes.items():
        for mono, d in virasoro_op(i, state, p).items():
            _add_into(out, mono, -c * d)
    if x.central:
        for mono, d in state.items():
            _add_into(out, mono, x.central * d)
    return out


def commutator_defect(x: LieElt, y: LieElt, state: State, p: Fraction) -> State:
    """``[rho(x), rho(y)] - rho([x, y])`` on ``state``; zero for a representation."""
    from .algebra import bracket
    out: State = {}
    for mono, c in act(x, act(y, state, p), p).items():
        _add_into(out, mono, c)
    for mono, c in act(y, act(x, state, p), p).items():
        _add_into(out, mono, -c)
    for mono, c in act(bracket(x, y), state, p).items():
        _add_into(out, mono, -c)
    return out
