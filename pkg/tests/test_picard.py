import itertools

import pytest
from hypothesis import given, strategies as st

from bcdual.field import F9
from bcdual.picard import (
    P, Q, TRIVIAL, ExoticClass, NotASuspension, PicardWord, candidates, det_twist_invariance_check,
    elements, g24_shift, smash, solution_text, solve_brown_comenetz, target_shift, v1_shift,
)


def test_group_is_z3_squared():
    els = elements()
    assert len(set(els)) == 9
    for x, y in itertools.product(els, repeat=2):
        assert smash(x, y) == smash(y, x)
        assert smash(x, TRIVIAL) == x
    for x in els:
        assert x ** 3 == TRIVIAL
        assert x * x ** 2 == TRIVIAL


def test_coordinates():
    assert (P.c1, P.c2) == (2, None)
    assert (Q.c1, Q.c2) == (0, 1)
    assert Q.is_truly_exotic() and not P.is_truly_exotic()
    truly = [x for x in elements() if x.is_truly_exotic()]
    assert truly == [ExoticClass(0, b) for b in range(3)]


def test_g24_shift_is_homomorphism():
    table = {x: g24_shift(x) for x in elements()}
    assert table[P] == 48 and table[Q] == 0 and table[P ** 2] == 24
    for x, y in itertools.product(elements(), repeat=2):
        assert g24_shift(x * y) == (table[x] + table[y]) % 72


def test_v1_shift():
    assert v1_shift(PicardWord(d=1)) == 72
    assert v1_shift(PicardWord(a=1)) == 48
    assert v1_shift(PicardWord(m=144)) == 0
    with pytest.raises(NotASuspension):
        v1_shift(PicardWord(b=1))


def test_brown_comenetz_solution():
    assert target_shift() == -22
    rows = candidates()
    assert len(rows) == 9 and sum(r["ok"] for r in rows) == 1
    assert sum(r["shift"] is None for r in rows) == 6
    w = solve_brown_comenetz()
    assert (w.m, w.d, w.a, w.b) == (2, 1, 1, 0)
    assert str(w) == "S^2 ^ S<det> ^ P"
    text = solution_text(w)
    assert text[1] == "48*1+74 = 122 == -22 (mod 144)"
    assert text[2] == "I_2 ^ V(1) = Sigma^-22 V(1)"


def test_det_twist():
    assert det_twist_invariance_check().ok
    assert not det_twist_invariance_check(exponents=[2]).ok
    assert not det_twist_invariance_check(sample_units=[F9(0)]).ok


@given(st.integers(-500, 500), st.integers(-5, 5), st.integers(0, 2))
def test_v1_shift_periodic(m, d, a):
    assert v1_shift(PicardWord(m, d, a)) == v1_shift(PicardWord(m + 144, d + 2, a))
    assert v1_shift(PicardWord(m, d, a) + PicardWord(0, 0, 3 - a)) == (m + 72 * d + 144) % 144
