import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bcdual.graded import (
    GENERATORS, BigradedModule, Element, Monomial, Window, free_module_span, gen, parse_exponent,
    parse_monomial,
)

STEMS = {"zeta": -1, "alpha": 3, "beta": 10, "w": 8, "v2": 16, "a35": 35, "u": -2}


def test_generator_table():
    assert len(GENERATORS) == 22
    for name, stem in STEMS.items():
        assert gen(name).stem == stem
    assert gen("beta").s == 2 and gen("alpha").s == 1
    for m, t in (("b0", 0), ("b36", 36), ("e8", 8), ("e36", 36), ("e44", 44), ("e48", 48)):
        assert gen(m).s == 0 and gen(m).t == t


def test_normalization_rules():
    w, v2h = Monomial.of("w"), Monomial.of("v2h")
    assert w * w == -Monomial.of("v2")
    assert v2h * v2h == Monomial.of("v2")
    assert str(parse_monomial("v2^(7/2)")) == "v2^(7/2)"
    assert parse_monomial("w^-7") == parse_monomial("w*v2^-4")
    assert parse_monomial("w^3") == -parse_monomial("w*v2")


def test_koszul_signs():
    x1, x2, a1 = (Monomial.of(n) for n in ("x1", "x2", "a1"))
    assert x1 * x2 == -(x2 * x1)
    assert (x1 * x1).is_zero()
    y1 = Monomial.of("y1")
    assert x1 * y1 == y1 * x1
    assert (x1 * a1) * x2 == x1 * (a1 * x2)


def test_aliases_and_parse():
    assert parse_monomial("α*β") == parse_monomial("alpha*beta")
    assert parse_monomial("ζ") == Monomial.of("zeta")
    with pytest.raises(ValueError):
        parse_monomial("nonsense^2")


def test_parse_exponent_forms():
    assert parse_exponent("(i+3)/2", "i") == (Fraction(1, 2), Fraction(3, 2))
    assert parse_exponent("2*i+1", "i") == (2, 1)
    assert parse_exponent("-7/2") == (0, Fraction(-7, 2))


names = st.sampled_from(["alpha", "beta", "w", "v2", "a35", "zeta", "x1", "y2", "u", "b36"])
monomials = st.lists(st.tuples(names, st.integers(-3, 3)), max_size=4).map(
    lambda fs: Monomial({n: (e if gen(n).kind == "invertible-polynomial" else abs(e) % (2 if gen(n).odd else 4))
                         for n, e in fs}))


@given(monomials)
def test_string_round_trip(m):
    if not m.is_zero():
        assert parse_monomial(str(m)) == m


@given(monomials, monomials)
def test_bidegree_is_additive(a, b):
    p = a * b
    if not p.is_zero():
        sa, ta = a.bidegree()
        sb, tb = b.bidegree()
        assert p.bidegree() == (sa + sb, ta + tb)


def test_element_arithmetic():
    e = Element.parse("x1 + omega*y1")
    assert str(e * Element.parse("x1")) == "omega*x1*y1"
    assert (e - e).is_zero()


def test_free_module_span_basic():
    mod = free_module_span(["beta", "w", "alpha"], ["1"], Window(0, 71, 0, 40))
    assert mod.dims()[(0, 0)] == 1
    assert sum(mod.stem_dims().values()) == len(list(mod.monomials()))
    assert sum(mod.stem_dims().values()) > 0


def test_free_module_span_rejections():
    w = Window(0, 50, 0, 10)
    with pytest.raises(ValueError):
        free_module_span(["w", "v2"], ["1"], w)
    with pytest.raises(ValueError):
        free_module_span(["u"], ["1"], Window(None, None, 0, 4))
    assert not free_module_span(["beta"], [], w).keys()


@settings(max_examples=25, deadline=None)
@given(st.integers(-100, 100))
def test_span_is_translation_invariant_under_the_period(shift):
    gens, mods = ["beta", "v2h", "zeta"], ["1", "alpha", "w*beta*a35"]
    a = free_module_span(gens, [parse_monomial(m) for m in mods], Window(shift, shift + 40, 0, 12))
    b = free_module_span(gens, [parse_monomial(m) for m in mods], Window(shift + 72, shift + 112, 0, 12))
    assert {(s, t + 72): d for (s, t), d in a.dims().items()} == b.dims()


def test_json_round_trip():
    mod = free_module_span(["beta", "v2"], [parse_monomial("w*alpha")], Window(-20, 60, 0, 8), "demo")
    data = json.loads(mod.dumps())
    assert set(data) == {"name", "field", "buckets"}
    back = BigradedModule.from_json(data)
    assert back.dims() == mod.dims()
    assert [str(m) for m in back.monomials()] == [str(m) for m in mod.monomials()]


def test_window_geometry():
    w = Window(-10, 10, 0, 5)
    assert w.contains(2, 4) and not w.contains(6, 8) and not w.contains(0, 11)
    assert w.padded(3, 1) == Window(-13, 13, 0, 6)
    assert w.padded(3, 1).shrunk(3, 1) == w
