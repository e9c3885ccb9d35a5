import pytest

from bcdual import cohomology as coh
from bcdual.field import OMEGA, ONE
from bcdual.graded import Element, Monomial, Window

SMALL = Window(None, None, 0, 6, -48, 48)
GENS = ["u", "x1", "x2", "y1", "y2", "a1", "a2", "zeta1", "zeta2"]


def images(action):
    return {n: action.image(n) for n in GENS}, action.semilinear, action.swap


def same(a, b):
    return images(a) == images(b)


def test_action_orders_and_semidihedral_relation():
    assert same(coh.OMEGA_STAR.power(8), coh.IDENTITY)
    assert not same(coh.OMEGA_STAR.power(4), coh.IDENTITY)
    assert same(coh.PHI_STAR.power(2), coh.IDENTITY)
    lhs = coh.PHI_STAR.compose(coh.OMEGA_STAR).compose(coh.PHI_STAR)
    assert same(lhs, coh.OMEGA_STAR.power(3))


def test_semilinear_action_applies_frobenius():
    x = Element(Monomial.of("y1") * OMEGA)
    assert coh.PHI_STAR.apply(x) == Element(Monomial.of("y2") * -(OMEGA ** 3))
    assert coh.OMEGA_STAR.apply(Element(Monomial.of("u"))) == Element(Monomial.of("u") * OMEGA)


def sd16_oracle(tmin, tmax):
    """u^k spans an invariant line iff omega^k = 1; Frobenius then cuts F9 down to F3."""
    return {(0, t): 1 for t in range(tmin, tmax + 1) if t % 2 == 0 and (-t // 2) % 8 == 0}


def test_sd16_invariants_match_direct_count():
    inv = coh.subgroup_cohomology("SD16", Window(None, None, 0, 0, -100, 100))
    assert inv.dims() == sd16_oracle(-100, 100)


@pytest.mark.parametrize("subgroup", coh.SUBGROUPS)
def test_subgroup_matches_free_module_description(subgroup):
    rep = coh.check_against_expected(subgroup, SMALL)
    assert rep["ok"], rep
    assert rep["total_dim"] > 0


def test_detection_image_is_closed_under_the_action():
    assert coh.verify_rho_image(SMALL)["ok"]


def test_eigensplit_small_window():
    assert coh.eigensplit_check(SMALL)["ok"]


def test_eigenspace_split_dimensions_and_trivial_involution():
    space = coh.subgroup_cohomology("G2^0", SMALL)
    plus, minus = coh.eigenspace_split(space, coh.OMEGA_STAR)
    for key in space.keys():
        assert plus.dim(key) + minus.dim(key) == space.dim(key)
    plus, minus = coh.eigenspace_split(space, coh.IDENTITY)
    assert plus.dims() == space.dims() and not any(minus.dims().values())


def test_realizations_are_invariant_where_expected():
    ring = coh.build_c3_cohomology(SMALL)
    for name in ("alpha", "beta", "w"):
        (rep,) = coh.realize(Monomial.of(name), 1)
        key = Monomial.of(name).bidegree()
        v = ring.vector(key, (rep,))
        for g in coh.SUBGROUP_GENERATORS["Q8"]:
            assert ((v @ ring.operator(g, key)) % 3 == v).all(), (name, g.name)


def test_unknown_subgroup():
    with pytest.raises(KeyError):
        coh.subgroup_cohomology("G48", SMALL)


def test_vector_parts_round_trip():
    ring = coh.build_centralizer_cohomology(SMALL)
    key = (2, 0)
    el = Element.parse("y1 + omega*x1*a1")
    assert ring.parts(key, ring.vector(key, (el,)))[0] == el
