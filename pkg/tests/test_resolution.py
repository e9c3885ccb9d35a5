from collections import Counter

import pytest

from bcdual.graded import Window, parse_monomial
from bcdual.resolution import (
    COLUMN, build_algebraic_E1, build_N_tower, expected_G21, filtered_degree, marker_of,
    exotic_detection_check, run_algebraic, sphere_tower_check, total_degree, tower_report,
)

EIGHT = {"1": (0, 0), "alpha": (1, 4), "w*alpha": (1, 12), "w*beta": (2, 20),
         "alpha*a35": (2, 40), "beta*a35": (3, 48), "w*beta*a35": (3, 56), "w*beta*alpha*a35": (4, 60)}


def g21_oracle(lo, hi, q_max):
    """(degree, stem) counts of beta^j v2^k g by direct enumeration."""
    out = Counter()
    for s, t in EIGHT.values():
        for j in range(q_max // 2 + 1):
            for k in range(-40, 40):
                q = 2 * j + s
                stem = 12 * j + 16 * k + t - q
                if q <= q_max and lo <= stem <= hi:
                    out[(q, stem)] += 1
    return out


WIN = Window(-20, 120, 0, 12)


@pytest.fixture(scope="module")
def algebraic():
    return run_algebraic(window=WIN)


def test_degrees():
    m = parse_monomial("alpha*w*b36")
    assert marker_of(m) == "b36"
    assert filtered_degree(m) == (1, 11 + 36)  # stem 3 + 8 + 35
    assert total_degree(m) == 2
    assert filtered_degree(parse_monomial("zeta*e8")) == (2, 8)
    with pytest.raises(ValueError):
        marker_of(parse_monomial("alpha"))


def test_columns_layout():
    cols = build_algebraic_E1(WIN)
    assert [c.filtration for c in cols] == [0, 1, 2, 3]
    assert [c.describe() for c in cols] == ["G24*b0", "G24*b36 + SD16*e8", "SD16*e36 + SD16*e44", "SD16*e48"]
    for c in cols:
        assert all(COLUMN[marker_of(m)] == c.filtration for m in c.entries())


def test_expected_module_matches_oracle():
    assert expected_G21(WIN) == dict(g21_oracle(-20, 120, 12))


def test_algebraic_run_converges(algebraic):
    assert algebraic.ok, algebraic.details[:5]
    assert algebraic.data["e3_high_filtration"] == 0


def test_named_differentials(algebraic):
    res = algebraic.result
    assert res.status(parse_monomial("w*b0"), 2) == "not a cycle"
    assert res.status(parse_monomial("e8"), 2) == "zero"
    assert res.status(parse_monomial("alpha*w*b36"), 3) == "not a cycle"
    assert res.status(parse_monomial("e48"), 3) == "zero"
    assert res.status(parse_monomial("b0"), 3) == "nonzero"


def test_missing_rule_breaks_convergence():
    from bcdual.specseq import load_rules
    rules = [r for r in load_rules("resolution") if r.page != 2]
    rep = run_algebraic(rules=rules, window=Window(-10, 60, 0, 8))
    assert not rep.ok


def test_algebraic_with_zeta():
    rep = run_algebraic(window=Window(-20, 80, 0, 8), zeta=True)
    assert rep.ok, rep.details[:5]


def test_sphere_tower_gives_v1():
    rep = sphere_tower_check(Window(-30, 80, 0, 4))
    assert rep.ok, rep.details[:5]


def test_truly_exotic_differential():
    rep = exotic_detection_check()
    assert rep.ok, rep.details
    assert rep.data["y (exotic)"] == "nonzero" and rep.data["zeta*y (exotic)"] == "zero"
    assert rep.data["zeta*y (plain)"] == "nonzero"


def test_N_tower_collapses():
    rep = build_N_tower(Window(-10, 100, 0, 2))
    assert rep.ok, rep.details[:5]
    assert rep.data["differentials"] == 0


def test_unknown_tower():
    with pytest.raises(KeyError):
        tower_report("nope")
