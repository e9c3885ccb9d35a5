from collections import Counter

import pytest

from bcdual.graded import Window, parse_monomial
from bcdual.specseq import (
    check_periodicity, check_self_duality, e2_page, eigen_split_table, expand, homotopy_table,
    load_rules, parse_rule, parse_rules, run, table_from_dims, tensor_with_exterior, validate_rules,
)
from bcdual.verify import G24_PERIOD_STEMS, corrected_families, eight_family_dims

# Independent oracles: the differentials are monomial-to-monomial with distinct
# targets, so the pages can be computed by deleting source/target pairs from
# index sets, with no linear algebra at all.


def g24_oracle(lo, hi):
    """Classes (j, k, e) = beta^j w^k alpha^e.

    The index box is much larger than the counted region so that no counted
    class loses its partner to the box edge.
    """
    cur = {(j, k, e) for j in range(40) for k in range(-80, 60) for e in (0, 1)}

    def d5(c):
        j, k, e = c
        if e == 0 and (k - 3) % 9 <= 5:
            return (j + 2, k - 3, 1)

    def d9(c):
        j, k, e = c
        if e == 1 and (k - 6) % 9 <= 2:
            return (j + 5, k - 6, 0)

    for d in (d5, d9):
        dead = set()
        for c in cur:
            t = d(c)
            if t is not None and t in cur:
                dead |= {c, t}
        cur -= dead
    return Counter(10 * j + 8 * k + 3 * e for j, k, e in cur
                   if j < 25 and lo <= 10 * j + 8 * k + 3 * e <= hi)


GENS8 = {"1": 0, "a": 3, "wa": 11, "wb": 18, "aA": 38, "bA": 45, "wbA": 53, "wbaA": 56}


def g20_oracle(lo, hi):
    """Classes (j, h, z, g) = beta^j v2^(h/2) zeta^z g on the eight generators."""
    cur = {(j, h, z, g) for j in range(40) for h in range(-80, 60) for z in (0, 1) for g in GENS8}

    def d5(c):
        j, h, z, g = c
        if g == "1" and (h - 3) % 9 <= 5:
            return (j + 2, h - 4, z, "wa")
        if g == "bA" and (h - 3) % 9 <= 5:
            return (j + 2, h - 4, z, "wbaA")
        if g == "wb" and (h - 2) % 9 <= 5:
            return (j + 3, h - 2, z, "a")
        if g == "wbA" and (h - 2) % 9 <= 5:
            return (j + 3, h - 2, z, "aA")

    def d9(c):
        j, h, z, g = c
        if g == "a" and (h - 6) % 9 <= 2:
            return (j + 5, h - 6, z, "1")
        if g == "aA" and (h - 6) % 9 <= 2:
            return (j + 4, h - 6, z, "bA")
        if g == "wa" and (h - 5) % 9 <= 2:
            return (j + 4, h - 6, z, "wb")
        if g == "wbaA" and (h - 5) % 9 <= 2:
            return (j + 5, h - 6, z, "wbA")

    for d in (d5, d9):
        dead = set()
        for c in cur:
            t = d(c)
            if t is not None and t in cur:
                dead |= {c, t}
        cur -= dead

    def stem(c):
        j, h, z, g = c
        return 10 * j + 8 * h - z + GENS8[g]
    return Counter(stem(c) for c in cur if c[0] < 25 and lo <= stem(c) <= hi)


@pytest.fixture(scope="module")
def g20():
    return homotopy_table("G2^0", Window(-30, 260, 0, 40))


@pytest.fixture(scope="module")
def v1():
    return homotopy_table("G2", Window(-120, 300, 0, 40)).table


def test_rule_parsing():
    r = parse_rule("d5 w^(i+3) -> - alpha*beta^2*w^i  where i mod 9 in {0,1,2,3,4,5}  linear alpha,beta,w^9")
    assert r.page == 5 and r.holds(4) and not r.holds(7) and r.multipliers == ("alpha", "beta", "w^9")
    assert r.source_at(0) == parse_monomial("w^3")
    assert r.target_at(0) == -parse_monomial("alpha*beta^2")
    assert parse_rules("# comment\n\n") == []
    with pytest.raises(ValueError):
        parse_rule("d5 w ->")


def test_g24_matches_oracle_and_fixture():
    t = homotopy_table("G24", Window(-72, 143, 0, 40)).table
    dims = t.dims()
    oracle = g24_oracle(-72, 143)
    assert all(dims[n] == oracle[n] for n in range(-72, 144))
    assert sorted(n for n in range(72) if oracle[n]) == list(G24_PERIOD_STEMS)


def test_g20_matches_oracle(g20):
    dims = g20.table.dims()
    oracle = g20_oracle(-30, 260)
    assert [n for n in range(-30, 261) if dims[n] != oracle[n]] == []


def test_g20_formula_with_rule_derived_offsets(g20):
    """The beta*a35 family has offsets {0, 1, 5} under the differentials; every other family is as stated."""
    dims = g20.table.dims()
    fixed = eight_family_dims(-30, 260, corrected_families())
    assert all(dims[n] == fixed[n] for n in range(-30, 261))


def test_stated_beta_a35_offsets_disagree_with_the_differentials(g20):
    dims = g20.table.dims()
    stated = eight_family_dims(-30, 260)
    assert any(dims[n] != stated[n] for n in range(-30, 261))


def test_eigensplit_gives_v1(g20, v1):
    plus, minus = eigen_split_table(g20)
    pd = plus.dims()
    vd = v1.dims()
    assert all(pd[n] == vd[n] for n in range(-30, 261))
    assert sum(minus.dims().values()) == sum(pd.values())


def test_v1_is_lambda_zeta_on_g21(v1):
    g21 = homotopy_table("G2^1", Window(-120, 301, 0, 40)).table
    lam = tensor_with_exterior(g21, -1, "zeta").dims()
    assert all(v1.dims()[n] == lam[n] for n in range(-119, 301))


def test_self_duality_about_28(v1):
    rep = check_self_duality(v1, 28)
    assert rep.ok and rep.data["compared"] > 200
    k = v1.find("zeta*a35*w^-7*beta^5")
    assert k is not None and v1.classes[k].stem == 28


def test_periodicity(v1):
    assert check_periodicity(v1, 144, (-120, 300)).ok
    assert not check_periodicity(v1, 72, (-120, 300)).ok


@pytest.mark.parametrize("name,group", [("g24", "G24"), ("g24", "G12"), ("g20", "G2^0"), ("g20", "G2")])
def test_validate_shipped_rules(name, group):
    rep = validate_rules(load_rules(name), e2_page(group, Window(-60, 230, 0, 40)))
    assert rep.ok, rep.details[:3]


def test_printed_alpha_a35_target_fails_bidegree_check():
    """The d9 target v2^(1/2)*beta^5*a35, read literally, has the wrong bidegree for most i."""
    line = ("d9 v2^((i+6)/2)*alpha*a35 -> v2^(1/2)*beta^5*a35  where i mod 9 in {0,1,2}"
            "  linear beta,zeta,v2^(9/2)")
    rep = validate_rules([parse_rule(line)], e2_page("G2^0", Window(-30, 100, 0, 40)))
    assert not rep.ok and any(d.startswith("bidegree") for d in rep.details)


def test_validate_rejects_bad_bidegree():
    rep = validate_rules(parse_rules("d5 w -> alpha*beta^2"), e2_page("G24", Window(-30, 60, 0, 40)))
    assert not rep.ok


def test_run_tracks_pages_and_toda_annotations():
    res = homotopy_table("G24", Window(0, 143, 0, 40))
    w3 = parse_monomial("w^3")
    assert res.status(w3, 5) == "nonzero"
    assert res.status(w3, 6) == "not a cycle"
    assert res.status(parse_monomial("alpha*beta^2"), 6) == "zero"
    assert any(v.startswith("z_0") for v in res.table.annotations.values())
    for a, b in res.table.beta_edges:
        assert res.table.classes[b].stem - res.table.classes[a].stem == 10
    for a, b in res.table.alpha_edges + res.table.toda_edges:
        assert res.table.classes[b].stem - res.table.classes[a].stem == 3


def test_window_and_restrict_errors():
    t = table_from_dims("toy", {0: 1, 3: 2}, (0, 10))
    assert t.restrict(0, 5).dims() == {n: (1 if n == 0 else 2 if n == 3 else 0) for n in range(6)}
    with pytest.raises(ValueError):
        t.restrict(-5, 5)


def test_expand_reports_skips_outside_window():
    e2 = e2_page("G24", Window(0, 40, 0, 40))
    ex = expand(load_rules("g24"), e2)
    assert ex.by_page[5] and not ex.errors
    assert all(reason in ("target outside window", "source absent") for *_, reason in ex.skipped)


def test_run_without_rules_is_e2():
    e2 = e2_page("SD16", Window(-40, 40, 0, 0))
    res = run(e2, [], Window(-40, 40, 0, 0))
    assert res.table.dims() == {n: int(n % 16 == 0) for n in range(-40, 41)}
