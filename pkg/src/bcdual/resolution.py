"""Centralizer resolution spectral sequences and the topological towers.

Every E1 entry is a monomial carrying exactly one degree marker (b0, b36,
e8, e36, e44, e48). The marker fixes the column; an optional zeta raises the
filtration by one. Entries are bucketed by (S, T) with S the filtration and
T - S the total stem, so that d_r moves (S, T) by (r, r - 1) exactly as in
the homotopy fixed point spectral sequences and the runner in specseq can be
reused unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graded import (
    MARKERS, BigradedModule, Monomial, Window, free_module_span, gen,
    parse_monomial,
)
from .specseq import (
    EIGHT_CLASSES, HomotopyTable, Report, RunResult, homotopy_table, load_rules, parse_rule,
    run, tensor_with_exterior, validate_rules,
)

COLUMN = {"b0": 0, "b36": 1, "e8": 1, "e36": 2, "e44": 2, "e48": 3}

# (column, group, marker) in the order the E1-term is usually written
ALGEBRAIC_LAYOUT = (
    (0, "G24", "b0"),
    (1, "G24", "b36"), (1, "SD16", "e8"),
    (2, "SD16", "e36"), (2, "SD16", "e44"),
    (3, "SD16", "e48"),
)

GROUP_RINGS = {"G24": ("beta", "w", "alpha"), "SD16": ("v2",)}

# The differential that detects a truly exotic element (coefficient c2 = 1).
EXOTIC_RULE = "d2 b0 -> zeta*beta*v2^-3*alpha*b36"


def marker_of(m: Monomial) -> str:
    found = [g for g in m.generators() if g in MARKERS]
    if len(found) != 1:
        raise ValueError(f"{m} must carry exactly one degree marker, found {found or 'none'}")
    return found[0]


def filtered_degree(m: Monomial) -> tuple[int, int]:
    """(S, T): S = column + zeta exponent, T - S = total stem."""
    marker = marker_of(m)
    rest = m.without(marker, "zeta")
    s, t = rest.bidegree()
    S = COLUMN[marker] + m.exponent("zeta")
    return S, t - s + gen(marker).t


def total_degree(m: Monomial) -> int:
    """Cohomological degree p + q (zeta counted) of an algebraic E1 entry."""
    return filtered_degree(m)[0] + m.without(marker_of(m), "zeta").bidegree()[0]


@dataclass
class Summand:
    group: str
    marker: str
    zeta: bool
    entries: list  # Monomials

    @property
    def name(self) -> str:
        return f"{self.group}*{'zeta*' if self.zeta else ''}{self.marker}"


@dataclass
class ResolutionColumn:
    filtration: int
    summands: list = field(default_factory=list)
    field: str = "F3"

    def entries(self):
        for sm in self.summands:
            yield from sm.entries

    def stem_dims(self) -> dict[int, int]:
        scale = 2 if self.field == "F9" else 1
        out: dict[int, int] = {}
        for m in self.entries():
            S, T = filtered_degree(m)
            out[T - S] = out.get(T - S, 0) + scale
        return out

    def describe(self) -> str:
        return " + ".join(sm.name for sm in self.summands) or "0"


def _inside(window: Window, m: Monomial) -> bool:
    S, T = filtered_degree(m)
    n = T - S
    return window.stem_min <= n <= window.stem_max


def build_algebraic_E1(window: Window = Window(-20, 120, 0, 12), zeta: bool = False
                       ) -> list[ResolutionColumn]:
    """Columns p = 0..3 of the algebraic E1-term, cohomological degree q <= window.s_max.

    The window's stem bounds apply to the total stem; with zeta the columns of
    the G2 version are obtained by tensoring with Lambda(zeta), which adds one
    to the filtration of the zeta-multiples.
    """
    q_max = window.s_max
    natural = Window(window.stem_min - 2, window.stem_max + 5, 0, q_max)
    cols = {p: ResolutionColumn(p) for p in range(4 + int(zeta))}
    for p, group, marker in ALGEBRAIC_LAYOUT:
        mod = free_module_span(list(GROUP_RINGS[group]), [Monomial.of(marker)], natural,
                               f"H({group}){marker}")
        for z in (False, True) if zeta else (False,):
            mult = Monomial.of("zeta") if z else Monomial()
            entries = [mult * m for m in mod.monomials()]
            entries = [m.unit() for m in entries if _inside(window, m)]
            cols[p + int(z)].summands.append(Summand(group, marker, z, entries))
    return [cols[p] for p in sorted(cols)]


PAD = 4  # twice the longest differential, in stems


def assemble(columns: list[ResolutionColumn], window: Window, name: str,
             field: str = "F3") -> BigradedModule:
    """One module in (S, T) coordinates holding every column entry.

    The columns must have been built on `window` padded by PAD stems, so that
    the runner's interior is exactly `window`.
    """
    s_top = max((c.filtration for c in columns), default=0)
    mwin = Window(window.stem_min - PAD, window.stem_max + PAD, 0, s_top + 2)
    mod = BigradedModule(name, field, window=mwin, degree=filtered_degree)
    for col in columns:
        for m in col.entries():
            mod.add(filtered_degree(m), m)
    return mod


def applicable_rules(rules, columns):
    """Rules whose source and target markers both occur in the columns."""
    present = {sm.marker for c in columns for sm in c.summands}
    out = []
    for rule in rules:
        names = {f[0] for f in rule.source[1]} | {f[0] for f in rule.target[1]}
        if names & set(MARKERS) <= present:
            out.append(rule)
    return out


def _report_window(window: Window, columns) -> Window:
    s_top = max((c.filtration for c in columns), default=0)
    return Window(window.stem_min, window.stem_max, 0, s_top)


def expected_G21(window: Window, zeta: bool = False) -> dict[tuple[int, int], int]:
    """Dimensions of the free F3[beta, v2^{+-1}] (x) Lambda(zeta) module on the eight classes,
    keyed by (cohomological degree, stem)."""
    base = ["beta", "v2"] + (["zeta"] if zeta else [])
    natural = Window(window.stem_min, window.stem_max, 0, window.s_max)
    mod = free_module_span(base, [parse_monomial(c) for c in EIGHT_CLASSES], natural, "H(G2^1)")
    out: dict[tuple[int, int], int] = {}
    for (s, t), basis in mod.buckets.items():
        if basis:
            out[(s, t - s)] = out.get((s, t - s), 0) + len(basis)
    return out


def run_algebraic(columns: list[ResolutionColumn] | None = None, rules=None,
                  window: Window = Window(-20, 120, 0, 12), zeta: bool = False) -> Report:
    """Run the algebraic spectral sequence and check it against H*(G2^1) (or H*(G2))."""
    if columns is None:
        columns = build_algebraic_E1(window.padded(PAD), zeta)
    if rules is None:
        rules = load_rules("resolution-zeta" if zeta else "resolution")
    name = "algebraic-G2" if zeta else "algebraic-G2^1"
    e1 = assemble(columns, window, f"E1({name})")
    details = []
    valid = validate_rules(rules, e1)
    details += [f"rules: {d}" for d in valid.details]
    res = run(e1, rules, _report_window(window, columns), name=name)
    details += res.warnings

    # E3 vanishes in filtration p > 1 (p = marker column, zeta not counted)
    high = [str(m) for m in res.einf.monomials() if COLUMN[marker_of(m)] > 1]
    details += [f"E3 class in column > 1: {m}" for m in high[:5]]

    # exactness surrogate: every target is hit by exactly one page
    hit: dict[tuple, int] = {}
    for inst in res.expansion.instances():
        if inst.coeff:
            if inst.target.exps in hit:
                details.append(f"{inst.target} is hit on pages {hit[inst.target.exps]} and {inst.page}")
            hit[inst.target.exps] = inst.page
    stray = [str(m) for m in res.einf.monomials() if marker_of(m).startswith("e")]
    details += [f"e-marker survives: {m}" for m in stray[:5]]

    # convergence: E-infinity per (total degree, stem) against the eight-class module
    got: dict[tuple[int, int], int] = {}
    for m in res.einf.monomials():
        S, T = filtered_degree(m)
        got[(total_degree(m), T - S)] = got.get((total_degree(m), T - S), 0) + 1
    want = expected_G21(window, zeta)
    q_max = window.s_max
    mism = []
    for key in sorted(set(got) | set(want)):
        n, stem = key
        if n > q_max or not (window.stem_min <= stem <= window.stem_max):
            continue
        if got.get(key, 0) != want.get(key, 0):
            mism.append(f"degree {n} stem {stem}: E-infinity {got.get(key, 0)}, expected {want.get(key, 0)}")
    details += mism
    stems: dict[int, int] = {}
    for (n, stem), d in got.items():
        if n <= q_max:
            stems[stem] = stems.get(stem, 0) + d
    rep = Report(f"centralizer resolution ({name})", not details, details,
                 {"columns": [c.describe() for c in columns], "instances": valid.data.get("instances"),
                  "e3_high_filtration": len(high), "mismatches": len(mism),
                  "stem_totals": {str(k): v for k, v in sorted(stems.items())}})
    rep.result = res
    return rep


# Topological towers ----------------------------------------------------------------

TOWER_LAYOUT = ALGEBRAIC_LAYOUT


def _table_entries(table: HomotopyTable, marker: str, zeta: bool, window: Window):
    mult = Monomial.of(marker) * (Monomial.of("zeta") if zeta else Monomial())
    out = []
    for c in table.classes:
        if c.monomial is None:
            raise ValueError(f"class {c.label} of {table.name} has no monomial representative")
        m = (mult * c.monomial)
        if m.is_zero():
            continue
        m = m.unit()
        if _inside(window, m):
            out.append(m)
    return out


def _check_covers(table: HomotopyTable, lo: int, hi: int):
    a, b = table.stem_range
    if a > lo or b < hi:
        raise ValueError(f"{table.name} covers stems {a}..{b}; the tower needs {lo}..{hi}")


def build_tower_E1(g24: HomotopyTable, sd16: HomotopyTable, window: Window = Window(-30, 100, 0, 4),
                   zeta: bool = True) -> list[ResolutionColumn]:
    """The five tower columns s = 0..4 built from the two homotopy tables.

    E1^{s,*} holds pi_* of suspensions of E^{hG24} ^ Y (markers b0, b36) and
    E^{hSD16} ^ Y (markers e8, e36, e44, e48); zeta-multiples sit one column
    further to the right.
    """
    tables = {"G24": g24, "SD16": sd16}
    for p, group, marker in TOWER_LAYOUT:
        t = tables[group]
        if t.classes:
            _check_covers(t, window.stem_min - gen(marker).t + p, window.stem_max - gen(marker).t + p + 1)
    field_ = "F9" if "F9" in (g24.field, sd16.field) else "F3"
    cols = {s: ResolutionColumn(s, field=field_) for s in range(4 + int(zeta))}
    for p, group, marker in TOWER_LAYOUT:
        for z in (False, True) if zeta else (False,):
            entries = _table_entries(tables[group], marker, z, window)
            cols[p + int(z)].summands.append(Summand(group, marker, z, entries))
    return [cols[s] for s in sorted(cols)]


def _tables(window: Window):
    span = Window(window.stem_min - 50 - PAD, window.stem_max + 5 + PAD, 0, 40)
    return homotopy_table("G24", span).table, homotopy_table("SD16", span).table


def run_tower(window: Window = Window(-30, 100, 0, 4), exotic: bool = False,
              tables=None) -> RunResult:
    """Tower spectral sequence for the sphere smashed with V(1).

    The differentials are the algebraic ones transported to homotopy; with
    `exotic` the unit class also carries the differential of a truly exotic
    element.
    """
    g24, sd16 = tables if tables is not None else _tables(window)
    columns = build_tower_E1(g24, sd16, window.padded(PAD), zeta=True)
    e1 = assemble(columns, window, "E1(tower)")
    rules = load_rules("resolution-zeta")
    if exotic:
        rules = rules + [parse_rule(EXOTIC_RULE)]
    return run(e1, rules, _report_window(window, columns),
               name="tower X ^ V(1)" if exotic else "tower S ^ V(1)")


def sphere_tower_check(window: Window = Window(-30, 100, 0, 4)) -> Report:
    """E-infinity of the sphere tower against the V(1) table, stem by stem."""
    res = run_tower(window)
    got = res.table.dims()
    want = homotopy_table("G2", Window(window.stem_min, window.stem_max, 0, 40)).table.dims()
    details = [f"stem {n}: tower {got.get(n, 0)}, V(1) table {want.get(n, 0)}"
               for n in window.stems() if got.get(n, 0) != want.get(n, 0)]
    rep = Report("sphere tower converges to pi_* V(1)", not details, details,
                 {"stems": {str(n): got.get(n, 0) for n in window.stems()}})
    rep.result = res
    return rep


def exotic_detection_check(window: Window = Window(-30, 60, 0, 4)) -> Report:
    """A truly exotic differential leaves y = beta v2^-3 alpha b36 alive with zeta*y = 0 at E3."""
    tables = _tables(window)
    plain = run_tower(window, False, tables)
    exo = run_tower(window, True, tables)
    y = parse_monomial("alpha*beta*v2^-3*b36")
    zy = Monomial.of("zeta") * y
    details = []
    obs = {
        "y (plain)": plain.status(y, 3), "zeta*y (plain)": plain.status(zy, 3),
        "y (exotic)": exo.status(y, 3), "zeta*y (exotic)": exo.status(zy, 3),
    }
    if filtered_degree(y) != (1, 1):
        details.append(f"y sits at {filtered_degree(y)}, expected filtration 1 of stem 0")
    if obs["y (exotic)"] != "nonzero":
        details.append(f"y is {obs['y (exotic)']} at E3 of the exotic run")
    if obs["zeta*y (exotic)"] != "zero":
        details.append(f"zeta*y is {obs['zeta*y (exotic)']} at E3 of the exotic run")
    if obs["zeta*y (plain)"] != "nonzero":
        details.append(f"zeta*y is {obs['zeta*y (plain)']} at E3 without the exotic differential")
    high = [str(m) for m in exo.einf.monomials() if filtered_degree(m)[0] > 2
            and filtered_degree(m)[1] - filtered_degree(m)[0] == -1]
    if high:
        details.append(f"stem -1 has E3 classes in filtration > 2: {high[:3]}")
    obs["stem -1, filtration > 2"] = len(high)
    return Report("truly exotic detection (zeta-torsion at E3)", not details, details, obs)


def build_N_tower(window: Window = Window(-10, 140, 0, 2), g12: HomotopyTable | None = None) -> Report:
    """The three-column tower for E^hN ^ V(1) and its collapse against (x) Lambda(a35, zeta)."""
    if window.stem_min > window.stem_max:
        return Report("N-tower collapse", True, [], {"stems": {}})
    if g12 is None:
        span = Window(window.stem_min - 40 - PAD, window.stem_max + 5 + PAD, 0, 40)
        g12 = homotopy_table("G12", span).table
    _check_covers(g12, window.stem_min - 35 - PAD, window.stem_max + 1 + PAD)
    cols = {s: ResolutionColumn(s, field=g12.field) for s in range(3)}
    for p, marker in ((0, "b0"), (1, "b36")):
        for z in (False, True):
            cols[p + int(z)].summands.append(
                Summand("G12", marker, z, _table_entries(g12, marker, z, window.padded(PAD))))
    columns = [cols[s] for s in range(3)]
    e1 = assemble(columns, window, "E1(N-tower)", field=g12.field)
    rules = applicable_rules(load_rules("resolution-zeta"), columns)
    res = run(e1, rules, _report_window(window, columns), name="E^hN ^ V(1)")
    got = res.table.dims()
    want = tensor_with_exterior(tensor_with_exterior(g12, 35, "a35"), -1, "zeta").dims()
    details = [f"stem {n}: E-infinity {got.get(n, 0)}, expected {want.get(n, 0)}"
               for n in window.stems() if got.get(n, 0) != want.get(n, 0)]
    live = sum(1 for inst in res.expansion.instances() if inst.coeff)
    if live:
        details.append(f"{live} differentials act on the N-tower")
    rep_rules = len(rules)
    has_a35 = window.stem_min <= 35 <= window.stem_max
    if has_a35 and res.table.find("b36") is None:
        details.append("the a35 generator line (b36 in stem 35) is missing")
    rep = Report("N-tower collapse", not details, details,
                 {"stems": {str(n): got.get(n, 0) for n in window.stems()}, "differentials": live,
                 "rules_applicable": rep_rules})
    rep.result = res
    return rep


TOWERS = ("algebraic-G2^1", "algebraic-G2", "topological-sphere", "topological-N")


def tower_report(kind: str, window: Window | None = None) -> Report:
    """Entry point used by the command line."""
    if kind == "algebraic-G2^1":
        return run_algebraic(window=window or Window(-20, 120, 0, 12))
    if kind == "algebraic-G2":
        return run_algebraic(window=window or Window(-20, 120, 0, 12), zeta=True)
    if kind == "topological-N":
        return build_N_tower(window or Window(-10, 140, 0, 2))
    if kind == "topological-sphere":
        rep = sphere_tower_check(window or Window(-30, 100, 0, 4))
        exo = exotic_detection_check(window or Window(-30, 60, 0, 4))
        rep.details += exo.details
        rep.ok = rep.ok and exo.ok
        rep.data["truly_exotic"] = exo.data
        return rep
    raise KeyError(f"unknown tower {kind!r}; choose from {', '.join(TOWERS)}")
