"""Rule-driven spectral sequences over F3 and the homotopy tables they produce.

Differentials are declarative: each rule is a family of monomial
differentials indexed by an integer i, cut down by a congruence condition
and extended by multiplication with declared permanent cycles. Pages are
computed bucket by bucket by tracking cycles Z_r and boundaries B_r as
subspaces of E2.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import linalg
from .field import F9, OMEGA, ONE
from .graded import (
    DEFAULT_WINDOW, EXTERIOR, BigradedModule, Monomial, Window, build_monomial, free_module_span,
    gen, parse_exponent, parse_factors, parse_monomial,
)

_RULE = re.compile(
    r"^d(?P<r>\d+)\s+(?P<src>.+?)\s*->\s*(?P<tgt>.+?)"
    r"(?:\s+where\s+(?P<cond>.+?))?(?:\s+linear\s+(?P<lin>.+?))?\s*$")
_COND = re.compile(r"^(?P<expr>.+?)\s+mod\s+(?P<m>\d+)\s+in\s+\{(?P<res>[^}]*)\}$")


@dataclass
class DifferentialRule:
    page: int
    source: tuple  # (coefficient, factors)
    target: tuple
    condition: tuple | None = None  # (slope, intercept, modulus, residues)
    multipliers: tuple = ()
    text: str = ""

    def holds(self, i: int) -> bool:
        if self.condition is None:
            return True
        a, b, m, res = self.condition
        v = a * i + b
        return v.denominator == 1 and int(v) % m in res

    def source_at(self, i: int) -> Monomial:
        return build_monomial(*self.source, value=i)

    def target_at(self, i: int) -> Monomial:
        return build_monomial(*self.target, value=i)

    def varies(self) -> bool:
        return any(sl for _, sl, _ in self.source[1]) or any(sl for _, sl, _ in self.target[1])

    def __str__(self):
        return self.text


def parse_rule(line: str) -> DifferentialRule:
    m = _RULE.match(line.strip())
    if not m:
        raise ValueError(f"cannot parse rule: {line!r}")
    src = parse_factors(m.group("src"), "i")
    tgt = parse_factors(m.group("tgt"), "i")
    cond = None
    if m.group("cond"):
        c = _COND.match(m.group("cond").strip())
        if not c:
            raise ValueError(f"cannot parse condition {m.group('cond')!r}")
        a, b = parse_exponent(c.group("expr"), "i")
        res = frozenset(int(x) for x in c.group("res").replace(" ", "").split(",") if x)
        cond = (a, b, int(c.group("m")), res)
    mults = ()
    if m.group("lin"):
        mults = tuple(x.strip() for x in m.group("lin").split(",") if x.strip())
    return DifferentialRule(int(m.group("r")), src, tgt, cond, mults, line.strip())


def parse_rules(text: str) -> list[DifferentialRule]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_rule(line))
    return out


RULESETS = {"g24": "g24.rules", "g20": "g20.rules", "resolution": "resolution.rules",
            "resolution-zeta": "resolution-zeta.rules"}


def load_rules(name_or_path) -> list[DifferentialRule]:
    """Load a shipped rule set by name (g24, g20, resolution) or a rule file by path."""
    if str(name_or_path) in RULESETS:
        text = resources.files("bcdual").joinpath("rules", RULESETS[str(name_or_path)]).read_text()
    else:
        text = Path(name_or_path).read_text()
    return parse_rules(text)


# Instances -----------------------------------------------------------------------

@dataclass
class Instance:
    page: int
    source: Monomial  # unit coefficient
    coeff: F9
    target: Monomial  # unit coefficient
    rule: DifferentialRule
    i: int
    multiplier: Monomial


@dataclass
class Expansion:
    by_page: dict = field(default_factory=dict)  # r -> {source exps: Instance}
    skipped: list = field(default_factory=list)  # (rule, i, multiplier, monomial, reason)
    errors: list = field(default_factory=list)
    conflicts: list = field(default_factory=list)
    bidegree: list = field(default_factory=list)
    periodic: list = field(default_factory=list)

    def instances(self):
        for r in sorted(self.by_page):
            yield from self.by_page[r].values()


def _split_multipliers(rule: DifferentialRule):
    """Separate periodicity multipliers (s = 0) from ordinary ones."""
    periodic, ordinary = [], []
    for text in rule.multipliers:
        mu = parse_monomial(text)
        s, t = mu.bidegree()
        (periodic if s == 0 else ordinary).append(mu)
    return periodic, ordinary


def _periodic_shift(rule: DifferentialRule, mu: Monomial) -> int | None:
    """k with src(i)*mu = +-src(i+k) and tgt(i)*mu = +-tgt(i+k), or None."""
    a = rule.source_at(1).bidegree()[1] - rule.source_at(0).bidegree()[1]
    if a == 0:
        return None
    k = Fraction(mu.bidegree()[1], a)
    if k.denominator != 1:
        return None
    k = int(k)
    for i in range(0, 3):
        for f in (rule.source_at, rule.target_at):
            lhs = (f(i) * mu).unit()
            if lhs != f(i + k).unit():
                return None
    if rule.condition is not None:
        for i in range(rule.condition[2]):
            if rule.holds(i) != rule.holds(i + k):
                return None
    return k


def expand(rules, module: BigradedModule, strict: bool = False) -> Expansion:
    """Instantiate every rule instance whose source lies in the module's window."""
    ex = Expansion()
    window = module.window
    if window is None:
        raise ValueError("module has no window; cannot bound rule instances")
    deg = module.degree
    for rule in rules:
        periodic, ordinary = _split_multipliers(rule)
        for mu in periodic:
            if _periodic_shift(rule, mu) is None:
                ex.periodic.append((rule.text, str(mu)))
        ranges = []
        for mu in ordinary:
            g = gen(mu.generators()[0]) if len(mu.generators()) == 1 else None
            if g is not None and g.kind == EXTERIOR:
                ranges.append(range(2))
            else:
                s = mu.bidegree()[0]
                ranges.append(range(window.s_max // s + 1))
        for powers in itertools.product(*ranges):
            mult = Monomial()
            for mu, e in zip(ordinary, powers):
                mult = mult * (mu ** e)
            if mult.is_zero():
                continue
            if mult.bidegree()[0] > window.s_max:
                continue
            for i in _i_range(rule, mult, deg, window):
                if not rule.holds(i):
                    continue
                _add_instance(ex, rule, i, mult, module, strict)
    return ex


def _i_range(rule, mult, deg, window) -> range:
    if not rule.varies():
        return range(0, 1)
    s0, t0 = deg((mult * rule.source_at(0)).unit())
    s1, t1 = deg((mult * rule.source_at(1)).unit())
    slope = (t1 - s1) - (t0 - s0)
    base = t0 - s0
    if slope == 0:
        return range(0, 1)
    lo, hi = window.stem_min, window.stem_max
    a, b = (lo - base) / slope, (hi - base) / slope
    if a > b:
        a, b = b, a
    return range(int(np.floor(a)) - 1, int(np.ceil(b)) + 2)


def _add_instance(ex: Expansion, rule, i, mult, module, strict):
    src = mult * rule.source_at(i)
    if src.is_zero():
        return
    tgt = mult * rule.target_at(i)
    deg = module.degree
    s_src, t_src = deg(src.unit())
    if not module.window.contains(s_src, t_src):
        return
    if src.unit() not in module:
        ex.skipped.append((rule.text, i, str(mult), str(src.unit()), "source absent"))
        if strict:
            ex.errors.append(f"{rule.text}: source {src.unit()} (i={i}) absent")
        return
    expected = (s_src + rule.page, t_src + rule.page - 1)
    if tgt.is_zero():
        _claim(ex, rule.page, src.unit(), None, rule, i, mult)
        return
    if deg(tgt.unit()) != expected:
        ex.bidegree.append((rule.text, i, str(src.unit()), str(tgt.unit()),
                            (s_src, t_src), deg(tgt.unit())))
        return
    if tgt.unit() not in module:
        if module.window.contains(*deg(tgt.unit())):
            ex.errors.append(f"{rule.text}: target {tgt.unit()} (i={i}) absent inside the window")
        else:
            ex.skipped.append((rule.text, i, str(mult), str(tgt.unit()), "target outside window"))
        return
    sign = -1 if mult.bidegree()[0] % 2 else 1
    # the target monomial already carries the rule's sign and normalization signs
    coeff = tgt.coeff * sign / src.coeff
    _claim(ex, rule.page, src.unit(), (coeff, tgt.unit()), rule, i, mult)


def _claim(ex, page, src, value, rule, i, mult):
    book = ex.by_page.setdefault(page, {})
    prev = book.get(src.exps)
    if value is None:
        inst = Instance(page, src, F9(0), Monomial(), rule, i, mult)
    else:
        inst = Instance(page, src, value[0], value[1], rule, i, mult)
    if prev is not None:
        same = (prev.coeff == inst.coeff and prev.target == inst.target)
        if not same:
            ex.conflicts.append((str(src), prev.rule.text, inst.rule.text))
        return
    book[src.exps] = inst


@dataclass
class Report:
    name: str
    ok: bool
    details: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    result: object = field(default=None, repr=False, compare=False)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'}  {self.name}"
        if self.details:
            head += ": " + "; ".join(str(d) for d in self.details[:3])
            if len(self.details) > 3:
                head += f" (+{len(self.details) - 3} more)"
        return head

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "details": [str(d) for d in self.details],
                "data": self.data}


def validate_rules(rules, e2: BigradedModule, window: Window | None = None) -> Report:
    """Bidegree shifts, d o d = 0, and consistency of the declared multipliers."""
    if window is not None and e2.window is None:
        e2.window = window
    ex = expand(rules, e2)
    details = []
    for rule_text, i, src, tgt, a, b in ex.bidegree:
        details.append(f"bidegree: {rule_text} at i={i}: {src} {a} -> {tgt} {b}")
    for msg in ex.errors:
        details.append(f"absent: {msg}")
    for src, r1, r2 in ex.conflicts:
        details.append(f"conflict on {src}: {r1} | {r2}")
    for rule_text, mu in ex.periodic:
        details.append(f"multiplier {mu} is not a periodicity of {rule_text}")
    sources = {}
    targets = {}
    for inst in ex.instances():
        sources.setdefault(inst.source.exps, []).append(inst)
        if inst.coeff:
            targets.setdefault(inst.target.exps, []).append(inst)
    for exps, hits in targets.items():
        for src in sources.get(exps, []):
            if src.coeff:
                details.append(f"d o d: {hits[0].source} -> {src.source} -> {src.target}")
                break
        if len(hits) > 1:
            details.append(f"target hit twice: {hits[0].target} from {hits[0].source} and {hits[1].source}")
    count = sum(len(v) for v in ex.by_page.values())
    return Report("validate_rules", not details, details,
                  {"instances": count, "skipped": len(ex.skipped)})


# Running -------------------------------------------------------------------------

class Coordinates:
    """F3 coordinates on the buckets of a module (doubled for F9)."""

    def __init__(self, module: BigradedModule):
        self.module = module
        self.scale = 2 if module.field == "F9" else 1

    def dim(self, key) -> int:
        return self.module.dim(key) * self.scale

    def unit(self, key, pos: int, j: int = 0) -> np.ndarray:
        v = np.zeros(self.dim(key), dtype=np.int64)
        v[self.scale * pos + j] = 1
        return v

    def monomial_vector(self, m: Monomial):
        loc = self.module.locate(m)
        if loc is None:
            return None, None
        key, pos = loc
        v = np.zeros(self.dim(key), dtype=np.int64)
        if self.scale == 2:
            v[2 * pos] = m.coeff.c0
            v[2 * pos + 1] = m.coeff.c1
        else:
            v[pos] = m.coeff.c0
        return key, v % 3


@dataclass
class PageState:
    Z: dict
    B: dict


@dataclass
class TableClass:
    stem: int
    filtration: int
    label: str
    f3dim: int = 1
    monomial: Monomial | None = None


class HomotopyTable:
    """Classes by stem with alpha/beta edges, valid on a stem range."""

    def __init__(self, name: str, classes=None, stem_range=(0, -1), field: str = "F3",
                 period=None):
        self.name = name
        self.classes: list[TableClass] = list(classes or [])
        self.stem_range = tuple(stem_range)
        self.field = field
        self.period = period
        self.alpha_edges: list[tuple[int, int]] = []
        self.beta_edges: list[tuple[int, int]] = []
        self.toda_edges: list[tuple[int, int]] = []
        self.annotations: dict[int, str] = {}

    def stems(self) -> range:
        return range(self.stem_range[0], self.stem_range[1] + 1)

    def dim(self, n: int) -> int:
        return sum(c.f3dim for c in self.classes if c.stem == n)

    def dims(self) -> dict[int, int]:
        out = {n: 0 for n in self.stems()}
        for c in self.classes:
            if c.stem in out:
                out[c.stem] += c.f3dim
        return out

    def at(self, n: int) -> list[TableClass]:
        return [c for c in self.classes if c.stem == n]

    def find(self, label) -> int | None:
        if isinstance(label, str):
            try:
                label = parse_monomial(label)
            except ValueError:
                label = None
        for k, c in enumerate(self.classes):
            if label is not None and c.monomial is not None and c.monomial.exps == label.exps:
                return k
        return None

    def restrict(self, lo: int, hi: int) -> "HomotopyTable":
        if lo < self.stem_range[0] or hi > self.stem_range[1]:
            raise ValueError(f"range {lo}..{hi} exceeds computed stems {self.stem_range}")
        keep = [k for k, c in enumerate(self.classes) if lo <= c.stem <= hi]
        remap = {k: j for j, k in enumerate(keep)}
        out = HomotopyTable(self.name, [self.classes[k] for k in keep], (lo, hi), self.field, self.period)
        for src, dst in (("alpha_edges", "alpha_edges"), ("beta_edges", "beta_edges"),
                         ("toda_edges", "toda_edges")):
            for a, b in getattr(self, src):
                if a in remap and b in remap:
                    getattr(out, dst).append((remap[a], remap[b]))
        out.annotations = {remap[k]: v for k, v in self.annotations.items() if k in remap}
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name, "field": self.field, "stem_range": list(self.stem_range),
            "period": self.period,
            "classes": [{"stem": c.stem, "s": c.filtration, "label": c.label, "f3dim": c.f3dim}
                        for c in self.classes],
            "alpha_edges": self.alpha_edges, "beta_edges": self.beta_edges,
            "toda_edges": self.toda_edges,
            "annotations": {str(k): v for k, v in self.annotations.items()},
        }

    def __repr__(self):
        return f"HomotopyTable({self.name!r}, stems {self.stem_range}, {len(self.classes)} classes)"


@dataclass
class RunResult:
    e2: BigradedModule
    einf: BigradedModule
    table: HomotopyTable
    states: dict  # r -> PageState describing E_r
    expansion: Expansion
    window: Window
    warnings: list

    def page(self, r: int) -> PageState:
        keys = [k for k in self.states if k <= r]
        return self.states[max(keys)]

    def status(self, m: Monomial, r: int | None = None) -> str:
        """'nonzero', 'zero' (a boundary), 'not a cycle' or 'absent' for a monomial at E_r."""
        coords = Coordinates(self.e2)
        key, v = coords.monomial_vector(m.unit())
        if key is None:
            return "absent"
        st = self.page(r) if r is not None else self.states[max(self.states)]
        Z, B = st.Z.get(key), st.B.get(key)
        if Z is None or not Z.contains(v):
            return "not a cycle"
        if B is not None and B.contains(v):
            return "zero"
        return "nonzero"


def _differential(coords: Coordinates, insts: dict, key, tkey) -> np.ndarray:
    mod = coords.module
    n, m = coords.dim(key), coords.dim(tkey)
    D = np.zeros((n, m), dtype=np.int64)
    scalars = (ONE, OMEGA)[: coords.scale]
    for pos, b in enumerate(mod.basis(key)):
        inst = insts.get(b.exps)
        if inst is None or not inst.coeff:
            continue
        tkey2, tpos = mod.locate(inst.target)
        assert tkey2 == tkey
        for j, a in enumerate(scalars):
            c = inst.coeff * a
            row = coords.scale * pos + j
            if coords.scale == 2:
                D[row, 2 * tpos] += c.c0
                D[row, 2 * tpos + 1] += c.c1
            else:
                if not c.in_f3():
                    raise ValueError(f"coefficient {c} outside F3 in an F3 module")
                D[row, tpos] += c.c0
    return D % 3


def run(e2: BigradedModule, rules, window: Window | None = None, strict: bool = False,
        name: str | None = None, period=None) -> RunResult:
    """Compute all pages for the given rules; report E-infinity inside the padded interior."""
    rules = list(rules)
    pages = sorted({r.page for r in rules})
    rmax = max(pages) if pages else 0
    interior = e2.window.shrunk(2 * rmax, rmax) if e2.window is not None else None
    warnings = []
    if window is None:
        window = interior
    elif interior is not None and (window.stem_min < interior.stem_min or window.stem_max > interior.stem_max
                                   or window.s_max > interior.s_max):
        warnings.append(f"boundary-truncation: requested {window} exceeds interior {interior}")
    ex = expand(rules, e2, strict=strict)
    if ex.errors or (strict and ex.skipped):
        raise ValueError("rule instances reference absent monomials: " + "; ".join(ex.errors[:5]))
    if ex.bidegree:
        raise ValueError(f"rule instance with wrong bidegree: {ex.bidegree[0]}")
    if ex.conflicts:
        raise ValueError(f"conflicting rule instances: {ex.conflicts[0]}")
    coords = Coordinates(e2)
    keys = e2.keys()
    Z = {k: linalg.Echelon(coords.dim(k), np.eye(coords.dim(k), dtype=np.int64)) for k in keys}
    B = {k: linalg.Echelon(coords.dim(k)) for k in keys}
    states = {2 if not pages else min(pages): PageState(dict(Z), dict(B))}
    for r in pages:
        insts = ex.by_page.get(r, {})
        sources = {}
        for inst in insts.values():
            if inst.coeff:
                key = e2.locate(inst.source)[0]
                sources.setdefault(key, True)
        newZ, additions = dict(Z), {}
        for key in sources:
            tkey = (key[0] + r, key[1] + r - 1)
            if tkey not in B:
                continue
            D = _differential(coords, insts, key, tkey)
            zrows = Z[key].rows
            if zrows.shape[0] == 0:
                continue
            Y = B[tkey].reduce((zrows @ D) % 3)
            c = linalg.left_kernel(Y) if Y.any() else np.eye(zrows.shape[0], dtype=np.int64)
            newZ[key] = linalg.Echelon(coords.dim(key), (c @ zrows) % 3)
            if Y.any():
                additions.setdefault(tkey, []).append(Y)
            if window is not None and window.contains(*key) and B[key].dim:
                img = B[tkey].reduce((B[key].rows @ D) % 3)
                if img.any():
                    warnings.append(f"d{r} does not vanish on boundaries in bucket {key}")
        newB = dict(B)
        for tkey, ys in additions.items():
            newB[tkey] = B[tkey].add(np.vstack(ys))
        Z, B = newZ, newB
        states[r + 1] = PageState(dict(Z), dict(B))
    einf = BigradedModule(f"Einf({e2.name})", e2.field, window=window, degree=e2.degree)
    extra = {}
    for key in keys:
        if window is not None and not window.contains(*key):
            continue
        chosen = _einf_basis(coords, key, Z[key], B[key])
        for label, f3dim in chosen:
            einf.add(key, label)
            extra[(key, str(label))] = f3dim
    table = _assemble_table(name or e2.name, e2, einf, extra, window, coords, Z, B, ex, period)
    return RunResult(e2, einf, table, states, ex, window, warnings)


def _einf_basis(coords: Coordinates, key, Z: linalg.Echelon, B: linalg.Echelon):
    """Greedy monomial basis of Z/B, completed by reduced vectors if needed."""
    target = Z.dim - B.dim
    if target == 0:
        return []
    out = []
    span = B
    for pos, m in enumerate(coords.module.basis(key)):
        got = 0
        for j in range(coords.scale):
            v = coords.unit(key, pos, j)
            if Z.contains(v) and not span.contains(v):
                span = span.add(v)
                got += 1
        if got:
            out.append((m, got))
        if span.dim == Z.dim:
            return out
    for row in Z.rows:
        if not span.contains(row):
            span = span.add(row)
            out.append((_vector_label(coords, key, row), 1))
    return out


def _vector_label(coords: Coordinates, key, v) -> str:
    terms = []
    for pos, m in enumerate(coords.module.basis(key)):
        if coords.scale == 2:
            c = F9(int(v[2 * pos]), int(v[2 * pos + 1]))
        else:
            c = F9(int(v[pos]))
        if c:
            terms.append(str(m * c))
    return " + ".join(terms)


def _assemble_table(name, e2, einf, extra, window, coords, Z, B, ex, period):
    lo, hi = (window.stem_min, window.stem_max) if window is not None else (0, -1)
    table = HomotopyTable(name, stem_range=(lo, hi), field=e2.field, period=period)
    index = {}
    for key in einf.keys():
        s, t = key
        for b in einf.basis(key):
            cls = TableClass(t - s, s, str(b), extra[(key, str(b))],
                             b if isinstance(b, Monomial) else None)
            if cls.monomial is not None:
                index[cls.monomial.exps] = len(table.classes)
            table.classes.append(cls)

    def locate_class(m: Monomial):
        """Index of the table class representing monomial m, if it is a nonzero E-infinity class."""
        if m.is_zero():
            return None
        m = m.unit()
        if m.exps in index:
            return index[m.exps]
        key, v = coords.monomial_vector(m)
        if key is None or key not in Z or not Z[key].contains(v) or B[key].contains(v):
            return None
        # express v modulo boundaries in the chosen basis
        chosen = [k for k, c in enumerate(table.classes) if c.monomial is not None
                  and e2.locate(c.monomial) and e2.locate(c.monomial)[0] == key]
        for k in chosen:
            w = coords.monomial_vector(table.classes[k].monomial)[1]
            if B[key].contains((v - w) % 3) or B[key].contains((v + w) % 3):
                return k
        return None

    alpha, beta = Monomial.of("alpha"), Monomial.of("beta")
    for k, c in enumerate(table.classes):
        if c.monomial is None:
            continue
        for mu, edges in ((alpha, table.alpha_edges), (beta, table.beta_edges)):
            j = locate_class(mu * c.monomial)
            if j is not None:
                edges.append((k, j))
    # hidden alpha-multiplications from differentials d(x) = alpha*y
    for inst in ex.instances():
        if not inst.coeff or inst.target.exponent("alpha") == 0:
            continue
        y = _divide_alpha(inst.target)
        if y is None:
            continue
        a = locate_class(alpha * inst.source)
        b = locate_class(beta * y)
        if a is None or b is None:
            continue
        table.toda_edges.append((a, b))
        if inst.multiplier.exps == Monomial().exps:
            k, i0 = divmod(inst.i, 9)
            name = f"z_{i0}" if k == 0 else f"w^{9 * k}*z_{i0}"
            table.annotations[a] = f"{name} = <alpha, alpha, {y}>"
    return table


def _divide_alpha(m: Monomial) -> Monomial | None:
    if m.exponent("alpha") != 1:
        return None
    return m.without("alpha").unit()


# Table operations ------------------------------------------------------------------

def tensor_with_exterior(table: HomotopyTable, stem: int, generator: str | None = None,
                         filtration: int = 1) -> HomotopyTable:
    """Table (x) Lambda(x) for a class x of the given stem."""
    lo, hi = table.stem_range
    new_range = (lo + max(0, stem), hi + min(0, stem))
    name = f"{table.name} (x) Lambda({generator or stem})"
    out = HomotopyTable(name, stem_range=new_range, field=table.field, period=table.period)
    n = len(table.classes)
    out.classes = list(table.classes)
    g = Monomial.of(generator) if generator and not generator.lstrip("-").isdigit() else None
    for c in table.classes:
        mono = (g * c.monomial).unit() if (g is not None and c.monomial is not None) else None
        if mono is not None and mono.is_zero():
            mono = None
        label = str(mono) if mono is not None else f"{generator or 'x' + str(stem)}*{c.label}"
        out.classes.append(TableClass(c.stem + stem, c.filtration + filtration, label, c.f3dim, mono))
    for attr in ("alpha_edges", "beta_edges", "toda_edges"):
        edges = getattr(table, attr)
        getattr(out, attr).extend(edges)
        getattr(out, attr).extend((a + n, b + n) for a, b in edges)
    out.annotations = dict(table.annotations)
    out.annotations.update({k + n: v for k, v in table.annotations.items()})
    return out


def _comparable(table: HomotopyTable, window):
    lo, hi = table.stem_range
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
    return lo, hi


def check_periodicity(table: HomotopyTable, period: int, window=None) -> Report:
    """dim pi_n = dim pi_{n+period} wherever both stems are inside the table's range."""
    lo, hi = _comparable(table, window)
    dims = table.dims()
    failures = []
    compared = 0
    for n in range(lo, hi - period + 1):
        if n + period > table.stem_range[1] or n < table.stem_range[0]:
            continue
        compared += 1
        if dims.get(n, 0) != dims.get(n + period, 0):
            failures.append(f"stem {n}: {dims.get(n, 0)} vs stem {n + period}: {dims.get(n + period, 0)}")
    ok = compared > 0 and not failures
    if compared == 0:
        failures.append("no comparable stems: window shorter than one period")
    return Report(f"periodicity {period} of {table.name}", ok, failures,
                  {"compared": compared, "first_failure": failures[0] if failures else None})


def check_self_duality(table: HomotopyTable, shift: int, window=None) -> Report:
    """dim pi_n = dim pi_{shift - n} for all n with both stems in range."""
    lo, hi = _comparable(table, window)
    dims = table.dims()
    failures = []
    compared = 0
    for n in range(lo, hi + 1):
        m = shift - n
        if not (table.stem_range[0] <= m <= table.stem_range[1]):
            continue
        compared += 1
        if dims.get(n, 0) != dims.get(m, 0):
            failures.append(f"stem {n}: {dims.get(n, 0)} vs stem {m}: {dims.get(m, 0)}")
    ok = compared > 0 and not failures
    return Report(f"self-duality n <-> {shift} - n of {table.name}", ok, failures,
                  {"compared": compared})


# Standard pages --------------------------------------------------------------------

EIGHT_CLASSES = ("1", "alpha", "w*alpha", "w*beta", "alpha*a35", "beta*a35",
                 "w*beta*a35", "w*beta*alpha*a35")

E2_SPECS = {
    "G24": (("beta", "w", "alpha"), ("1",), "F3", "g24", (72, "w^9")),
    "G12": (("beta", "w", "alpha"), ("1",), "F9", "g24", (72, "w^9")),
    "SD16": (("v2",), ("1",), "F3", None, (16, "v2")),
    "G2^0": (("beta", "v2h", "zeta"), EIGHT_CLASSES, "F3", "g20", (72, "v2^(9/2)")),
    "G2": (("beta", "v2", "zeta"), EIGHT_CLASSES, "F3", "g20", (144, "v2^9")),
    "G2^1": (("beta", "v2"), EIGHT_CLASSES, "F3", "g20", (144, "v2^9")),
}
ALIASES = {"G20": "G2^0", "G21": "G2^1", "V1": "G2", "g24": "G24", "g12": "G12",
           "g20": "G2^0", "g21": "G2^1", "g2": "G2", "sd16": "SD16"}


def canonical_group(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in E2_SPECS:
        raise KeyError(f"unknown E2 page {name!r}; choose from {', '.join(E2_SPECS)}")
    return name


def padding(group: str) -> tuple[int, int]:
    rules = standard_rules(group)
    rmax = max((r.page for r in rules), default=0)
    return 2 * rmax, rmax


def e2_page(group: str, window: Window = DEFAULT_WINDOW, pad: bool = True) -> BigradedModule:
    """E2 page for a named group, enlarged so that `window` is its reported interior."""
    group = canonical_group(group)
    base, gens, fld, _, _ = E2_SPECS[group]
    if pad:
        ps, pr = padding(group)
        window = window.padded(ps, pr)
    return free_module_span(list(base), [parse_monomial(g) for g in gens], window,
                            f"H({group})", fld)


def standard_rules(group: str) -> list[DifferentialRule]:
    spec = E2_SPECS[canonical_group(group)]
    return load_rules(spec[3]) if spec[3] else []


def homotopy_table(group: str, window: Window = DEFAULT_WINDOW) -> RunResult:
    """Run the standard spectral sequence for a named group and report `window`."""
    group = canonical_group(group)
    e2 = e2_page(group, window)
    period = E2_SPECS[group][4]
    name = {"G2": "V(1)"}.get(group, f"E^h{group} ^ V(1)")
    return run(e2, standard_rules(group), window, name=name, period=period)


def eigen_split_table(result: RunResult) -> tuple[HomotopyTable, HomotopyTable]:
    """Split a G2^0 table by the residual omega action (v2^{1/2} -> -v2^{1/2})."""
    t = result.table
    plus = HomotopyTable(t.name + " (+1)", stem_range=t.stem_range, field=t.field)
    minus = HomotopyTable(t.name + " (-1)", stem_range=t.stem_range, field=t.field)
    for c in t.classes:
        if c.monomial is None:
            raise ValueError(f"class {c.label} is not a monomial; eigenvalue undefined")
        (minus if c.monomial.exponent("v2h") % 2 else plus).classes.append(c)
    return plus, minus


def table_from_dims(name: str, dims: dict, stem_range) -> HomotopyTable:
    t = HomotopyTable(name, stem_range=stem_range)
    for n, d in sorted(dims.items()):
        for _ in range(d):
            t.classes.append(TableClass(n, 0, f"[{n}]"))
    return t


def dumps_table(table: HomotopyTable) -> str:
    return json.dumps(table.to_json(), indent=1)
