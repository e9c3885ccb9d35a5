"""Named bigraded generators, monomials, and monomial-labelled bigraded spaces.

Degrees follow the (s, t) convention: s is cohomological degree, t internal
degree, and the stem is t - s.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .field import F9, ONE, ZERO

POLYNOMIAL = "polynomial"
LAURENT = "invertible-polynomial"
EXTERIOR = "exterior"


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    s: int
    t: int
    kind: str
    field: str = "F3"

    @property
    def stem(self) -> int:
        return self.t - self.s

    @property
    def odd(self) -> bool:
        return self.kind == EXTERIOR


# Fixed order; it determines canonical forms and Koszul signs.
GENERATORS: tuple[GeneratorDecl, ...] = (
    GeneratorDecl("u", 0, -2, LAURENT, "F9"),
    GeneratorDecl("x1", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("x2", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("y1", 2, 0, POLYNOMIAL, "F9"),
    GeneratorDecl("y2", 2, 0, POLYNOMIAL, "F9"),
    GeneratorDecl("a1", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("a2", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("zeta1", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("zeta2", 1, 0, EXTERIOR, "F9"),
    GeneratorDecl("alpha", 1, 4, EXTERIOR),
    GeneratorDecl("beta", 2, 12, POLYNOMIAL),
    GeneratorDecl("w", 0, 8, LAURENT),
    GeneratorDecl("v2", 0, 16, LAURENT),
    GeneratorDecl("v2h", 0, 8, LAURENT),
    GeneratorDecl("zeta", 1, 0, EXTERIOR),
    GeneratorDecl("a35", 1, 36, EXTERIOR),
    GeneratorDecl("b0", 0, 0, POLYNOMIAL),
    GeneratorDecl("b36", 0, 36, POLYNOMIAL),
    GeneratorDecl("e8", 0, 8, POLYNOMIAL),
    GeneratorDecl("e36", 0, 36, POLYNOMIAL),
    GeneratorDecl("e44", 0, 44, POLYNOMIAL),
    GeneratorDecl("e48", 0, 48, POLYNOMIAL),
)
N_GENS = len(GENERATORS)
INDEX = {g.name: i for i, g in enumerate(GENERATORS)}
MARKERS = ("b0", "b36", "e8", "e36", "e44", "e48")
ALIASES = {
    "α": "alpha", "β": "beta", "ζ": "zeta", "ζ1": "zeta1", "ζ2": "zeta2",
    "z1": "zeta1", "z2": "zeta2",
}
_ODD = tuple(i for i, g in enumerate(GENERATORS) if g.odd)
_W, _V2, _V2H = INDEX["w"], INDEX["v2"], INDEX["v2h"]


def gen(name: str) -> GeneratorDecl:
    return GENERATORS[INDEX[ALIASES.get(name, name)]]


def _koszul(a: tuple, b: tuple) -> int:
    """Sign of moving the odd generators of b past those of a."""
    inv = 0
    for j in _ODD:
        if b[j]:
            for i in _ODD:
                if i > j and a[i]:
                    inv += 1
    return -1 if inv & 1 else 1


def _normalize_exps(exps) -> tuple[tuple, int]:
    """Apply w^2 = -v2 and v2h^2 = v2; returns (exponents, sign) or sign 0 for zero."""
    e = list(exps)
    sign = 1
    q, r = divmod(e[_W], 2)
    if q:
        e[_W] = r
        e[_V2] += q
        if q % 2:
            sign = -sign
    q, r = divmod(e[_V2H], 2)
    if q:
        e[_V2H] = r
        e[_V2] += q
    for i in _ODD:
        if e[i] < 0 or e[i] > 1:
            return tuple(e), 0
    return tuple(e), sign


class Monomial:
    """A coefficient times a product of generators in canonical order."""

    __slots__ = ("exps", "coeff")

    def __init__(self, exps=None, coeff=ONE, normalize: bool = True):
        if exps is None:
            exps = (0,) * N_GENS
        elif isinstance(exps, dict):
            e = [0] * N_GENS
            for k, v in exps.items():
                e[INDEX[ALIASES.get(k, k)]] += v
            exps = e
        exps = tuple(exps)
        coeff = F9.coerce(coeff)
        if normalize:
            exps, sign = _normalize_exps(exps)
            coeff = coeff * sign
        self.exps = exps
        self.coeff = coeff

    @classmethod
    def one(cls) -> "Monomial":
        return cls()

    @classmethod
    def of(cls, name: str, power: int = 1) -> "Monomial":
        return cls({name: power})

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        return parse_monomial(text)

    def is_zero(self) -> bool:
        return not self.coeff

    def unit(self) -> "Monomial":
        """Same monomial with coefficient 1."""
        return Monomial(self.exps, ONE, normalize=False)

    @property
    def key(self) -> tuple:
        return self.exps

    def exponent(self, name: str) -> int:
        return self.exps[INDEX[ALIASES.get(name, name)]]

    def bidegree(self) -> tuple[int, int]:
        s = t = 0
        for g, e in zip(GENERATORS, self.exps):
            if e:
                s += g.s * e
                t += g.t * e
        return s, t

    @property
    def stem(self) -> int:
        s, t = self.bidegree()
        return t - s

    def generators(self) -> list[str]:
        return [g.name for g, e in zip(GENERATORS, self.exps) if e]

    def without(self, *names: str) -> "Monomial":
        e = list(self.exps)
        for n in names:
            e[INDEX[n]] = 0
        return Monomial(e, self.coeff, normalize=False)

    def __mul__(self, other):
        if isinstance(other, Monomial):
            sign = _koszul(self.exps, other.exps)
            e = tuple(a + b for a, b in zip(self.exps, other.exps))
            return Monomial(e, self.coeff * other.coeff * sign)
        if isinstance(other, (F9, int)):
            return Monomial(self.exps, self.coeff * other, normalize=False)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (F9, int)):
            return Monomial(self.exps, self.coeff * other, normalize=False)
        return NotImplemented

    def __neg__(self):
        return Monomial(self.exps, -self.coeff, normalize=False)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Monomial()
        if n > 1 and any(self.exps[i] for i in _ODD):
            return Monomial(coeff=ZERO, normalize=False)
        return Monomial(tuple(n * e for e in self.exps), self.coeff ** n)

    def inverse(self) -> "Monomial":
        for g, e in zip(GENERATORS, self.exps):
            if e and g.kind != LAURENT:
                raise ValueError(f"{self} is not invertible")
        return Monomial(tuple(-e for e in self.exps), self.coeff.inverse())

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps and self.coeff == other.coeff

    def __hash__(self):
        return hash((self.exps, self.coeff))

    def __repr__(self):
        return f"Monomial({str(self)!r})"

    def __str__(self):
        return format_monomial(self.exps, self.coeff)


def format_monomial(exps, coeff=ONE) -> str:
    parts = []
    v2 = exps[_V2]
    half = exps[_V2H]
    for i, (g, e) in enumerate(zip(GENERATORS, exps)):
        if i == _V2H:
            continue
        if i == _V2:
            if half:
                num = 2 * v2 + half
                parts.append(f"v2^({num}/2)")
            elif v2:
                parts.append("v2" if v2 == 1 else f"v2^{v2}")
            continue
        if e:
            parts.append(g.name if e == 1 else f"{g.name}^{e}")
    body = "*".join(parts)
    if not coeff:
        return "0"
    if coeff == ONE:
        return body or "1"
    if coeff == -ONE:
        return "-" + (body or "1")
    return f"{coeff}*{body}" if body else str(coeff)


def split_factors(text: str) -> list[str]:
    """Split on '*' outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p.strip() for p in out]


_FACTOR = re.compile(r"^([A-Za-zαβζ][A-Za-z0-9αβζ]*)(?:\^(.+))?$")


def parse_exponent(text: str, variable: str | None = None) -> tuple[Fraction, Fraction]:
    """Parse an exponent that is affine in an optional variable: returns (slope, intercept)."""
    t = text.strip().replace(" ", "")
    while t.startswith("(") and _matching(t) == len(t) - 1:
        t = t[1:-1]
    m = re.fullmatch(r"\((.+)\)/(\d+)", t) or re.fullmatch(r"([^()/]+)/(\d+)", t)
    if m:
        a, b = parse_exponent(m.group(1), variable)
        d = int(m.group(2))
        return a / d, b / d
    slope, inter = Fraction(0), Fraction(0)
    for sign, term in re.findall(r"([+-]?)([^+-]+)", t):
        s = -1 if sign == "-" else 1
        if variable and term.endswith(variable):
            coef = term[: -len(variable)].rstrip("*")
            slope += s * (int(coef) if coef else 1)
        elif re.fullmatch(r"\d+", term):
            inter += s * int(term)
        else:
            raise ValueError(f"cannot parse exponent {text!r}")
    return slope, inter


def _matching(t: str) -> int:
    depth = 0
    for i, ch in enumerate(t):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i
    return -1


def parse_factors(text: str, variable: str | None = None):
    """Parse a product string into (coefficient, [(generator, slope, intercept)])."""
    text = text.strip()
    coeff = ONE
    if text.startswith("-"):
        coeff, text = -ONE, text[1:].strip()
    elif text.startswith("+"):
        text = text[1:].strip()
    factors = []
    for part in split_factors(text):
        if not part:
            raise ValueError(f"empty factor in {text!r}")
        if re.fullmatch(r"\d+", part) or re.fullmatch(r"(?:omega|ω)(?:\^-?\d+)?", part):
            coeff = coeff * F9.parse(part)
            continue
        m = _FACTOR.match(part)
        if not m:
            raise ValueError(f"cannot parse factor {part!r}")
        name = m.group(1)
        name = ALIASES.get(name, name)
        if name not in INDEX:
            raise ValueError(f"unknown generator {name!r}")
        if m.group(2) is None:
            slope, inter = Fraction(0), Fraction(1)
        else:
            slope, inter = parse_exponent(m.group(2), variable)
        factors.append((name, slope, inter))
    return coeff, factors


def build_monomial(coeff, factors, value: int = 0) -> Monomial:
    """Instantiate parsed factors at a variable value.

    Half-integral powers of v2 use the atomic square root v2h. Factors are
    multiplied in the order written, so Koszul signs follow the text.
    """
    result = Monomial(coeff=coeff)
    for name, slope, inter in factors:
        x = slope * value + inter
        single = [0] * N_GENS
        if name == "v2" and x.denominator == 2:
            single[_V2] = (x.numerator - 1) // 2
            single[_V2H] = 1
        elif x.denominator == 1:
            single[INDEX[name]] = int(x)
        else:
            raise ValueError(f"non-integral exponent {x} on {name}")
        result = result * Monomial(single)
    return result


def parse_monomial(text: str) -> Monomial:
    coeff, factors = parse_factors(text)
    return build_monomial(coeff, factors)


class Element:
    """A finite F9-linear combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, F9] = {}
        if terms is None:
            return
        if isinstance(terms, Monomial):
            terms = [terms]
        if isinstance(terms, dict):
            terms = [Monomial(k, v, normalize=False) for k, v in terms.items()]
        for m in terms:
            self._add(m.exps, m.coeff)

    def _add(self, exps, c):
        if not c:
            return
        v = self.terms.get(exps, ZERO) + c
        if v:
            self.terms[exps] = v
        else:
            self.terms.pop(exps, None)

    @classmethod
    def parse(cls, text: str) -> "Element":
        text = text.strip()
        if text == "0":
            return cls()
        pieces, depth, cur = [], 0, ""
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith("^"):
                pieces.append(cur)
                cur = ch
            else:
                cur += ch
        pieces.append(cur)
        return cls([parse_monomial(p) for p in pieces if p.strip()])

    def monomials(self) -> list[Monomial]:
        return [Monomial(k, v, normalize=False) for k, v in sorted(self.terms.items())]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _as_element(other)
        out = Element()
        out.terms = dict(self.terms)
        for k, v in other.terms.items():
            out._add(k, v)
        return out

    def __neg__(self):
        out = Element()
        out.terms = {k: -v for k, v in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-_as_element(other))

    def __mul__(self, other):
        if isinstance(other, (F9, int)):
            out = Element()
            for k, v in self.terms.items():
                out._add(k, v * other)
            return out
        other = _as_element(other)
        out = Element()
        for ka, va in self.terms.items():
            ma = Monomial(ka, va, normalize=False)
            for kb, vb in other.terms.items():
                p = ma * Monomial(kb, vb, normalize=False)
                out._add(p.exps, p.coeff)
        return out

    def __rmul__(self, other):
        if isinstance(other, (F9, int)):
            return self * other
        return _as_element(other) * self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Element(Monomial())
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Element":
        if len(self.terms) != 1:
            raise ValueError("only single-term elements are inverted")
        return Element(self.monomials()[0].inverse())

    def map_coefficients(self, fn: Callable[[F9], F9]) -> "Element":
        out = Element()
        for k, v in self.terms.items():
            out._add(k, fn(v))
        return out

    def __eq__(self, other):
        if isinstance(other, (Monomial, int)):
            other = _as_element(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for m in self.monomials():
            s = str(m)
            if not out:
                out = s
            elif s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out


def _as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Monomial):
        return Element(x)
    if isinstance(x, (F9, int)):
        return Element(Monomial(coeff=x))
    raise TypeError(f"cannot treat {x!r} as an element")


def stem_of(m: Monomial) -> int:
    return m.stem


@dataclass(frozen=True)
class Window:
    """A finite region of bidegrees. Unset bounds are unconstrained."""

    stem_min: int | None = -60
    stem_max: int | None = 230
    s_min: int = 0
    s_max: int = 40
    t_min: int | None = None
    t_max: int | None = None

    def contains(self, s: int, t: int) -> bool:
        if s < self.s_min or s > self.s_max:
            return False
        n = t - s
        if self.stem_min is not None and n < self.stem_min:
            return False
        if self.stem_max is not None and n > self.stem_max:
            return False
        if self.t_min is not None and t < self.t_min:
            return False
        if self.t_max is not None and t > self.t_max:
            return False
        return True

    def padded(self, stems: int, s: int = 0) -> "Window":
        return Window(
            None if self.stem_min is None else self.stem_min - stems,
            None if self.stem_max is None else self.stem_max + stems,
            self.s_min, self.s_max + s, self.t_min, self.t_max)

    def shrunk(self, stems: int, s: int = 0) -> "Window":
        return self.padded(-stems, -s)

    def stems(self) -> range:
        return range(self.stem_min, self.stem_max + 1)


DEFAULT_WINDOW = Window()


def bidegree(m: Monomial) -> tuple[int, int]:
    return m.bidegree()


class BigradedModule:
    """Per-bidegree ordered bases of distinct monomial labels.

    `degree` maps a monomial to its bucket key; by default this is its (s, t).
    Basis entries are normally Monomials with coefficient one. Entries that are
    Elements (for example invariant vectors) are allowed but are not indexed.
    """

    def __init__(self, name: str, field: str = "F3",
                 buckets: dict | None = None, window: Window | None = None,
                 degree: Callable[[Monomial], tuple[int, int]] = bidegree):
        self.name = name
        self.field = field
        self.window = window
        self.degree = degree
        self.buckets: dict[tuple[int, int], list] = {}
        self._index: dict[tuple, tuple[tuple[int, int], int]] = {}
        for key, basis in (buckets or {}).items():
            for b in basis:
                self.add(key, b)

    def add(self, key, entry):
        key = tuple(key)
        if isinstance(entry, Monomial):
            if self.degree(entry) != key:
                raise ValueError(f"{entry} has degree {self.degree(entry)}, not {key}")
            if entry.exps in self._index:
                raise ValueError(f"duplicate basis monomial {entry}")
            entry = entry.unit()
        lst = self.buckets.setdefault(key, [])
        if isinstance(entry, Monomial):
            self._index[entry.exps] = (key, len(lst))
        lst.append(entry)

    def keys(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.buckets.items() if v)

    def basis(self, key) -> list:
        return self.buckets.get(tuple(key), [])

    def dim(self, key) -> int:
        return len(self.basis(key))

    def f3_dim(self, key) -> int:
        return self.dim(key) * (2 if self.field == "F9" else 1)

    def locate(self, m: Monomial):
        """(key, position) of a monomial in this module, or None."""
        return self._index.get(m.exps)

    def __contains__(self, m: Monomial) -> bool:
        return m.exps in self._index

    def monomials(self) -> Iterator[Monomial]:
        for key in self.keys():
            for b in self.buckets[key]:
                if isinstance(b, Monomial):
                    yield b

    def dims(self) -> dict[tuple[int, int], int]:
        return {k: self.dim(k) for k in self.keys()}

    def stem_dims(self, f3: bool = True) -> dict[int, int]:
        out: dict[int, int] = {}
        for (s, t) in self.keys():
            n = t - s
            out[n] = out.get(n, 0) + (self.f3_dim((s, t)) if f3 else self.dim((s, t)))
        return out

    def total_dim(self) -> int:
        return sum(self.f3_dim(k) for k in self.keys())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": self.field,
            "buckets": [
                {"s": s, "t": t, "basis": [str(b) for b in self.buckets[(s, t)]]}
                for (s, t) in self.keys()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict, degree=bidegree) -> "BigradedModule":
        mod = cls(data["name"], data.get("field", "F3"), degree=degree)
        for b in data["buckets"]:
            for text in b["basis"]:
                mod.add((b["s"], b["t"]), parse_monomial(text))
        return mod

    def __repr__(self):
        return f"BigradedModule({self.name!r}, {self.field}, {self.total_dim()} over F3)"


def _generator_list(gens) -> list[GeneratorDecl]:
    out = []
    for g in gens:
        if isinstance(g, Monomial):
            names = g.generators()
            if len(names) != 1 or g.exponent(names[0]) != 1:
                raise ValueError(f"base ring generator must be a single generator, got {g}")
            g = names[0]
        out.append(gen(g))
    return out


def free_module_span(base_ring_gens, module_gens, window: Window,
                     name: str = "span", field: str = "F3") -> BigradedModule:
    """The span of (base-ring monomials) * (module generators) inside a finite window.

    Polynomial generators must raise s (so the s-bound truncates them), and at
    most one invertible generator may be used; it must have nonzero stem and
    zero s, so the window bounds cut its powers to a finite range. A window
    without a finite s bound and a finite stem or t range is rejected.
    """
    gens = _generator_list(base_ring_gens)
    laurent = [g for g in gens if g.kind == LAURENT]
    others = [g for g in gens if g.kind != LAURENT]
    if len(laurent) > 1:
        raise ValueError("at most one invertible generator is supported")
    for g in laurent:
        if g.s != 0 or g.stem == 0:
            raise ValueError(f"window cannot be closed under {g.name}: zero-stem invertible generator")
    for g in others:
        if g.kind == POLYNOMIAL and g.s <= 0:
            raise ValueError(f"polynomial generator {g.name} is not bounded by the s-window")
    has_stem = window.stem_min is not None and window.stem_max is not None
    has_t = window.t_min is not None and window.t_max is not None
    if laurent and not (has_stem or has_t):
        raise ValueError("window must bound stems or t to truncate invertible powers")

    mod = BigradedModule(name, field, window=window)
    ranges = []
    for g in others:
        top = 1 if g.kind == EXTERIOR else window.s_max // g.s
        ranges.append(range(0, top + 1))
    for mg in module_gens:
        mg = mg if isinstance(mg, Monomial) else parse_monomial(mg)
        for exps in itertools.product(*ranges):
            base = Monomial({g.name: e for g, e in zip(others, exps)})
            m = base * mg
            if m.is_zero():
                continue
            s, t = m.bidegree()
            if s < window.s_min or s > window.s_max:
                continue
            if not laurent:
                if window.contains(s, t):
                    mod.add((s, t), m)
                continue
            L = laurent[0]
            for k in _laurent_range(L, s, t, window):
                mk = Monomial({L.name: k}) * m
                if mk.is_zero():
                    continue
                key = mk.bidegree()
                if window.contains(*key):
                    mod.add(key, mk)
    return mod


def _laurent_range(L: GeneratorDecl, s: int, t: int, window: Window) -> range:
    lo, hi = -10**9, 10**9
    step = L.t  # s of L is zero, so stem and t move by L.t
    bounds = []
    if window.stem_min is not None and window.stem_max is not None:
        bounds.append((window.stem_min - (t - s), window.stem_max - (t - s)))
    if window.t_min is not None and window.t_max is not None:
        bounds.append((window.t_min - t, window.t_max - t))
    for a, b in bounds:
        if step > 0:
            klo, khi = -((-a) // step), b // step
        else:
            klo, khi = -(b // -step), (-a) // -step
        lo, hi = max(lo, klo), min(hi, khi)
    return range(lo, hi + 1)
