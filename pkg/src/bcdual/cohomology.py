"""Cohomology of finite subgroups with coefficients in F9[u^{+-1}], via invariants.

Concrete rings are built from the centralizer cohomology F9[y1, u^{+-1}] with
exterior classes x1, a1, zeta1, or from the product of that ring with its
conjugate copy (subscript 2). Group elements act through ActionSpec data;
every F9 space is handled as an F3 space of twice the dimension, which makes
Frobenius-semilinear operators ordinary F3-linear maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from . import linalg
from .field import F9, OMEGA, ONE
from .graded import (
    INDEX, BigradedModule, Element, Monomial, Window, free_module_span, parse_monomial,
)

SUBSCRIPT_1 = ("u", "x1", "y1", "a1", "zeta1")
SUBSCRIPT_2 = ("x2", "y2", "a2", "zeta2")


@dataclass(frozen=True)
class ActionSpec:
    """A ring automorphism given by images of generators.

    Generators without an image are fixed. A semilinear action applies
    Frobenius to coefficients. `swap` records that the action exchanges the
    two factors of the product ring (it is ignored on single-factor rings).
    """

    name: str
    images: dict = field(default_factory=dict)
    semilinear: bool = False
    swap: bool = False

    def image(self, name: str) -> Element:
        img = self.images.get(name)
        if img is None:
            return Element(Monomial.of(name))
        return img if isinstance(img, Element) else Element.parse(img)

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    def _monomial_image(self, exps) -> Element:
        img = self._cache.get(exps)
        if img is None:
            img = Element(Monomial())
            for name, e in zip(_names(), exps):
                if e:
                    g = self.image(name)
                    if len(g.terms) == 1:
                        img = img * Element(g.monomials()[0] ** e)
                    else:
                        img = img * g ** e
            self._cache[exps] = img
        return img

    def apply(self, x) -> Element:
        x = x if isinstance(x, Element) else Element(x)
        out = Element()
        for exps, c in x.terms.items():
            c = c.frobenius() if self.semilinear else c
            out = out + self._monomial_image(exps) * c
        return out

    def compose(self, other: "ActionSpec", name: str | None = None) -> "ActionSpec":
        """self after other."""
        names = set(self.images) | set(other.images)
        imgs = {n: self.apply(other.image(n)) for n in sorted(names)}
        return ActionSpec(name or f"{self.name}{other.name}", imgs,
                          self.semilinear != other.semilinear, self.swap != other.swap)

    def power(self, k: int) -> "ActionSpec":
        out = IDENTITY
        for _ in range(k):
            out = self.compose(out)
        return ActionSpec(f"{self.name}^{k}", out.images, out.semilinear, out.swap)


def _names():
    from .graded import GENERATORS
    return [g.name for g in GENERATORS]


IDENTITY = ActionSpec("id")

OMEGA_STAR = ActionSpec(
    "omega",
    {
        "x1": Element.parse("x2"), "x2": Element.parse("-x1"),
        "y1": Element.parse("y2"), "y2": Element.parse("-y1"),
        "a1": Element.parse("a2"), "a2": Element.parse("-a1"),
        "u": Element.parse("omega*u"),
        "zeta1": Element.parse("zeta2"), "zeta2": Element.parse("zeta1"),
    },
    semilinear=False, swap=True,
)

PHI_STAR = ActionSpec(
    "phi",
    {
        "x1": Element.parse("-x2"), "x2": Element.parse("-x1"),
        "y1": Element.parse("-y2"), "y2": Element.parse("-y1"),
        "a1": Element.parse("-a2"), "a2": Element.parse("-a1"),
        "zeta1": Element.parse("zeta2"), "zeta2": Element.parse("zeta1"),
    },
    semilinear=True, swap=True,
)

OMEGA2_STAR = OMEGA_STAR.compose(OMEGA_STAR, "omega^2")
OMEGA_PHI_STAR = OMEGA_STAR.compose(PHI_STAR, "omega*phi")

# Residual omega on abstract classes: it negates v2^{1/2} and fixes the rest.
RESIDUAL_OMEGA = ActionSpec("residual-omega", {"v2h": Element.parse("-v2h")})

SUBGROUP_GENERATORS = {
    "SD16": (OMEGA_STAR, PHI_STAR),
    "D8": (OMEGA2_STAR, PHI_STAR),
    "Q8": (OMEGA2_STAR, OMEGA_PHI_STAR),
    "C4": (OMEGA2_STAR,),
}


class CohomologyRing:
    """A bigraded F9-space with a monomial ambient basis and attached actions.

    Ambient basis entries are pairs (factor, Monomial). Single-factor rings use
    factor 0 only; the product ring uses factor 0 for the subscript-1 copy and
    factor 1 for the subscript-2 copy.
    """

    def __init__(self, name: str, factor_gens: list[tuple[str, ...]], window: Window,
                 actions: dict | None = None, field: str = "F9"):
        self.name = name
        self.factor_gens = factor_gens
        self.window = window
        self.actions = dict(actions or {})
        self.field = field
        self._buckets: dict[tuple[int, int], list] = {}
        self._index: dict[tuple[int, int], dict] = {}
        for f, gens in enumerate(factor_gens):
            mod = free_module_span(list(gens), [Monomial()], window, name, field)
            for key in mod.keys():
                for m in mod.basis(key):
                    self._buckets.setdefault(key, []).append((f, m))
        for key, entries in self._buckets.items():
            self._index[key] = {(f, m.exps): i for i, (f, m) in enumerate(entries)}

    @property
    def factors(self) -> int:
        return len(self.factor_gens)

    @property
    def scale(self) -> int:
        return 2 if self.field == "F9" else 1

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self._buckets)

    def ambient(self, key) -> list:
        return self._buckets.get(tuple(key), [])

    def ambient_dim(self, key) -> int:
        return len(self.ambient(key)) * self.scale

    def vector(self, key, parts) -> np.ndarray:
        """F3 coordinates of a tuple of Elements (one per factor) in bucket key."""
        idx = self._index.get(tuple(key), {})
        v = np.zeros(self.ambient_dim(key), dtype=np.int64)
        for f, el in enumerate(parts):
            if el is None:
                continue
            for m in el.monomials():
                pos = idx.get((f, m.exps))
                if pos is None:
                    raise KeyError(f"{m} (factor {f}) is not in bucket {key} of {self.name}")
                if self.scale == 2:
                    v[2 * pos] += m.coeff.c0
                    v[2 * pos + 1] += m.coeff.c1
                else:
                    if not m.coeff.in_f3():
                        raise ValueError(f"coefficient {m.coeff} outside F3")
                    v[pos] += m.coeff.c0
        return v % 3

    def parts(self, key, vec) -> tuple:
        """Inverse of vector(): a tuple of Elements per factor."""
        out = [Element() for _ in range(self.factors)]
        for i, (f, m) in enumerate(self.ambient(key)):
            if self.scale == 2:
                c = F9(int(vec[2 * i]), int(vec[2 * i + 1]))
            else:
                c = F9(int(vec[i]))
            if c:
                out[f] = out[f] + Element(Monomial(m.exps, c, normalize=False))
        return tuple(out)

    def basis_vectors(self, key):
        """Yield (label, F3 vector) for the F3 basis of the ambient bucket."""
        for i, (f, m) in enumerate(self.ambient(key)):
            for j, c in enumerate((ONE, OMEGA)[: self.scale]):
                v = np.zeros(self.ambient_dim(key), dtype=np.int64)
                v[self.scale * i + j] = 1
                yield (f, m * c), v

    def apply(self, action: ActionSpec, parts: tuple) -> tuple:
        imgs = tuple(action.apply(p) if p is not None else Element() for p in parts)
        if self.factors == 2 and action.swap:
            imgs = (imgs[1], imgs[0])
        return imgs

    def operator(self, action: ActionSpec, key) -> np.ndarray:
        """Matrix M with rows = images of the F3 basis; v -> v @ M."""
        key = tuple(key)
        n = self.ambient_dim(key)
        idx = self._index.get(key, {})
        M = np.zeros((n, n), dtype=np.int64)
        scalars = (ONE, OMEGA)[: self.scale]
        for i, (f, m) in enumerate(self.ambient(key)):
            img = action._monomial_image(m.exps)
            target = 1 - f if (self.factors == 2 and action.swap) else f
            for exps, c in img.terms.items():
                pos = idx.get((target, exps))
                if pos is None:
                    raise ValueError(f"{action.name} moves {m} out of bucket {key}")
                for j, a in enumerate(scalars):
                    a = a.frobenius() if action.semilinear else a
                    v = c * a
                    row = self.scale * i + j
                    if self.scale == 2:
                        M[row, 2 * pos] += v.c0
                        M[row, 2 * pos + 1] += v.c1
                    else:
                        M[row, pos] += v.c0
        return M % 3


@dataclass
class Subspaces:
    """A choice of F3 subspace in each bucket of a CohomologyRing."""

    ring: CohomologyRing
    rows: dict
    name: str = ""

    def keys(self):
        return [k for k in sorted(self.rows) if len(self.rows[k])]

    def dim(self, key) -> int:
        r = self.rows.get(tuple(key))
        return 0 if r is None else len(r)

    def dims(self) -> dict:
        return {k: self.dim(k) for k in self.keys()}

    def echelon(self, key) -> linalg.Echelon:
        return linalg.Echelon(self.ring.ambient_dim(key), self.rows.get(tuple(key)))

    def contains(self, key, vec) -> bool:
        return self.echelon(key).contains(vec)

    def to_module(self) -> BigradedModule:
        mod = BigradedModule(self.name or self.ring.name, "F3")
        for key in self.keys():
            for v in self.rows[key]:
                parts = self.ring.parts(key, v)
                mod.add(key, str(parts[0]) if self.ring.factors == 1
                        else "(" + ", ".join(str(p) for p in parts) + ")")
        return mod


def whole_ring(ring: CohomologyRing) -> Subspaces:
    rows = {k: np.eye(ring.ambient_dim(k), dtype=np.int64) for k in ring.keys()}
    return Subspaces(ring, rows, ring.name)


def invariants(ring: CohomologyRing, generators, window: Window | None = None,
               within: Subspaces | None = None, name: str = "") -> Subspaces:
    """Per-bucket fixed subspace of the group generated by the given actions."""
    keys = ring.keys() if within is None else within.keys()
    rows = {}
    for key in keys:
        if window is not None and not window.contains(*key):
            continue
        n = ring.ambient_dim(key)
        basis = np.eye(n, dtype=np.int64) if within is None else within.rows[key]
        if not generators:
            rows[key] = basis
            continue
        blocks = [(basis @ (ring.operator(g, key) - np.eye(n, dtype=np.int64))) % 3
                  for g in generators]
        stacked = np.hstack(blocks)
        coeffs = linalg.left_kernel(stacked)
        rows[key] = (coeffs @ basis) % 3
    return Subspaces(ring, rows, name or ring.name)


def eigenspace_split(space: Subspaces, involution: ActionSpec) -> tuple[Subspaces, Subspaces]:
    """Split each bucket into the +1 and -1 eigenspaces of an involution."""
    plus, minus = {}, {}
    ring = space.ring
    for key in space.keys():
        basis = space.rows[key]
        n = ring.ambient_dim(key)
        T = ring.operator(involution, key)
        if (((basis @ T @ T) - basis) % 3).any():
            raise ValueError(f"{involution.name} is not an involution on bucket {key}")
        # the subspace must be preserved
        img = (basis @ T) % 3
        if not linalg.Echelon(n, basis).contains(img):
            raise ValueError(f"{involution.name} does not preserve bucket {key}")
        eye = np.eye(n, dtype=np.int64)
        plus[key] = (linalg.left_kernel((basis @ (T - eye)) % 3) @ basis) % 3
        minus[key] = (linalg.left_kernel((basis @ (T + eye)) % 3) @ basis) % 3
        if len(plus[key]) + len(minus[key]) != len(basis):
            raise ValueError(f"eigenspaces do not span bucket {key}")
    return (Subspaces(ring, plus, space.name + "+"), Subspaces(ring, minus, space.name + "-"))


# Rings -----------------------------------------------------------------------

def _concrete_window(window: Window) -> Window:
    """Concrete rings are cut by s and t; stems are redundant there."""
    if window.t_min is None:
        lo = window.stem_min + window.s_min if window.stem_min is not None else None
        hi = window.stem_max + window.s_max if window.stem_max is not None else None
        return Window(None, None, window.s_min, window.s_max, lo, hi)
    return window


def build_coefficient_ring(window: Window) -> CohomologyRing:
    """F9[u^{+-1}] in cohomological degree zero."""
    w = _concrete_window(window)
    return CohomologyRing("F9[u]", [("u",)], Window(None, None, 0, 0, w.t_min, w.t_max))


def build_c3_cohomology(window: Window) -> CohomologyRing:
    return CohomologyRing("C3", [("u", "y1", "x1")], _concrete_window(window))


def build_centralizer_cohomology(window: Window, zeta: bool = True) -> CohomologyRing:
    gens = ("u", "y1", "x1", "a1") + (("zeta1",) if zeta else ())
    return CohomologyRing("C" if zeta else "C1", [gens], _concrete_window(window))


def build_product_ring(window: Window, zeta: bool = True) -> CohomologyRing:
    """H*(C) x H*(omega C omega^-1), the target of the detection map."""
    g1 = ("u", "y1", "x1", "a1") + (("zeta1",) if zeta else ())
    g2 = ("u", "y2", "x2", "a2") + (("zeta2",) if zeta else ())
    return CohomologyRing("C x C'", [g1, g2], _concrete_window(window))


# Detection image ---------------------------------------------------------------

RHO_GENERATORS = (
    ("1", "1"), ("x1", "0"), ("0", "x2"), ("y1", "0"),
    ("x1*a1", "-x2*a2"), ("y1*a1", "0"), ("0", "y2*a2"), ("y1*x1*a1", "0"),
)


def _pair(a: str, b: str) -> tuple[Element, Element]:
    return (Element.parse(a), Element.parse(b))


def _pair_mul(p, q):
    return (p[0] * q[0], p[1] * q[1])


def rho_image(ring: CohomologyRing, zeta: bool = True) -> Subspaces:
    """The free F9[y1+y2, u^{+-1}] (x Lambda(zeta1+zeta2)) module on the listed pairs."""
    gens = [_pair(a, b) for a, b in RHO_GENERATORS]
    rows = {}
    for key in ring.keys():
        s, t = key
        vecs = []
        for g in gens:
            gs = _pair_s(g)
            for e in ((0, 1) if zeta else (0,)):
                rest = s - gs - e
                if rest < 0 or rest % 2:
                    continue
                j = rest // 2
                if t % 2:
                    continue
                k = -t // 2
                mult = (Element(Monomial({"y1": j, "u": k})), Element(Monomial({"y2": j, "u": k})))
                if e:
                    mult = _pair_mul(mult, (Element.parse("zeta1"), Element.parse("zeta2")))
                p = _pair_mul(mult, g)
                for c in (ONE, OMEGA):
                    vecs.append(ring.vector(key, (p[0] * c, p[1] * c)))
        if vecs:
            ech = linalg.Echelon(ring.ambient_dim(key), vecs)
            rows[key] = ech.rows
    return Subspaces(ring, rows, "im(rho)")


def _pair_s(p) -> int:
    for el in p:
        for m in el.monomials():
            return m.bidegree()[0]
    return 0


def verify_rho_image(window: Window, actions=(OMEGA_STAR, PHI_STAR)) -> dict:
    """Check that the detection image is closed under the given actions."""
    ring = build_product_ring(window)
    image = rho_image(ring)
    checked = 0
    for key in image.keys():
        ech = image.echelon(key)
        for g in actions:
            img = (image.rows[key] @ ring.operator(g, key)) % 3
            bad = ech.reduce(img)
            for i, row in enumerate(bad):
                if row.any():
                    parts = ring.parts(key, image.rows[key][i])
                    return {"ok": False, "bucket": key, "action": g.name,
                            "vector": [str(p) for p in parts], "checked": checked}
        checked += 1
    return {"ok": True, "buckets": checked}


# Abstract classes and their concrete representatives ----------------------------

SINGLE_REALIZATION = {
    "alpha": "omega*x1*u^-2",
    "beta": "omega^3*y1*u^-6",
    "w": "omega^2*u^-4",
    "v2": "u^-8",
    "v2h": "u^-4",
    "a35": "omega*a1*u^-18",
    "zeta": "zeta1",
    "u": "u", "y1": "y1", "x1": "x1", "a1": "a1", "zeta1": "zeta1",
}

PAIR_REALIZATION = {
    "alpha": ("omega*x1*u^-2", "omega^7*x2*u^-2"),
    "beta": ("omega^3*y1*u^-6", "omega^5*y2*u^-6"),
    "w": ("omega^2*u^-4", "omega^6*u^-4"),
    "v2": ("u^-8", "u^-8"),
    "v2h": ("u^-4", "u^-4"),
    "a35": ("omega*a1*u^-18", "omega^7*a2*u^-18"),
    "zeta": ("zeta1", "zeta2"),
}


def realize(m: Monomial, factors: int = 1) -> tuple:
    """Concrete representative of an abstract monomial in a one- or two-factor ring."""
    if factors == 1:
        out = Element(Monomial(coeff=m.coeff))
        for name in _names():
            e = m.exponent(name)
            if e:
                out = out * Element.parse(SINGLE_REALIZATION[name]) ** e
        return (out,)
    a = Element(Monomial(coeff=m.coeff))
    b = Element(Monomial(coeff=m.coeff))
    for name in _names():
        e = m.exponent(name)
        if e:
            pa, pb = PAIR_REALIZATION[name]
            a = a * Element.parse(pa) ** e
            b = b * Element.parse(pb) ** e
    return (a, b)


def realized_span(ring: CohomologyRing, module: BigradedModule, f9_span: bool = False,
                  name: str = "") -> Subspaces:
    """Image of an abstract monomial module in a concrete ring, bucket by bucket."""
    rows: dict = {}
    for key in module.keys():
        vecs = []
        for m in module.basis(key):
            parts = realize(m, ring.factors)
            for c in ((ONE, OMEGA) if f9_span else (ONE,)):
                vecs.append(ring.vector(key, tuple(p * c for p in parts)))
        rows[key] = linalg.Echelon(ring.ambient_dim(key), vecs).rows
    return Subspaces(ring, rows, name or module.name)


def compare(a: Subspaces, b: Subspaces) -> dict:
    """Bucket-wise equality of two subspace families of the same ring."""
    keys = sorted(set(a.keys()) | set(b.keys()))
    for key in keys:
        n = a.ring.ambient_dim(key)
        ea = linalg.Echelon(n, a.rows.get(key))
        eb = linalg.Echelon(n, b.rows.get(key))
        if ea.dim != eb.dim or (ea.dim and not eb.contains(ea.rows)):
            return {"ok": False, "bucket": key, "dims": (ea.dim, eb.dim)}
    return {"ok": True, "buckets": len(keys)}


def is_subspace(a: Subspaces, b: Subspaces) -> bool:
    """a is contained in b bucket-wise."""
    for key in a.keys():
        if not b.echelon(key).contains(a.rows[key]):
            return False
    return True


# Named subgroups ------------------------------------------------------------------

EIGHT_CLASSES = ("1", "alpha", "w*alpha", "w*beta", "alpha*a35", "beta*a35",
                 "w*beta*a35", "w*beta*alpha*a35")


def expected_module(subgroup: str, window: Window) -> BigradedModule:
    """The abstract answer for each subgroup, as a monomial module."""
    gens8 = [parse_monomial(g) for g in EIGHT_CLASSES]
    one = [Monomial()]
    if subgroup == "SD16":
        return free_module_span(["v2"], one, window, "H(SD16)")
    if subgroup in ("G24", "G12"):
        return free_module_span(["beta", "w", "alpha"], one, window, f"H({subgroup})",
                                "F9" if subgroup == "G12" else "F3")
    if subgroup == "N":
        return free_module_span(["beta", "v2h", "alpha", "a35", "zeta"], one, window, "H(N)", "F9")
    if subgroup == "N1":
        return free_module_span(["beta", "v2h", "alpha", "a35"], one, window, "H(N1)", "F9")
    if subgroup == "G2^0":
        return free_module_span(["beta", "v2h", "zeta"], gens8, window, "H(G2^0)")
    if subgroup == "G2":
        return free_module_span(["beta", "v2", "zeta"], gens8, window, "H(G2)")
    if subgroup == "G2^1":
        return free_module_span(["beta", "v2"], gens8, window, "H(G2^1)")
    if subgroup == "C3":
        return free_module_span(["u", "y1", "x1"], one, window, "H(C3)", "F9")
    if subgroup == "C":
        return free_module_span(["u", "y1", "x1", "a1", "zeta1"], one, window, "H(C)", "F9")
    raise KeyError(subgroup)


SUBGROUPS = ("C3", "C", "N", "N1", "G12", "G24", "SD16", "G2^1", "G2^0", "G2")


def subgroup_cohomology(subgroup: str, window: Window) -> Subspaces:
    """Compute H*(subgroup, F9[u^{+-1}]) as invariants inside a concrete ring."""
    if subgroup == "SD16":
        ring = build_coefficient_ring(window)
        return invariants(ring, SUBGROUP_GENERATORS["SD16"], name="H(SD16)")
    if subgroup == "C3":
        return whole_ring(build_c3_cohomology(window))
    if subgroup == "C":
        return whole_ring(build_centralizer_cohomology(window))
    if subgroup == "G24":
        return invariants(build_c3_cohomology(window), SUBGROUP_GENERATORS["Q8"], name="H(G24)")
    if subgroup == "G12":
        return invariants(build_c3_cohomology(window), SUBGROUP_GENERATORS["C4"], name="H(G12)")
    if subgroup == "N":
        return invariants(build_centralizer_cohomology(window), SUBGROUP_GENERATORS["C4"], name="H(N)")
    if subgroup == "N1":
        return invariants(build_centralizer_cohomology(window, zeta=False),
                          SUBGROUP_GENERATORS["C4"], name="H(N1)")
    if subgroup in ("G2^0", "G2", "G2^1"):
        zeta = subgroup != "G2^1"
        ring = build_product_ring(window, zeta=zeta)
        image = rho_image(ring, zeta=zeta)
        group = "D8" if subgroup == "G2^0" else "SD16"
        return invariants(ring, SUBGROUP_GENERATORS[group], within=image, name=f"H({subgroup})")
    raise KeyError(f"unknown subgroup {subgroup!r}; choose from {', '.join(SUBGROUPS)}")


def check_against_expected(subgroup: str, window: Window) -> dict:
    """Compare computed invariants with the stated free-module answer."""
    computed = subgroup_cohomology(subgroup, window)
    ring = computed.ring
    exp = expected_module(subgroup, _abstract_window(ring))
    expected = realized_span(ring, exp, f9_span=(exp.field == "F9"))
    report = compare(computed, expected)
    report["subgroup"] = subgroup
    report["total_dim"] = sum(computed.dims().values())
    return report


def _abstract_window(ring: CohomologyRing) -> Window:
    w = ring.window
    return Window(None, None, w.s_min, w.s_max, w.t_min, w.t_max)


def eigensplit_check(window: Window) -> dict:
    """Residual omega on H*(G2^0): plus part is H*(G2), minus part is v2^{1/2} times it."""
    d8 = subgroup_cohomology("G2^0", window)
    ring = d8.ring
    plus, minus = eigenspace_split(d8, OMEGA_STAR)
    g2 = invariants(ring, SUBGROUP_GENERATORS["SD16"], within=rho_image(ring))
    same = compare(plus, g2)
    if not same["ok"]:
        return {"ok": False, "reason": "plus part differs from SD16 invariants", **same}
    v2h = PAIR_REALIZATION["v2h"]
    mult = (Element.parse(v2h[0]), Element.parse(v2h[1]))
    for key in plus.keys():
        s, t = key
        target = (s, t + 8)
        if not ring.window.contains(*target):
            continue
        vecs = []
        for v in plus.rows[key]:
            parts = ring.parts(key, v)
            vecs.append(ring.vector(target, (parts[0] * mult[0], parts[1] * mult[1])))
        if not linalg.same_span(vecs, minus.rows.get(target, np.zeros((0, ring.ambient_dim(target)))),
                                ring.ambient_dim(target)):
            return {"ok": False, "reason": "minus != v2h * plus", "bucket": target}
    for key in d8.keys():
        if plus.dim(key) + minus.dim(key) != d8.dim(key):
            return {"ok": False, "reason": "dimensions do not add up", "bucket": key}
    return {"ok": True, "buckets": len(d8.keys())}
