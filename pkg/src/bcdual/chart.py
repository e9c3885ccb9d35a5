"""Deterministic text and SVG charts of homotopy tables.

One dot per Z/3. Beta multiplications are horizontal segments, so a class
and its beta-multiple share a row; alpha multiplications (including the
hidden ones from Toda brackets) are diagonal segments one row up.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .graded import Window, parse_monomial
from .specseq import HomotopyTable, homotopy_table

STEM_PITCH = 12
ROW_PITCH = 14
MARGIN = 24
TEXT_CAP = 9


@dataclass
class ChartSpec:
    table: HomotopyTable
    lo: int
    hi: int
    bold: tuple[int, int] | None = None
    labels: tuple[str, ...] = ()
    title: str = ""

    def __post_init__(self):
        a, b = self.table.stem_range
        if self.lo > self.hi:
            raise ValueError(f"empty stem range {self.lo}..{self.hi}")
        if self.table.classes and (self.lo < a or self.hi > b):
            raise ValueError(f"range {self.lo}..{self.hi} exceeds the computed stems {a}..{b}")


@dataclass
class Layout:
    dots: dict = field(default_factory=dict)  # (class index, copy) -> (stem, row)
    edges: list = field(default_factory=list)  # (kind, dot, dot)
    rows: int = 0


def _dot_list(table: HomotopyTable, lo: int, hi: int):
    """(class index, copy) pairs: an F9 class occupies two dots."""
    out = []
    for k, c in enumerate(table.classes):
        if lo <= c.stem <= hi:
            out.extend((k, j) for j in range(c.f3dim))
    return out


def layout(spec: ChartSpec) -> Layout:
    """Assign rows: every beta-chain lies on one row, placed above its alpha-source if possible."""
    t = spec.table
    beta_next = dict(t.beta_edges)
    beta_src = {b: a for a, b in t.beta_edges}
    alpha_src = {b: a for a, b in t.alpha_edges + t.toda_edges}
    used: set[tuple[int, int]] = set()
    lay = Layout()
    dots = set(_dot_list(t, spec.lo, spec.hi))
    heads = sorted((kj for kj in dots if not (kj[0] in beta_src and (beta_src[kj[0]], kj[1]) in dots)),
                   key=lambda kj: (t.classes[kj[0]].stem, t.classes[kj[0]].filtration, kj[0], kj[1]))
    for k, j in heads:
        chain = [k]
        while chain[-1] in beta_next and (beta_next[chain[-1]], j) in dots:
            chain.append(beta_next[chain[-1]])
        row = 0
        if k in alpha_src and (alpha_src[k], j) in lay.dots:
            row = lay.dots[(alpha_src[k], j)][1] + 1
        while any((t.classes[c].stem, row) in used for c in chain):
            row += 1
        for c in chain:
            used.add((t.classes[c].stem, row))
            lay.dots[(c, j)] = (t.classes[c].stem, row)
        lay.rows = max(lay.rows, row + 1)
    for kind, edges in (("beta", t.beta_edges), ("alpha", t.alpha_edges), ("toda", t.toda_edges)):
        for a, b in edges:
            for j in range(t.classes[a].f3dim):
                if (a, j) in lay.dots and (b, j) in lay.dots:
                    lay.edges.append((kind, (a, j), (b, j)))
    return lay


def _label_targets(spec: ChartSpec) -> dict[int, str]:
    out = {}
    for text in spec.labels:
        m = parse_monomial(text)
        for k, c in enumerate(spec.table.classes):
            if c.monomial is not None and c.monomial.exps == m.exps and spec.lo <= c.stem <= spec.hi:
                out[k] = text
    return out


def render_text(spec: ChartSpec) -> str:
    """Columns of width 3, one per stem; at most nine dots, then the dimension."""
    dims = {n: 0 for n in range(spec.lo, spec.hi + 1)}
    for k, j in _dot_list(spec.table, spec.lo, spec.hi):
        dims[spec.table.classes[k].stem] += 1
    height = min(TEXT_CAP, max(dims.values(), default=0))
    lines = [spec.title or spec.table.name]
    over = "".join(f"{d:>3}" if d > TEXT_CAP else "   " for d in dims.values())
    if over.strip():
        lines.append(over.rstrip())
    for row in range(height, 0, -1):
        lines.append("".join("  *" if d >= row else "   " for d in dims.values()).rstrip())
    bold = spec.bold or (spec.lo - 1, spec.lo - 2)
    lines.append("".join("==+" if bold[0] <= n <= bold[1] else "--+" for n in dims))
    lines.append("".join(f"{n:>3}" if n % 10 == 0 else "   " for n in dims).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(spec: ChartSpec) -> str:
    lay = layout(spec)
    width = (spec.hi - spec.lo) * STEM_PITCH + 2 * MARGIN
    rows = max(lay.rows, 1)
    height = rows * ROW_PITCH + 2 * MARGIN + ROW_PITCH
    base = height - MARGIN

    def xy(stem, row):
        return MARGIN + (stem - spec.lo) * STEM_PITCH, base - ROW_PITCH - row * ROW_PITCH

    def strong(stem):
        return spec.bold is not None and spec.bold[0] <= stem <= spec.bold[1]

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
           f'width="{width}" height="{height}" font-family="monospace" font-size="9">']
    title = spec.title or spec.table.name
    out.append(f'<title>{escape(title)}</title>')
    out.append(f'<line x1="{MARGIN}" y1="{base}" x2="{width - MARGIN}" y2="{base}" stroke="black"/>')
    if spec.bold is not None:
        x0 = xy(max(spec.bold[0], spec.lo), 0)[0]
        x1 = xy(min(spec.bold[1], spec.hi), 0)[0]
        out.append(f'<line x1="{x0}" y1="{base}" x2="{x1}" y2="{base}" stroke="black" stroke-width="3"/>')
    for n in range(spec.lo, spec.hi + 1):
        if n % 10 == 0:
            x = xy(n, 0)[0]
            out.append(f'<text x="{x}" y="{base + 12}" text-anchor="middle">{n}</text>')
    for kind, a, b in lay.edges:
        (sa, ra), (sb, rb) = lay.dots[a], lay.dots[b]
        xa, ya = xy(sa, ra)
        xb, yb = xy(sb, rb)
        bold = strong(sa) and strong(sb)
        dash = ' stroke-dasharray="2,2"' if kind == "toda" else ""
        out.append(f'<line class="{kind}" x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" '
                   f'stroke="{"black" if bold else "gray"}" stroke-width="{1.5 if bold else 0.75}"{dash}/>')
    labels = _label_targets(spec)
    for (k, j), (stem, row) in sorted(lay.dots.items(), key=lambda kv: (kv[1], kv[0])):
        x, y = xy(stem, row)
        c = spec.table.classes[k]
        fill = "black" if strong(stem) else "gray"
        out.append(f'<circle class="dot" cx="{x}" cy="{y}" r="{2.5 if strong(stem) else 2}" fill="{fill}">'
                   f'<title>{escape(c.label)} (stem {c.stem}, s={c.filtration})</title></circle>')
        if k in labels and j == 0:
            out.append(f'<text x="{x + 3}" y="{y - 4}">{escape(labels[k])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(spec: ChartSpec, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(spec)
    if fmt == "svg":
        return render_svg(spec)
    raise ValueError(f"unknown chart format {fmt!r}; use text or svg")


# The two appendix charts and a few companions.
TARGETS = {
    "g24-v1": ("G24", (0, 143), (0, 71), ("1",)),
    "g12-v1": ("G12", (0, 143), (0, 71), ("1",)),
    "g21-v1": ("G2^1", (-10, 290), (0, 143), ("1", "w*alpha", "a35*w*beta", "a35*alpha")),
    "g20-v1": ("G2^0", (-10, 290), (0, 71), ("1", "w*alpha", "a35*w*beta", "a35*alpha")),
    "v1": ("G2", (-10, 290), (0, 143), ("1", "w*alpha", "a35*w*beta", "a35*alpha")),
}


def chart_spec(target: str, lo: int | None = None, hi: int | None = None) -> ChartSpec:
    if target not in TARGETS:
        raise KeyError(f"unknown chart {target!r}; choose from {', '.join(TARGETS)}")
    group, (dlo, dhi), bold, labels = TARGETS[target]
    lo = dlo if lo is None else lo
    hi = dhi if hi is None else hi
    table = homotopy_table(group, Window(lo, hi, 0, 40)).table
    return ChartSpec(table, lo, hi, bold, labels, f"pi_* {table.name}, stems {lo}..{hi}")
