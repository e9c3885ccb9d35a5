import re
from pathlib import Path

import pytest

from bcdual.chart import ChartSpec, chart_spec, layout, render
from bcdual.specseq import table_from_dims
from bcdual.verify import G24_PERIOD_STEMS

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def g24():
    return chart_spec("g24-v1")


def test_text_golden(g24):
    assert render(g24, "text") == (GOLDEN / "g24_v1.txt").read_text()


def test_svg_golden(g24):
    assert render(g24, "svg") == (GOLDEN / "g24_v1.svg").read_text()


def test_text_dots_are_the_known_stems(g24):
    lines = render(g24, "text").splitlines()
    row = lines[1]
    stems = [i // 3 for i, ch in enumerate(row) if ch == "*"]
    expected = sorted(n for n in range(144) if n % 72 in G24_PERIOD_STEMS)
    assert stems == expected
    assert lines[2].count("==+") == 72 and lines[2].count("--+") == 72


def test_svg_dot_count_and_edges(g24):
    svg = render(g24, "svg")
    assert svg.count('<circle class="dot"') == sum(g24.table.dims().values()) == 54
    lay = layout(g24)
    for kind, a, b in lay.edges:
        (sa, ra), (sb, rb) = lay.dots[a], lay.dots[b]
        assert sb - sa == (10 if kind == "beta" else 3)
        if kind == "beta":
            assert ra == rb
    assert len(re.findall(r'class="toda"', svg)) == sum(k == "toda" for k, *_ in lay.edges)


def test_deterministic():
    a = chart_spec("g20-v1", 0, 80)
    b = chart_spec("g20-v1", 0, 80)
    assert render(a, "svg") == render(b, "svg")


def test_labels_present():
    svg = render(chart_spec("v1", -10, 100), "svg")
    assert ">w*alpha</text>" in svg and ">1</text>" in svg


def test_empty_table_axis_only():
    spec = ChartSpec(table_from_dims("empty", {}, (0, 20)), 0, 20)
    text = render(spec, "text")
    assert "*" not in text and text.splitlines()[1] == "--+" * 21
    assert "<circle" not in render(spec, "svg")


def test_errors(g24):
    with pytest.raises(ValueError):
        ChartSpec(g24.table, -5, 10)
    with pytest.raises(ValueError):
        render(g24, "png")
    with pytest.raises(KeyError):
        chart_spec("nope")
