import json

import pytest

from irrlab.dist import Dist, StateSpace, UnreachableState
from irrlab.net import TransitionMap
from irrlab.report import build_report, fmt_number, fmt_probability, md_table, render_table, report_from_json
from irrlab.zoo import network


@pytest.fixture(scope="module")
def or_get():
    return build_report("OR-GET", network("OR-GET"))


def test_md_contains_reachable_row(or_get):
    assert "| 10 | 1/4 | 2.000 | 2.585 |" in render_table(or_get, "md")


def test_unreachable_row_is_dashes(or_get):
    md = render_table(or_get, "md")
    assert "| 01 | - | - | - | - | - | - |" in md
    csv_text = render_table(or_get, "csv")
    assert "01,-,-,-,-,-,-" in csv_text.splitlines()
    data = json.loads(render_table(or_get, "json"))
    row = next(r for r in data["rows"] if r["state"] == "01")
    assert all(row[k] is None for k in ("pr", "ei", "phi", "psi_min", "psi_max", "mip"))


def test_json_round_trip(or_get):
    assert report_from_json(render_table(or_get, "json")) == or_get


def test_json_keeps_full_precision(or_get):
    row = next(r for r in json.loads(render_table(or_get, "json"))["rows"] if r["state"] == "10")
    assert row["phi"] == or_get.rows[2].phi


@pytest.mark.parametrize("fmt", ["md", "csv", "json"])
def test_rendering_is_deterministic(fmt):
    a = render_table(build_report("x", network("4322")), fmt)
    b = render_table(build_report("x", network("4322")), fmt)
    assert a == b


def test_summary_mi_is_weighted_ei(or_get):
    rows = [r for r in or_get.rows if r.reachable]
    assert sum(r.pr * r.ei for r in rows) == pytest.approx(or_get.summary.mutual_information, abs=1e-9)


def test_summary_fields(or_get):
    s = or_get.summary
    assert s.h_x == pytest.approx(2.0)
    assert s.bracket_phi == pytest.approx(1.188721875540867)
    assert s.min_phi == pytest.approx(0.5849625007211562)
    assert s.max_phi == pytest.approx(2.584962500721156)
    assert s.bracket_mip == "{0}|{1}"
    assert not or_get.independence_violated


def test_state_restriction_and_unreachable():
    m = network("AND-ZERO")
    r = build_report("and_zero", m, state=m.space.parse("10"))
    assert [row.state for row in r.rows] == ["10"]
    assert r.rows[0].phi == pytest.approx(1.0)
    with pytest.raises(UnreachableState):
        build_report("and_zero", m, state=m.space.parse("01"))


def test_correlated_input_is_flagged():
    m = network("OR-XOR")
    px = Dist(m.space, [0.5, 0.0, 0.0, 0.5])
    r = build_report("or_xor", m, px=px, x_dist="empirical:corr")
    assert r.independence_violated
    assert "independence" in render_table(r, "md")


def test_single_node_rejected():
    with pytest.raises(ValueError):
        build_report("one", TransitionMap(StateSpace.binary(1), (0, 1)))


def test_bad_format(or_get):
    with pytest.raises(ValueError):
        render_table(or_get, "xml")


@pytest.mark.parametrize("value, text", [
    (0.0005, "0.000"), (0.0015, "0.002"), (2.5849625, "2.585"), (-1e-15, "0.000"), (None, "-"), (1.0, "1.000"),
])
def test_fmt_number_rounds_half_even(value, text):
    assert fmt_number(value) == text


def test_fmt_probability():
    assert fmt_probability(0.25) == "1/4"
    assert fmt_probability(3 / 1024) == "3/1024"
    assert fmt_probability(1 / 3) == "1/3"
    assert fmt_probability(0.123456789) == "0.123"
    assert fmt_probability(None) == "-"


def test_md_table_escapes_pipes():
    assert md_table(("a",), [("{0}|{1}",)]).splitlines()[-1] == "| {0}\\|{1} |"
