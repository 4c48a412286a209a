import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import CORPUS, LARGER, bits, oracle_map
from irrlab.dist import Dist, StateSpace, entropy, mutual_information
from irrlab.net import (
    INF,
    NetworkSpec,
    ParseError,
    TransitionMap,
    build_transition_map,
    compose_t_steps,
    joint_from_input,
    kernel_joint,
    map_from_function,
    max_nodes,
    parse_empirical_distribution,
    parse_network_spec,
    parse_transition_table,
    uniform_joint,
)
from irrlab.zoo import network, network_spec

AND_ZERO = "nodes 2\nthreshold 0 2\nthreshold 1 inf\nedge 0 0\nedge 1 0\n"
OR_GET_TABLE = "00 -> 00\n01 -> 10\n10 -> 11\n11 -> 11\n"


def table_of(m: TransitionMap) -> list[str]:
    return [m.space.format(y) for y in m.next]


def test_parse_and_zero():
    spec = parse_network_spec(AND_ZERO)
    assert spec.thresholds == (2, INF)
    assert table_of(build_transition_map(spec)) == ["00", "00", "00", "10"]


def test_parse_keep_node():
    m = build_transition_map(parse_network_spec("nodes 1\nthreshold 0 1\nedge 0 0\n"))
    assert m.next == (0, 1)


def test_comments_and_blank_lines():
    text = "# header\n\nnodes 2  # two nodes\nthreshold 0 2\nthreshold 1 inf\n\nedge 0 0\nedge 1 0\n"
    assert parse_network_spec(text) == parse_network_spec(AND_ZERO)


@pytest.mark.parametrize("text, fragment", [
    ("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 0 5\n", "unknown node"),
    ("nodes 2\nthreshold 0 1\nthreshold 0 1\nthreshold 1 1\n", "duplicate"),
    ("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 0 1\nedge 0 1\n", "duplicate"),
    ("nodes 2\nthreshold 0 1\n", "threshold"),
    ("nodes 2\nthreshold 0 0\nthreshold 1 1\n", "threshold"),
    ("nodes 2\nthreshold 0 1\nthreshold 1 1\nwire 0 1\n", "line 4"),
    ("threshold 0 1\n", "line 1"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_network_spec(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_network_spec("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 0 5\n")
    assert info.value.lineno == 4


def test_parse_transition_table():
    m = parse_transition_table(OR_GET_TABLE)
    assert m(m.space.parse("01")) == m.space.parse("10")
    assert table_of(m) == ["00", "10", "11", "11"]


@pytest.mark.parametrize("text", [
    "00 -> 00\n01 -> 10\n10 -> 11\n",
    "0a -> 00\n01 -> 10\n10 -> 11\n11 -> 11\n",
    "00 -> 00\n00 -> 10\n10 -> 11\n11 -> 11\n",
    "00 -> 00\n01 -> 1\n10 -> 11\n11 -> 11\n",
    "00 -> 00\n011 -> 110\n10 -> 11\n11 -> 11\n",
    "",
])
def test_bad_tables(text):
    with pytest.raises(ParseError):
        parse_transition_table(text)


def test_all_inf_thresholds_give_constant_zero():
    spec = NetworkSpec(3, (INF, INF, INF), ((0, 1), (1, 2), (2, 0), (0, 0)))
    assert set(build_transition_map(spec).next) == {0}


def test_edgeless_node_is_zero():
    spec = parse_network_spec("nodes 2\nthreshold 0 1\nthreshold 1 1\nedge 1 1\n")
    assert table_of(build_transition_map(spec)) == ["00", "01", "00", "01"]


def test_shift_rotates_bits():
    m = network("SHIFT")
    for x in range(16):
        s = m.space.format(x)
        assert m.space.format(m(x)) == s[-1] + s[:-1]


@pytest.mark.parametrize("name", CORPUS)
def test_library_maps_match_oracle_wiring(name):
    m = network(name)
    expected = oracle_map(name)
    assert table_of(m) == [bits(expected[x]) for x in oracle.states(m.node_count)]


@pytest.mark.parametrize("name", LARGER + ["AND-ZERO", "OR-GET", "GET-GET"])
def test_printed_table_round_trips(name):
    m = network(name)
    assert parse_transition_table(m.format_table()) == m


def test_spec_text_round_trips():
    spec = network_spec("4322")
    assert parse_network_spec(spec.to_text()) == spec


def test_compose_examples():
    and_get = network("AND-GET")
    assert compose_t_steps(and_get, 1) == and_get
    assert table_of(compose_t_steps(and_get, 2)) == ["00", "00", "00", "11"]
    with pytest.raises(ValueError):
        compose_t_steps(and_get, 0)


def test_compose_and_get_t4_is_and_and():
    # 11 is a fixed point of AND-GET, so no power of it reaches ZERO-ZERO
    assert compose_t_steps(network("AND-GET"), 4) == network("AND-AND")


maps2 = st.lists(st.integers(0, 7), min_size=8, max_size=8).map(
    lambda nxt: TransitionMap(StateSpace.binary(3), tuple(nxt))
)


@settings(max_examples=100, deadline=None)
@given(maps2, st.integers(1, 5), st.integers(1, 5))
def test_compose_powers(m, a, b):
    ma, mb = compose_t_steps(m, a), compose_t_steps(m, b)
    # a+b steps: b steps applied after a steps
    assert compose_t_steps(m, a + b).next == tuple(mb(ma(x)) for x in range(8))
    # iterating the a-step map b times is a*b steps
    assert compose_t_steps(ma, b) == compose_t_steps(m, a * b)


@pytest.mark.parametrize("name", CORPUS)
def test_deterministic_mi_equals_output_entropy(name):
    j = uniform_joint(network(name))
    assert mutual_information(j) == pytest.approx(entropy(j.output_marginal()), abs=1e-9)


def test_uniform_joint_examples():
    j = uniform_joint(network("KEEP-KEEP"))
    assert np.allclose(j.mass, np.eye(4) / 4)
    j = uniform_joint(network("OR-GET"))
    assert np.allclose(j.py, [0.25, 0, 0.25, 0.5])
    assert j.ps.sum() == pytest.approx(1.0)


def test_map_from_function():
    m = map_from_function(2, lambda x: (x[1], x[0]))
    assert table_of(m) == ["00", "10", "01", "11"]


def test_kernel_joint_matches_deterministic():
    m = network("OR-XOR")
    kernel = np.zeros((4, 4))
    kernel[np.arange(4), m.next] = 1
    px = Dist.uniform(m.space)
    a, b = kernel_joint(kernel, px), joint_from_input(m, px)
    assert np.allclose(a.mass, b.mass)
    with pytest.raises(ValueError):
        kernel_joint(kernel * 2, px)


def test_empirical_distribution_parsing():
    space = StateSpace.binary(2)
    d = parse_empirical_distribution("# counts\n00 1/4\n01 0.25\n10 1/4\n11 1/4\n", space)
    assert d.allclose(Dist.uniform(space))
    sparse = parse_empirical_distribution("00 0.5\n11 0.5\n", space)
    assert sparse.mass.tolist() == [0.5, 0, 0, 0.5]
    for bad in ("00 0.5\n", "00 0.5\n00 0.5\n", "0 1\n", "00 x\n", "00 -1\n11 2\n"):
        with pytest.raises(ParseError):
            parse_empirical_distribution(bad, space)


def test_max_nodes_env(monkeypatch):
    monkeypatch.delenv("IRRLAB_MAX_NODES", raising=False)
    assert max_nodes() == 20
    monkeypatch.setenv("IRRLAB_MAX_NODES", "3")
    with pytest.raises(ValueError, match="cap"):
        build_transition_map(NetworkSpec(4, (1, 1, 1, 1), ()))
    monkeypatch.setenv("IRRLAB_MAX_NODES", "zero")
    with pytest.raises(ValueError):
        max_nodes()
