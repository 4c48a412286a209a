"""Built-in networks: the two-node doublets and the larger comparison networks.

Doublet ``"A-B"`` means node 0 runs rule A and node 1 runs rule B, each
rule reading (own bit, other node's bit). XOR has no threshold form, so
XOR doublets exist only as transition maps; everything else also has a
DSL description, and the two must agree.
"""

from __future__ import annotations

from typing import Callable

from .net import (
    NetworkSpec,
    TransitionMap,
    build_transition_map,
    map_from_function,
    parse_network_spec,
)

NODE_RULES: dict[str, Callable[[int, int], int]] = {
    "ZERO": lambda own, other: 0,
    "KEEP": lambda own, other: own,
    "GET": lambda own, other: other,
    "AND": lambda own, other: own & other,
    "OR": lambda own, other: own | other,
    "XOR": lambda own, other: own ^ other,
}

# (threshold, reads own bit, reads other bit)
THRESHOLD_RULES = {
    "ZERO": ("inf", False, False),
    "KEEP": ("1", True, False),
    "GET": ("1", False, True),
    "AND": ("2", True, True),
    "OR": ("1", True, True),
}


def _full(n: int) -> str:
    return "".join(f"edge {i} {k}\n" for i in range(n) for k in range(n))


def _thresholds(values) -> str:
    return "".join(f"threshold {i} {v}\n" for i, v in enumerate(values))


NETWORK_DSL: dict[str, str] = {
    "SHIFT": "# each node copies its predecessor on a directed ring\nnodes 4\n"
    + _thresholds("1111")
    + "".join(f"edge {i} {(i + 1) % 4}\n" for i in range(4)),
    "4422": "# every node reads every node, itself included\nnodes 4\n" + _thresholds("4422") + _full(4),
    "4322": "nodes 4\n" + _thresholds("4322") + _full(4),
    "4321": "nodes 4\n" + _thresholds("4321") + _full(4),
    "ANDTRIPLET": "# each node is the AND of the other two\nnodes 3\n"
    + _thresholds("222")
    + "".join(f"edge {i} {k}\n" for k in range(3) for i in range(3) if i != k),
    "ISO-ANDTRIPLET": "# each node is the AND of itself and its ring predecessor\nnodes 3\n"
    + _thresholds("222")
    + "".join(f"edge {k} {k}\nedge {(k - 1) % 3} {k}\n" for k in range(3)),
    "AND-ZERO+KEEP": "# AND-ZERO on nodes 0-1 plus a disconnected KEEP node\nnodes 3\n"
    + _thresholds(["2", "inf", "1"])
    + "edge 0 0\nedge 1 0\nedge 2 2\n",
    "2X AND-ZERO": "# two disjoint AND-ZERO copies\nnodes 4\n"
    + _thresholds(["2", "inf", "2", "inf"])
    + "edge 0 0\nedge 1 0\nedge 2 2\nedge 3 2\n",
}


def doublet_types(name: str) -> tuple[str, str]:
    parts = name.upper().split("-")
    if len(parts) != 2 or any(p not in NODE_RULES for p in parts):
        raise KeyError(f"not a doublet name: {name!r}")
    return parts[0], parts[1]


def doublet_map(name: str) -> TransitionMap:
    a, b = doublet_types(name)
    ra, rb = NODE_RULES[a], NODE_RULES[b]
    return map_from_function(2, lambda x: (ra(x[0], x[1]), rb(x[1], x[0])))


def doublet_dsl(name: str) -> str | None:
    """DSL text for a threshold-expressible doublet, None for XOR doublets."""
    types = doublet_types(name)
    if any(t not in THRESHOLD_RULES for t in types):
        return None
    lines = ["nodes 2"]
    edges = []
    for node, t in enumerate(types):
        threshold, own, other = THRESHOLD_RULES[t]
        lines.append(f"threshold {node} {threshold}")
        if own:
            edges.append(f"edge {node} {node}")
        if other:
            edges.append(f"edge {1 - node} {node}")
    return "\n".join(lines + edges) + "\n"


def network_spec(name: str) -> NetworkSpec | None:
    key = name.upper()
    if key in NETWORK_DSL:
        return parse_network_spec(NETWORK_DSL[key])
    text = doublet_dsl(key)
    return parse_network_spec(text) if text else None


def network(name: str) -> TransitionMap:
    """Transition map of a built-in network, looked up case-insensitively."""
    key = name.upper()
    if key in NETWORK_DSL:
        return build_transition_map(parse_network_spec(NETWORK_DSL[key]))
    return doublet_map(key)


def known_networks() -> list[str]:
    doublets = [f"{a}-{b}" for a in NODE_RULES for b in NODE_RULES]
    return doublets + list(NETWORK_DSL)


def classify_threshold_node(spec: NetworkSpec, node: int) -> str:
    """Name the rule a node of a 2-node threshold network computes."""
    threshold = spec.thresholds[node]
    inputs = spec.inputs(node)
    own, other = node in inputs, (1 - node) in inputs
    if threshold > len(inputs):
        return "ZERO"
    if own and other:
        return "AND" if threshold == 2 else "OR"
    return "KEEP" if own else "GET"


def threshold_doublets() -> list[tuple[str, NetworkSpec]]:
    """Every 2-node network the DSL can express, one per distinct mechanism."""
    seen: dict[TransitionMap, tuple[str, NetworkSpec]] = {}
    edge_sets = [(), ((0, 0),), ((1, 0),), ((0, 0), (1, 0))]
    for t0 in (1, 2, float("inf")):
        for t1 in (1, 2, float("inf")):
            for e0 in edge_sets:
                for e1 in edge_sets:
                    edges = e0 + tuple((1 - s, 1) for s, _ in e1)
                    spec = NetworkSpec(2, (t0, t1), edges)
                    m = build_transition_map(spec)
                    if m not in seen:
                        name = f"{classify_threshold_node(spec, 0)}-{classify_threshold_node(spec, 1)}"
                        canonical = network_spec(name)
                        if build_transition_map(canonical) != m:
                            raise AssertionError(f"{name} misclassified")
                        seen[m] = (name, canonical)
    order = list(THRESHOLD_RULES)
    return sorted(seen.values(), key=lambda item: tuple(order.index(t) for t in item[0].split("-")))
