"""Threshold networks, transition tables and the joints built from them.

A node fires (updates to 1) iff at least ``threshold`` of its incoming
edges come from nodes that are currently 1. A threshold of ``inf`` means
the node always updates to 0. Bitstrings are read left to right, so the
leftmost character is node 0.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .dist import Dist, JointDist, StateSpace

INF = math.inf
DEFAULT_MAX_NODES = 20


def max_nodes() -> int:
    """Node cap for dense state vectors; ``IRRLAB_MAX_NODES`` overrides it."""
    raw = os.environ.get("IRRLAB_MAX_NODES")
    if raw is None:
        return DEFAULT_MAX_NODES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"IRRLAB_MAX_NODES must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("IRRLAB_MAX_NODES must be positive")
    return value


def _check_node_count(n: int) -> None:
    cap = max_nodes()
    if n > cap:
        raise ValueError(f"{n} nodes exceeds the cap of {cap} (set IRRLAB_MAX_NODES)")


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class NetworkSpec:
    node_count: int
    thresholds: tuple[float, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.node_count
        if n < 1:
            raise ValueError("a network needs at least one node")
        if len(self.thresholds) != n:
            raise ValueError(f"expected {n} thresholds, got {len(self.thresholds)}")
        for t in self.thresholds:
            if t != INF and (t != int(t) or t < 1):
                raise ValueError(f"threshold must be a positive integer or inf, got {t}")
        seen = set()
        for src, dst in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"edge {src} -> {dst} references an unknown node")
            if (src, dst) in seen:
                raise ValueError(f"duplicate edge {src} -> {dst}")
            seen.add((src, dst))

    def inputs(self, node: int) -> list[int]:
        return [src for src, dst in self.edges if dst == node]

    def to_text(self) -> str:
        lines = [f"nodes {self.node_count}"]
        for i, t in enumerate(self.thresholds):
            lines.append(f"threshold {i} {'inf' if t == INF else int(t)}")
        lines += [f"edge {s} {d}" for s, d in self.edges]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TransitionMap:
    """Deterministic update rule over all 2^n binary states."""

    space: StateSpace
    next: tuple[int, ...]

    def __post_init__(self):
        nxt = tuple(int(y) for y in self.next)
        total = self.space.total_states
        if len(nxt) != total:
            raise ValueError(f"transition map needs {total} entries, got {len(nxt)}")
        if any(not 0 <= y < total for y in nxt):
            raise ValueError("transition map image outside the state space")
        object.__setattr__(self, "next", nxt)

    @property
    def node_count(self) -> int:
        return self.space.node_count

    def __call__(self, x: int) -> int:
        return self.next[x]

    def format_table(self) -> str:
        fmt = self.space.format
        return "".join(f"{fmt(x)} -> {fmt(y)}\n" for x, y in enumerate(self.next))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_network_spec(text: str) -> NetworkSpec:
    n = None
    thresholds: dict[int, float] = {}
    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()

    def node_index(token: str, lineno: int) -> int:
        try:
            idx = int(token)
        except ValueError:
            raise ParseError(f"expected a node index, got {token!r}", lineno) from None
        if not 0 <= idx < n:
            raise ParseError(f"unknown node {idx} (network has {n} nodes)", lineno)
        return idx

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        words = line.split()
        directive, args = words[0].lower(), words[1:]
        if directive == "nodes":
            if n is not None:
                raise ParseError("duplicate 'nodes' declaration", lineno)
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise ParseError("'nodes' takes one positive integer", lineno)
            n = int(args[0])
            try:
                _check_node_count(n)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if n is None:
            raise ParseError(f"'{directive}' before 'nodes'", lineno)
        if directive == "threshold":
            if len(args) != 2:
                raise ParseError("'threshold' takes a node index and a value", lineno)
            idx = node_index(args[0], lineno)
            if idx in thresholds:
                raise ParseError(f"duplicate threshold for node {idx}", lineno)
            value = args[1].lower()
            if value in ("inf", "infinity", "∞"):
                thresholds[idx] = INF
            elif value.isdigit() and int(value) >= 1:
                thresholds[idx] = int(value)
            else:
                raise ParseError(f"threshold must be a positive integer or inf, got {args[1]!r}", lineno)
        elif directive == "edge":
            if len(args) != 2:
                raise ParseError("'edge' takes a source and a destination index", lineno)
            edge = (node_index(args[0], lineno), node_index(args[1], lineno))
            if edge in edge_set:
                raise ParseError(f"duplicate edge {edge[0]} -> {edge[1]}", lineno)
            edge_set.add(edge)
            edges.append(edge)
        else:
            raise ParseError(f"unknown directive {words[0]!r}", lineno)

    if n is None:
        raise ParseError("missing 'nodes' declaration")
    missing = [i for i in range(n) if i not in thresholds]
    if missing:
        raise ParseError(f"no threshold declared for node(s) {missing}")
    return NetworkSpec(n, tuple(thresholds[i] for i in range(n)), tuple(edges))


_ROW = re.compile(r"^(\S+)\s*->\s*(\S+)$")


def parse_transition_table(text: str) -> TransitionMap:
    rows: dict[str, str] = {}
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        match = _ROW.match(line)
        if not match:
            raise ParseError(f"expected 'bits -> bits', got {line!r}", lineno)
        src, dst = match.groups()
        for bits in (src, dst):
            if set(bits) - {"0", "1"}:
                raise ParseError(f"non-binary state {bits!r}", lineno)
        if width is None:
            width = len(src)
        if len(src) != width or len(dst) != width:
            raise ParseError(f"ragged bitstrings, expected width {width}", lineno)
        if src in rows:
            raise ParseError(f"duplicate row for input {src}", lineno)
        rows[src] = dst
    if width is None:
        raise ParseError("empty transition table")
    try:
        _check_node_count(width)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    space = StateSpace.binary(width)
    if len(rows) != space.total_states:
        missing = [space.format(x) for x in range(space.total_states) if space.format(x) not in rows]
        raise ParseError(
            f"incomplete table: {len(rows)} of {space.total_states} rows, missing {', '.join(missing[:8])}"
        )
    return TransitionMap(space, tuple(int(rows[space.format(x)], 2) for x in range(space.total_states)))


def build_transition_map(spec: NetworkSpec) -> TransitionMap:
    n = spec.node_count
    _check_node_count(n)
    states = np.arange(1 << n, dtype=np.int64)
    # column i holds node i's bit; node 0 is the most significant
    bits = (states[:, None] >> (n - 1 - np.arange(n))) & 1
    nxt = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        t = spec.thresholds[j]
        inputs = spec.inputs(j)
        fires = np.zeros(1 << n, dtype=bool)
        if t != INF and inputs:
            fires = bits[:, inputs].sum(axis=1) >= t
        nxt |= fires.astype(np.int64) << (n - 1 - j)
    return TransitionMap(StateSpace.binary(n), tuple(nxt.tolist()))


def map_from_function(n: int, rule: Callable[[tuple[int, ...]], Sequence[int]]) -> TransitionMap:
    """Tabulate ``rule`` (bits in, bits out) over all 2^n inputs."""
    space = StateSpace.binary(n)
    return TransitionMap(space, tuple(space.pack(rule(space.digits(x))) for x in range(space.total_states)))


def compose_t_steps(m: TransitionMap, t: int) -> TransitionMap:
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    nxt = np.asarray(m.next)
    out = nxt.copy()
    for _ in range(t - 1):
        out = nxt[out]
    return TransitionMap(m.space, tuple(out.tolist()))


def uniform_joint(m: TransitionMap) -> JointDist:
    return joint_from_input(m, Dist.uniform(m.space))


def joint_from_input(m: TransitionMap, px: Dist) -> JointDist:
    """P(x, y) = P(x) [y = next(x)] for an arbitrary input distribution."""
    if px.space != m.space:
        raise ValueError("input distribution and mechanism live on different spaces")
    xs = np.arange(m.space.total_states)
    return JointDist(m.space, m.space, xs, np.asarray(m.next), px.mass)


def kernel_joint(kernel: np.ndarray, px: Dist) -> JointDist:
    """Joint for a stochastic mechanism given as a row-stochastic matrix P(y|x)."""
    kernel = np.asarray(kernel, dtype=float)
    total = px.space.total_states
    if kernel.shape != (total, total):
        raise ValueError(f"kernel must be {total}x{total}, got {kernel.shape}")
    if np.any(kernel < 0) or not np.allclose(kernel.sum(axis=1), 1.0, atol=1e-9):
        raise ValueError("kernel rows must be probability vectors")
    return JointDist.from_dense(px.space, px.space, px.mass[:, None] * kernel)


def parse_empirical_distribution(text: str, space: StateSpace) -> Dist:
    """Lines of ``bitstring probability``; unlisted states get probability 0."""
    mass = np.zeros(space.total_states)
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'bitstring probability'", lineno)
        try:
            state = space.parse(parts[0])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if state in seen:
            raise ParseError(f"duplicate state {parts[0]}", lineno)
        seen.add(state)
        try:
            p = float(Fraction(parts[1]))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad probability {parts[1]!r}", lineno) from None
        if p < 0:
            raise ParseError("probabilities must be non-negative", lineno)
        mass[state] = p
    total = mass.sum()
    if abs(total - 1.0) > 1e-6:
        raise ParseError(f"probabilities sum to {total:.9g}, not 1")
    return Dist(space, mass / total)
