"""Exact discrete probability kernel.

Distributions are dense numpy vectors over packed joint states. A joint
state is a mixed-radix integer with node 0 as the most significant digit,
which is exactly numpy's C-order flattening of an array whose axis ``i``
is node ``i``. Everything is measured in bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-9


class AbsoluteContinuityViolation(ValueError):
    """KL(p || q) is infinite: p puts mass where q has none."""


class UnreachableState(ValueError):
    """The conditioning output state has zero probability."""

    def __init__(self, state: int, message: str | None = None):
        self.state = state
        super().__init__(message or f"output state {state} is unreachable")


@dataclass(frozen=True)
class StateSpace:
    arities: tuple[int, ...]

    def __post_init__(self):
        arities = tuple(int(a) for a in self.arities)
        if not arities:
            raise ValueError("a state space needs at least one node")
        if any(a < 2 for a in arities):
            raise ValueError(f"every node needs at least 2 states, got {arities}")
        object.__setattr__(self, "arities", arities)

    @classmethod
    def binary(cls, n: int) -> "StateSpace":
        return cls((2,) * n)

    @property
    def node_count(self) -> int:
        return len(self.arities)

    @property
    def total_states(self) -> int:
        return int(np.prod(self.arities, dtype=np.int64))

    def digits(self, state: int) -> tuple[int, ...]:
        if not 0 <= state < self.total_states:
            raise ValueError(f"state {state} outside [0, {self.total_states})")
        return tuple(int(d) for d in np.unravel_index(state, self.arities))

    def pack(self, digits: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(digits), self.arities))

    def subspace(self, keep: Sequence[int]) -> "StateSpace":
        return StateSpace(tuple(self.arities[i] for i in keep))

    def restrict(self, state: int, keep: Sequence[int]) -> int:
        """Packed sub-state made of the digits of ``keep`` (in the given order)."""
        digits = self.digits(state)
        return self.subspace(keep).pack([digits[i] for i in keep])

    def format(self, state: int) -> str:
        return "".join(str(d) for d in self.digits(state))

    def parse(self, text: str) -> int:
        text = text.strip()
        if len(text) != self.node_count or not text.isdigit():
            raise ValueError(f"{text!r} is not a state of {self.node_count} digits")
        digits = [int(c) for c in text]
        if any(d >= a for d, a in zip(digits, self.arities)):
            raise ValueError(f"{text!r} has a digit outside its node's alphabet")
        return self.pack(digits)


def _check_keep(space: StateSpace, keep: Iterable[int]) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(i) for i in keep)))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= space.node_count:
        raise ValueError(f"node index out of range in {keep}")
    return keep


@dataclass(frozen=True, eq=False)
class Dist:
    space: StateSpace
    mass: np.ndarray

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=float).reshape(-1)
        if mass.shape[0] != self.space.total_states:
            raise ValueError(
                f"mass has {mass.shape[0]} entries, space has {self.space.total_states}"
            )
        if np.any(mass < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(mass.sum() - 1.0) > TOL:
            raise ValueError(f"probabilities sum to {mass.sum()!r}, not 1")
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    @classmethod
    def uniform(cls, space: StateSpace) -> "Dist":
        return cls(space, np.full(space.total_states, 1.0 / space.total_states))

    @classmethod
    def point(cls, space: StateSpace, state: int) -> "Dist":
        mass = np.zeros(space.total_states)
        mass[state] = 1.0
        return cls(space, mass)

    def tensor(self) -> np.ndarray:
        return self.mass.reshape(self.space.arities)

    def __getitem__(self, state: int) -> float:
        return float(self.mass[state])

    def allclose(self, other: "Dist", atol: float = TOL) -> bool:
        return self.space == other.space and bool(np.allclose(self.mass, other.mass, atol=atol, rtol=0))


@dataclass(frozen=True, eq=False)
class JointDist:
    """P(x, y) stored as its nonzero entries ``(xs[k], ys[k]) -> ps[k]``.

    Deterministic mechanisms have one entry per input state, so the sparse
    form keeps 2^n-node systems at O(2^n) memory instead of O(4^n).
    """

    input_space: StateSpace
    output_space: StateSpace
    xs: np.ndarray
    ys: np.ndarray
    ps: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.int64).reshape(-1)
        ys = np.asarray(self.ys, dtype=np.int64).reshape(-1)
        ps = np.asarray(self.ps, dtype=float).reshape(-1)
        if not (xs.shape == ys.shape == ps.shape):
            raise ValueError("xs, ys and ps must have equal length")
        if xs.size and (xs.min() < 0 or xs.max() >= self.input_space.total_states):
            raise ValueError("input state outside the input space")
        if ys.size and (ys.min() < 0 or ys.max() >= self.output_space.total_states):
            raise ValueError("output state outside the output space")
        if np.any(ps < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(ps.sum() - 1.0) > TOL:
            raise ValueError(f"probabilities sum to {ps.sum()!r}, not 1")
        # merge duplicate (x, y) pairs and drop zeros
        keys = xs * self.output_space.total_states + ys
        uniq, inverse = np.unique(keys, return_inverse=True)
        merged = np.bincount(inverse, weights=ps, minlength=uniq.size)
        keep = merged > 0
        uniq, merged = uniq[keep], merged[keep]
        for name, arr in (
            ("xs", uniq // self.output_space.total_states),
            ("ys", uniq % self.output_space.total_states),
            ("ps", merged),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_dense(cls, input_space: StateSpace, output_space: StateSpace, mass) -> "JointDist":
        mass = np.asarray(mass, dtype=float)
        shape = (input_space.total_states, output_space.total_states)
        if mass.shape != shape:
            raise ValueError(f"joint mass has shape {mass.shape}, expected {shape}")
        xs, ys = np.nonzero(mass)
        if np.any(mass < 0):
            raise ValueError("probabilities must be non-negative")
        return cls(input_space, output_space, xs, ys, mass[xs, ys])

    @property
    def mass(self) -> np.ndarray:
        """Dense (x, y) matrix; only sensible for small spaces."""
        m = np.zeros((self.input_space.total_states, self.output_space.total_states))
        m[self.xs, self.ys] = self.ps
        return m

    @cached_property
    def px(self) -> np.ndarray:
        return np.bincount(self.xs, weights=self.ps, minlength=self.input_space.total_states)

    @cached_property
    def py(self) -> np.ndarray:
        return np.bincount(self.ys, weights=self.ps, minlength=self.output_space.total_states)

    def input_marginal(self) -> Dist:
        return Dist(self.input_space, self.px)

    def output_marginal(self) -> Dist:
        return Dist(self.output_space, self.py)

    def reachable_states(self) -> list[int]:
        return [int(y) for y in np.flatnonzero(self.py > 0)]

    def restrict(self, x_keep: Sequence[int], y_keep: Sequence[int]) -> "JointDist":
        """Joint of the kept input digits and kept output digits, in node order."""
        x_keep = _check_keep(self.input_space, x_keep)
        y_keep = _check_keep(self.output_space, y_keep)
        return JointDist(
            self.input_space.subspace(x_keep),
            self.output_space.subspace(y_keep),
            restrict_states(self.input_space, self.xs, x_keep),
            restrict_states(self.output_space, self.ys, y_keep),
            self.ps,
        )


def restrict_states(space: StateSpace, states: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Vectorized :meth:`StateSpace.restrict`."""
    keep = tuple(keep)
    if keep == tuple(range(space.node_count)):
        return np.asarray(states, dtype=np.int64)
    digits = np.unravel_index(np.asarray(states, dtype=np.int64), space.arities)
    sub = space.subspace(keep)
    return np.ravel_multi_index(tuple(digits[i] for i in keep), sub.arities).astype(np.int64)


def _plogp_sum(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())


def entropy(d: Dist) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    return max(_plogp_sum(d.mass), 0.0)


def kl_divergence(p: Dist, q: Dist) -> float:
    if p.space != q.space:
        raise ValueError("KL divergence needs both distributions on the same space")
    return kl_arrays(p.mass, q.mass)


def kl_arrays(p: np.ndarray, q: np.ndarray) -> float:
    support = p > 0
    if np.any(q[support] <= 0):
        raise AbsoluteContinuityViolation(
            "p has mass where q has none; the divergence is infinite"
        )
    ps, qs = p[support], q[support]
    # log of each side separately: the ratio of two tiny values can overflow
    return max(float((ps * (np.log2(ps) - np.log2(qs))).sum()), 0.0)


def marginalize(d: Dist, keep: Iterable[int]) -> Dist:
    keep = _check_keep(d.space, keep)
    drop = tuple(i for i in range(d.space.node_count) if i not in keep)
    t = d.tensor().sum(axis=drop) if drop else d.tensor()
    return Dist(d.space.subspace(keep), np.asarray(t).reshape(-1))


def condition_on_output(j: JointDist, y: int) -> Dist:
    """P(X | y). Raises UnreachableState when P(y) = 0."""
    sel = j.ys == y
    total = j.ps[sel].sum()
    if total <= 0:
        raise UnreachableState(y, f"output state {j.output_space.format(y)} is unreachable")
    column = np.bincount(j.xs[sel], weights=j.ps[sel], minlength=j.input_space.total_states)
    return Dist(j.input_space, column / total)


def mutual_information(j: JointDist) -> float:
    logs = np.log2(j.ps) - np.log2(j.px[j.xs]) - np.log2(j.py[j.ys])
    return max(float((j.ps * logs).sum()), 0.0)


def joint_entropy(j: JointDist) -> float:
    return max(_plogp_sum(j.ps), 0.0)


def specific_surprise(j: JointDist, y: int) -> float:
    """I(X; y) = KL(P(X|y) || P(X))."""
    return kl_divergence(condition_on_output(j, y), j.input_marginal())


def conditional_mutual_information(j: JointDist, a: Sequence[int], b: Sequence[int]) -> float:
    """I(X_a ; X_b | Y) from the entropy identity H(AY) + H(BY) - H(ABY) - H(Y)."""
    y_all = range(j.output_space.node_count)
    ab = sorted(set(a) | set(b))
    h = lambda keep: joint_entropy(j.restrict(keep, y_all))
    value = h(a) + h(b) - h(ab) - entropy(j.output_marginal())
    return max(value, 0.0)


def is_product(d: Dist, atol: float = TOL) -> bool:
    """True when ``d`` equals the product of its single-node marginals."""
    product = np.ones(1)
    for i in range(d.space.node_count):
        product = np.multiply.outer(product, marginalize(d, [i]).mass).reshape(-1)
    return bool(np.allclose(product, d.mass, atol=atol, rtol=0))


def label_entropy(labels: np.ndarray, weights: np.ndarray, n_labels: int | None = None) -> float:
    """Entropy of the distribution that puts ``weights[k]`` on ``labels[k]``."""
    if n_labels is not None and n_labels <= (1 << 22):
        w = np.bincount(labels, weights=weights, minlength=n_labels)
    else:
        _, inverse = np.unique(labels, return_inverse=True)
        w = np.bincount(inverse, weights=weights)
    return max(_plogp_sum(w), 0.0)
