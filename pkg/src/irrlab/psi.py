"""Closed-form bounds on the PID irreducibility measure psi.

Only bipartitions {A, B} are searched for the lower bounds and only
single-node leave-outs for the upper bounds. Both bounds assume the
input nodes are independent; callers that supply a correlated input
distribution still get numbers, and :func:`input_independent` tells them
whether those numbers carry the guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dist import (
    JointDist,
    condition_on_output,
    is_product,
    kl_arrays,
    label_entropy,
    marginalize,
    restrict_states,
)
from .parts import Partition, bipartition_masks, enumerate_bipartitions, mask_nodes
from .phi import FirstMinimum


@dataclass(frozen=True)
class PsiBounds:
    lower: float
    upper: float
    argmin_lower: Partition
    argmin_upper: int


def _check(j: JointDist) -> int:
    n = j.input_space.node_count
    if n < 2:
        raise ValueError("psi bounds need at least 2 nodes")
    return n


def input_independent(j: JointDist) -> bool:
    return is_product(j.input_marginal())


def _first_min(values) -> tuple[float, int]:
    best = FirstMinimum()
    values = np.asarray(values, dtype=float)
    idx = np.arange(values.size)
    best.feed(values, idx, idx)
    value, index, _ = best.result()
    return value, int(index)


def psi_min_state(j: JointDist, y: int) -> tuple[float, Partition]:
    """min over bipartitions of KL(P(X|y) || P(A|y) P(B|y))."""
    n = _check(j)
    p = condition_on_output(j, y)
    arities = j.input_space.arities
    bips = list(enumerate_bipartitions(n))
    values = []
    for bip in bips:
        product = np.ones([1] * n)
        for part in bip.parts:
            shape = [arities[i] if i in part else 1 for i in range(n)]
            product = product * marginalize(p, part).mass.reshape(shape)
        values.append(kl_arrays(p.mass, product.reshape(-1)))
    value, k = _first_min(values)
    return value, bips[k]


def psi_max_state(j: JointDist, y: int) -> tuple[float, int]:
    """min over nodes i of KL(P(X|y) || P(X_i) P(X_~i|y))."""
    n = _check(j)
    p = condition_on_output(j, y)
    prior = j.input_marginal()
    arities = j.input_space.arities
    values = []
    for i in range(n):
        rest = [k for k in range(n) if k != i]
        shape_i = [arities[k] if k == i else 1 for k in range(n)]
        shape_rest = [1 if k == i else arities[k] for k in range(n)]
        product = marginalize(prior, [i]).mass.reshape(shape_i) * marginalize(p, rest).mass.reshape(shape_rest)
        values.append(kl_arrays(p.mass, product.reshape(-1)))
    value, i = _first_min(values)
    return value, i


def psi_bounds_state(j: JointDist, y: int) -> PsiBounds:
    lower, bip = psi_min_state(j, y)
    upper, node = psi_max_state(j, y)
    return PsiBounds(lower, upper, bip, node)


def _xy_entropies(j: JointDist) -> np.ndarray:
    """H(X_S, Y) for every node mask S, Y being the whole output."""
    n = j.input_space.node_count
    ny = j.output_space.total_states
    out = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        part = mask_nodes(mask)
        xs = restrict_states(j.input_space, j.xs, part)
        size = j.input_space.subspace(part).total_states
        out[mask] = label_entropy(xs * ny + j.ys, j.ps, size * ny)
    return out


def bracket_psi_min(j: JointDist) -> tuple[float, Partition]:
    """min over bipartitions of I(A ; B | Y)."""
    n = _check(j)
    h = _xy_entropies(j)
    h_y = label_entropy(j.ys, j.ps, j.output_space.total_states)
    pairs = bipartition_masks(n)
    cmi = h[pairs[:, 0]] + h[pairs[:, 1]] - h[(1 << n) - 1] - h_y
    value, k = _first_min(np.maximum(cmi, 0.0))
    parts = [mask_nodes(int(m)) for m in pairs[k]]
    return value, Partition.from_parts(parts)


def bracket_psi_max(j: JointDist) -> tuple[float, int]:
    """min over nodes i of KL(P(X,Y) || P(X_~i, Y) P(X_i))."""
    n = _check(j)
    space = j.input_space
    ny = j.output_space.total_states
    px = j.px
    values = []
    for i in range(n):
        rest = [k for k in range(n) if k != i]
        keys = restrict_states(space, j.xs, rest) * ny + j.ys
        _, inverse = np.unique(keys, return_inverse=True)
        p_rest_y = np.bincount(inverse, weights=j.ps)[inverse]
        xi = restrict_states(space, j.xs, [i])
        p_i = np.bincount(restrict_states(space, np.arange(space.total_states), [i]),
                          weights=px, minlength=space.arities[i])[xi]
        values.append(kl_arrays(j.ps, p_rest_y * p_i))
    value, i = _first_min(values)
    return value, i


def bracket_psi(j: JointDist) -> PsiBounds:
    lower, bip = bracket_psi_min(j)
    upper, node = bracket_psi_max(j)
    return PsiBounds(lower, upper, bip, node)
