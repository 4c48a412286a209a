"""Effective information, minimum information partitions and phi.

The MIP search never evaluates the KL divergence partition by partition.
``KL(P(X|y) || prod_i Q_i)`` splits into ``-H(X|y)`` plus one cross-entropy
term per part, so each part's term is computed once per node subset and
every partition's cost is a table lookup and a sum. The reported value at
the winning partition is recomputed directly by :func:`ei_beyond_partition`.
"""

from __future__ import annotations

import enum
import math
import weakref
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import (
    AbsoluteContinuityViolation,
    Dist,
    JointDist,
    UnreachableState,
    condition_on_output,
    entropy,
    is_product,
    kl_arrays,
    label_entropy,
    mutual_information,
    restrict_states,
    specific_surprise,
)
from .parts import Partition, block_masks, mask_nodes, rgs_blocks

TIE_SLACK = 1e-9


class EiMode(enum.Enum):
    STANDARD = "standard"
    PERTURBED_WIRES = "perturbed"


@dataclass(frozen=True)
class MipResult:
    partition: Partition
    raw_ei_beyond: float
    normalizer: float
    normalized_cost: float


@dataclass(frozen=True)
class BracketPhi:
    ei: float
    mip: MipResult
    phi: float


class FirstMinimum:
    """Streaming argmin: the earliest candidate within ``slack`` of the global minimum.

    Candidates must be fed in enumeration order.
    """

    def __init__(self, slack: float = TIE_SLACK):
        self.slack = slack
        self.best = math.inf
        self._held: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []

    def feed(self, values: np.ndarray, rows: np.ndarray, extra: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        finite = np.isfinite(values)
        if not finite.any():
            return
        block_min = float(values[finite].min())
        if block_min > self.best + self.slack:
            return
        self.best = min(self.best, block_min)
        cut = self.best + self.slack
        self._held = [
            (v[k], r[k], e[k]) for v, r, e in self._held if (k := v <= cut).any()
        ]
        keep = finite & (values <= cut)
        self._held.append((values[keep], rows[keep], extra[keep]))

    def result(self):
        """(value, row, extra) of the winner, or None if nothing finite was fed."""
        cut = self.best + self.slack
        for values, rows, extra in self._held:
            hits = np.flatnonzero(values <= cut)
            if hits.size:
                k = hits[0]
                return float(values[k]), rows[k], extra[k]
        return None


class _Repertoires:
    """Per-joint cache of part conditionals Q(x_S | y_S) and input entropies."""

    def __init__(self, j: JointDist, mode: EiMode):
        self.j = j
        self.mode = mode
        self.n = j.input_space.node_count
        if j.output_space != j.input_space:
            raise ValueError("phi needs matching input and output spaces")
        self._q: dict[int, np.ndarray] = {}
        self._hx: np.ndarray | None = None
        self.input_is_product = is_product(j.input_marginal())

    def q_matrix(self, mask: int) -> np.ndarray:
        """Columns are Q(X_S | y_S); unreachable y_S columns are all zero."""
        q = self._q.get(mask)
        if q is None:
            part = mask_nodes(mask)
            if self.mode is EiMode.STANDARD:
                joint = self.j.restrict(part, part).mass
            else:
                joint = _pstar_joint(self.j, part)
            totals = joint.sum(axis=0)
            q = np.divide(joint, totals, out=np.zeros_like(joint), where=totals > 0)
            self._q[mask] = q
        return q

    def input_entropies(self) -> np.ndarray:
        """H(X_S) for every node mask S (index 0 unused)."""
        if self._hx is None:
            j = self.j
            hx = np.zeros(1 << self.n)
            for mask in range(1, 1 << self.n):
                part = mask_nodes(mask)
                sub = restrict_states(j.input_space, j.xs, part)
                hx[mask] = label_entropy(sub, j.ps, j.input_space.subspace(part).total_states)
            self._hx = hx
        return self._hx

    def cross_entropies(self, p: Dist, y: int) -> np.ndarray:
        """-sum_{x_S} P(x_S|y) log2 Q(x_S|y_S) for every proper mask S."""
        n = self.n
        space = self.j.input_space
        ce = np.zeros(1 << n)
        tensor = p.tensor()
        digits = space.digits(y)
        for mask in range(1, (1 << n) - 1):
            part = mask_nodes(mask)
            drop = tuple(i for i in range(n) if not mask >> i & 1)
            ps = tensor.sum(axis=drop).reshape(-1)
            q_all = self.q_matrix(mask)
            y_sub = space.subspace(part).pack([digits[i] for i in part])
            if q_all[:, y_sub].sum() <= 0:
                raise UnreachableState(y, f"part state of {list(part)} unreachable for y={space.format(y)}")
            q = q_all[:, y_sub]
            support = ps > 0
            if np.any(q[support] <= 0):
                ce[mask] = math.inf
            else:
                ce[mask] = float(-(ps[support] * np.log2(q[support])).sum())
        return ce


_CACHE: "weakref.WeakKeyDictionary[JointDist, dict[EiMode, _Repertoires]]" = weakref.WeakKeyDictionary()


def _repertoires(j: JointDist, mode: EiMode) -> _Repertoires:
    per_joint = _CACHE.setdefault(j, {})
    rep = per_joint.get(mode)
    if rep is None:
        rep = per_joint[mode] = _Repertoires(j, mode)
    return rep


def _pstar_joint(j: JointDist, part: Sequence[int]) -> np.ndarray:
    """P*(x_S, y_S) = P(x_S) prod_k P(y_k | x_S) as a dense (x_S, y_S) matrix."""
    part = tuple(sorted(part))
    px_part = j.restrict(part, [part[0]]).mass.sum(axis=1)
    table = px_part[:, None]
    for k in part:
        pair = j.restrict(part, [k]).mass
        cond = np.divide(pair, px_part[:, None], out=np.zeros_like(pair), where=px_part[:, None] > 0)
        table = (table[:, :, None] * cond[:, None, :]).reshape(len(px_part), -1)
    return table


def pstar_part_conditional(j: JointDist, part: Sequence[int], y_part: int) -> Dist:
    """P*(X_S | y_S) where each node of the part reaches its state independently."""
    part = tuple(sorted(set(part)))
    if not part:
        raise ValueError("part must be nonempty")
    joint = _pstar_joint(j, part)
    column = joint[:, y_part]
    total = column.sum()
    if total <= 0:
        raise UnreachableState(y_part, f"part state {y_part} of {list(part)} has P* = 0")
    return Dist(j.input_space.subspace(part), column / total)


def effective_information(j: JointDist, y: int) -> float:
    """ei(X -> y): the specific surprise of y about the input."""
    return specific_surprise(j, y)


def _part_conditional(j: JointDist, part: Sequence[int], y: int, mode: EiMode) -> np.ndarray:
    rep = _repertoires(j, mode)
    mask = sum(1 << i for i in part)
    y_sub = j.output_space.restrict(y, part)
    column = rep.q_matrix(mask)[:, y_sub]
    if column.sum() <= 0:
        raise UnreachableState(y, f"part state of {list(part)} unreachable")
    return column


def ei_beyond_partition(j: JointDist, y: int, partition: Partition,
                        mode: EiMode = EiMode.STANDARD) -> float:
    """KL(P(X|y) || prod_i Q(X_i | y_i)) with Q set by ``mode``."""
    p = condition_on_output(j, y)
    if partition.node_count != j.input_space.node_count:
        raise ValueError("partition and network sizes differ")
    arities = j.input_space.arities
    product = np.ones([1] * len(arities))
    for part in partition.parts:
        column = _part_conditional(j, part, y, mode)
        shape = [arities[i] if i in part else 1 for i in range(len(arities))]
        product = product * column.reshape(shape)
    return kl_arrays(p.mass, product.reshape(-1))


def _sweep(raw_of_masks, hx: np.ndarray, n: int) -> tuple[float, np.ndarray, float] | None:
    """Minimize raw/normalizer over all partitions; returns (normalized, rgs, raw)."""
    best = FirstMinimum()
    for block in rgs_blocks(n):
        multi = block.max(axis=1) > 0
        if not multi.any():
            continue
        block = block[multi]
        masks = block_masks(block)
        raw = raw_of_masks(masks)
        used = masks > 0
        m = used.sum(axis=1)
        hmin = np.where(used, hx[masks], np.inf).min(axis=1)
        norm = (m - 1) * hmin
        with np.errstate(divide="ignore", invalid="ignore"):
            normalized = np.where(norm > 0, raw / norm, np.where(raw > 0, np.inf, 0.0))
        best.feed(normalized, block, raw)
    return best.result()


def find_mip(j: JointDist, y: int, mode: EiMode = EiMode.STANDARD) -> MipResult:
    rep = _repertoires(j, mode)
    n = rep.n
    p = condition_on_output(j, y)
    ce = rep.cross_entropies(p, y)
    h = entropy(p)
    hx = rep.input_entropies()
    winner = _sweep(lambda masks: ce[masks].sum(axis=1) - h, hx, n)
    if winner is None:
        raise AbsoluteContinuityViolation(
            f"every partition has infinite ei beyond it at y={j.output_space.format(y)}"
        )
    normalized, rgs, _ = winner
    partition = Partition(tuple(rgs.tolist()))
    raw = ei_beyond_partition(j, y, partition, mode)
    normalizer = (partition.part_count - 1) * min(hx[sum(1 << i for i in part)] for part in partition.parts)
    return MipResult(partition, raw, float(normalizer), raw / normalizer if normalizer > 0 else normalized)


def phi_of_state(j: JointDist, y: int, mode: EiMode = EiMode.STANDARD) -> float:
    """Raw ei beyond the MIP of y."""
    return find_mip(j, y, mode).raw_ei_beyond


def part_mutual_informations(j: JointDist) -> np.ndarray:
    """I(X_S ; Y_S) for every node mask S (index 0 unused)."""
    n = j.input_space.node_count
    out = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        part = mask_nodes(mask)
        xs = restrict_states(j.input_space, j.xs, part)
        ys = restrict_states(j.output_space, j.ys, part)
        size = j.input_space.subspace(part).total_states
        out[mask] = max(
            label_entropy(xs, j.ps, size)
            + label_entropy(ys, j.ps, size)
            - label_entropy(xs * size + ys, j.ps, size * size),
            0.0,
        )
    return out


def bracket_ei_beyond(j: JointDist, partition: Partition, mode: EiMode = EiMode.STANDARD) -> float:
    """E_y ei(X -> y / P), averaged state by state."""
    total = 0.0
    for y in j.reachable_states():
        total += j.py[y] * ei_beyond_partition(j, y, partition, mode)
    return total


def _bracket_raw_table(j: JointDist, mode: EiMode) -> tuple[np.ndarray, float]:
    """Per-mask terms ``t`` and offset ``c`` with <ei/P> = c + sum_S t[S]."""
    rep = _repertoires(j, mode)
    if mode is EiMode.STANDARD and rep.input_is_product:
        return -part_mutual_informations(j), mutual_information(j)
    # general case: average the per-state cross-entropy decomposition
    n = rep.n
    avg = np.zeros(1 << n)
    h_cond = 0.0
    for y in j.reachable_states():
        p = condition_on_output(j, y)
        avg += j.py[y] * rep.cross_entropies(p, y)
        h_cond += j.py[y] * entropy(p)
    return avg, -h_cond


def bracket_measures(j: JointDist, mode: EiMode = EiMode.STANDARD) -> BracketPhi:
    """<ei> = I(X;Y), the single <MIP> for all states, and <phi> at it."""
    rep = _repertoires(j, mode)
    terms, offset = _bracket_raw_table(j, mode)
    hx = rep.input_entropies()
    winner = _sweep(lambda masks: offset + terms[masks].sum(axis=1), hx, rep.n)
    if winner is None:
        raise AbsoluteContinuityViolation("every partition has infinite averaged ei beyond it")
    normalized, rgs, raw = winner
    partition = Partition(tuple(rgs.tolist()))
    normalizer = (partition.part_count - 1) * min(hx[sum(1 << i for i in part)] for part in partition.parts)
    raw = max(float(raw), 0.0)
    mip = MipResult(partition, raw, float(normalizer), float(normalized))
    return BracketPhi(mutual_information(j), mip, raw)


def expected_state_phi(j: JointDist, mode: EiMode = EiMode.STANDARD) -> float:
    """E_y phi(y); differs from <phi> because every state picks its own MIP."""
    return sum(j.py[y] * phi_of_state(j, y, mode) for y in j.reachable_states())
