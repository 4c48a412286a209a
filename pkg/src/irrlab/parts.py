"""Set partitions of node indices.

Partitions are encoded as restricted growth strings (RGS): ``assignment[k]``
is the part id of node ``k`` and ids appear in first-use order, so each set
partition has exactly one encoding. Enumeration runs in lexicographic RGS
order, which fixes MIP tie-breaking.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

# rows per numpy block when sweeping all partitions
BLOCK_ROWS = 1 << 18


@dataclass(frozen=True, order=True)
class Partition:
    assignment: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.assignment)
        if len(a) < 2:
            raise ValueError("a partition needs at least 2 nodes")
        top = -1
        for v in a:
            if v < 0 or v > top + 1:
                raise ValueError(f"{a} is not a restricted growth string")
            top = max(top, v)
        if top < 1:
            raise ValueError("a partition needs at least 2 parts")
        object.__setattr__(self, "assignment", a)

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[int]]) -> "Partition":
        nodes = sorted(i for p in parts for i in p)
        if nodes != list(range(len(nodes))):
            raise ValueError(f"parts {parts} do not cover 0..n-1 exactly once")
        if any(len(p) == 0 for p in parts):
            raise ValueError("parts must be nonempty")
        owner = {i: k for k, p in enumerate(parts) for i in p}
        relabel: dict[int, int] = {}
        rgs = []
        for i in nodes:
            rgs.append(relabel.setdefault(owner[i], len(relabel)))
        return cls(tuple(rgs))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        chunks = text.strip().split("|")
        parts = []
        for chunk in chunks:
            match = re.fullmatch(r"\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}", chunk.strip())
            if not match:
                raise ValueError(f"cannot parse partition {text!r}")
            parts.append([int(v) for v in match.group(1).split(",")])
        return cls.from_parts(parts)

    @property
    def node_count(self) -> int:
        return len(self.assignment)

    @property
    def part_count(self) -> int:
        return max(self.assignment) + 1

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(i for i, v in enumerate(self.assignment) if v == p) for p in range(self.part_count)
        )

    def __str__(self) -> str:
        return "|".join("{" + ",".join(map(str, p)) + "}" for p in self.parts)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"partitions need n >= 2, got {n}")


def _expand(block: np.ndarray) -> np.ndarray:
    """Append one more node to every RGS in ``block``, children in value order."""
    counts = block.max(axis=1).astype(np.int64) + 2
    parents = np.repeat(block, counts, axis=0)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    child = (np.arange(counts.sum()) - starts).astype(block.dtype)
    return np.hstack([parents, child[:, None]])


def rgs_blocks(n: int, block_rows: int = BLOCK_ROWS) -> Iterator[np.ndarray]:
    """All RGS of length ``n`` (including the one-part string) as int8 blocks.

    Blocks arrive in lexicographic order and each holds at most about
    ``block_rows`` rows, so the sweep never materializes Bell(n) rows.
    """
    _check_n(n)

    def walk(block: np.ndarray) -> Iterator[np.ndarray]:
        width = block.shape[1]
        if width == n:
            yield block
            return
        limit = max(1, block_rows // (width + 1))
        for start in range(0, block.shape[0], limit):
            yield from walk(_expand(block[start:start + limit]))

    yield from walk(np.zeros((1, 1), dtype=np.int8))


def block_masks(block: np.ndarray) -> np.ndarray:
    """Bitmask of every part (bit ``k`` = node ``k``); unused part ids give 0."""
    n = block.shape[1]
    weights = (np.int64(1) << np.arange(n, dtype=np.int64))
    return np.stack([((block == p) * weights).sum(axis=1) for p in range(n)], axis=1)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``range(n)`` into at least two parts; Bell(n) - 1 of them."""
    for block in rgs_blocks(n):
        for row in block:
            if row.any():
                yield Partition(tuple(row.tolist()))


def enumerate_bipartitions(n: int) -> Iterator[Partition]:
    """Each unordered {A, complement} once, A being the part holding node 0."""
    _check_n(n)
    for k in range(1, 1 << (n - 1)):
        yield Partition((0,) + tuple((k >> (n - 2 - i)) & 1 for i in range(n - 1)))


def bipartition_masks(n: int) -> np.ndarray:
    """(A, B) masks of :func:`enumerate_bipartitions` in the same order."""
    _check_n(n)
    full = (1 << n) - 1
    ks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    b = np.zeros_like(ks)
    for i in range(n - 1):
        b |= ((ks >> (n - 2 - i)) & 1) << (i + 1)
    return np.stack([full ^ b, b], axis=1)


def partition_count(n: int) -> int:
    """Bell(n) - 1 via Stirling numbers of the second kind."""
    _check_n(n)
    row = [1]
    for i in range(1, n + 1):
        new = [0] * (i + 1)
        for k in range(1, i + 1):
            new[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = new
    return sum(row) - 1


def mask_nodes(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(int(mask).bit_length()) if mask >> i & 1)


def restrict_state(state, part: Sequence[int]):
    """Digits of ``part`` (in original node order) from a bitstring or digit tuple."""
    part = sorted(set(part))
    if not part:
        raise ValueError("part must be nonempty")
    if part[0] < 0 or part[-1] >= len(state):
        raise ValueError(f"part {part} out of range for a {len(state)}-node state")
    picked = [state[i] for i in part]
    return "".join(picked) if isinstance(state, str) else tuple(picked)
