"""Partition-versus-bipartition scaling benchmark on random threshold networks."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .net import NetworkSpec, build_transition_map, uniform_joint
from .parts import bipartition_masks, partition_count, rgs_blocks
from .phi import bracket_measures
from .psi import bracket_psi

DEFAULT_PHI_MAX = 12
DEFAULT_PSI_MAX = 12


@dataclass
class BenchRow:
    n: int
    partitions: int
    bipartitions: int
    enumerated: bool
    phi_seconds: float | None
    psi_seconds: float | None

    @property
    def psi_faster(self) -> bool | None:
        if self.phi_seconds is None or self.psi_seconds is None:
            return None
        return self.psi_seconds < self.phi_seconds


def random_threshold_network(n: int, seed: int = 0) -> NetworkSpec:
    """Each directed edge (self-edges included) present with probability 1/2."""
    rng = np.random.default_rng([seed, n])
    present = rng.random((n, n)) < 0.5
    edges = tuple((int(s), int(d)) for s, d in zip(*np.nonzero(present)))
    indegree = present.sum(axis=0)
    thresholds = tuple(int(rng.integers(1, max(int(k), 1) + 1)) for k in indegree)
    return NetworkSpec(n, thresholds, edges)


def count_partitions(n: int) -> int:
    """Partitions with at least two parts, counted by walking the enumeration."""
    return sum(int((block.max(axis=1) > 0).sum()) for block in rgs_blocks(n))


def bench_row(n: int, seed: int = 0, phi_max: int = DEFAULT_PHI_MAX,
              psi_max: int = DEFAULT_PSI_MAX) -> BenchRow:
    j = uniform_joint(build_transition_map(random_threshold_network(n, seed)))
    phi_seconds = psi_seconds = None
    enumerated = n <= phi_max
    if enumerated:
        partitions = count_partitions(n)
        start = time.perf_counter()
        bracket_measures(j)
        phi_seconds = time.perf_counter() - start
    else:
        partitions = partition_count(n)
    bipartitions = len(bipartition_masks(n)) if n <= psi_max else (1 << (n - 1)) - 1
    if n <= psi_max:
        start = time.perf_counter()
        bracket_psi(j)
        psi_seconds = time.perf_counter() - start
    return BenchRow(n, partitions, bipartitions, enumerated, phi_seconds, psi_seconds)


def run_bench(max_nodes: int, seed: int = 0, phi_max: int = DEFAULT_PHI_MAX,
              psi_max: int = DEFAULT_PSI_MAX, min_nodes: int = 2) -> list[BenchRow]:
    return [bench_row(n, seed, phi_max, psi_max) for n in range(min_nodes, max_nodes + 1)]
