"""Acceptance gate: one test, and one PASS/FAIL line, per criterion."""

import math
import time

import numpy as np

import oracle
from conftest import CORPUS, DOUBLETS, record_criterion
from irrlab import bench, golden
from irrlab.dist import AbsoluteContinuityViolation, Dist, StateSpace, kl_divergence, mutual_information
from irrlab.net import compose_t_steps, uniform_joint
from irrlab.parts import bipartition_masks, enumerate_partitions
from irrlab.phi import (
    bracket_ei_beyond,
    bracket_measures,
    effective_information,
    part_mutual_informations,
    phi_of_state,
)
from irrlab.psi import bracket_psi, psi_bounds_state
from irrlab.repro import reproduce
from irrlab.zoo import network


def _repro(number, figure, extra_checks=()):
    start = time.perf_counter()
    result = reproduce(figure)
    elapsed = time.perf_counter() - start
    failed = [f"{c.network} {c.quantity}: want {c.expected}, got {c.shown()}" for c in result.mismatches()]
    failed += [msg for ok, msg in extra_checks if not ok]
    if elapsed >= 1.0:
        failed.append(f"took {elapsed:.2f}s")
    detail = f"{figure}, {len(result.cells)} cells, {elapsed:.3f}s"
    record_criterion(number, not failed, detail if not failed else detail + "; " + "; ".join(failed))
    assert not failed, failed


def test_criterion_1_fig1():
    j = uniform_joint(network("OR-GET"))
    phi10 = phi_of_state(j, 2)
    _repro(1, "fig1", [(round(phi10, 2) == 2.58 and phi10 > 2.0, f"phi(OR-GET, 10) = {phi10:.4f}")])


def test_criterion_2_fig2():
    _repro(2, "fig2")


def test_criterion_3_fig3():
    _repro(3, "fig3")


def test_criterion_4_fig4():
    _repro(4, "fig4")


def test_criterion_5_fig6():
    _repro(5, "fig6")


def _measures(m):
    j = uniform_joint(m)
    psi = bracket_psi(j)
    per_state = {y: (effective_information(j, y), phi_of_state(j, y), *vars(psi_bounds_state(j, y)).values())
                 for y in j.reachable_states()}
    return j, (mutual_information(j), bracket_measures(j).phi, psi.lower, psi.upper), per_state


def test_criterion_6_composition():
    and_get = network("AND-GET")
    failed = []
    for t, (target, printed) in golden.COMPOSITION.items():
        composed = compose_t_steps(and_get, t)
        reference = network(target)
        table = [composed.space.format(y) for y in composed.next]
        if table != list(printed) or composed != reference:
            failed.append(f"t={t}: composed table {table} vs {target} {list(printed)}")
            continue
        _, brackets_a, states_a = _measures(composed)
        _, brackets_b, states_b = _measures(reference)
        if states_a.keys() != states_b.keys() or not np.allclose(brackets_a, brackets_b, atol=1e-9, rtol=0):
            failed.append(f"t={t}: measures differ")
            continue
        for y in states_a:
            a, b = states_a[y], states_b[y]
            if not (np.allclose(a[:4], b[:4], atol=1e-9, rtol=0) and a[4:] == b[4:]):
                failed.append(f"t={t}: state {y} differs")
    record_criterion(6, not failed, "AND-GET at t=1..4" + ("" if not failed else "; " + "; ".join(failed)))
    assert not failed, failed


def test_criterion_7_properties():
    failed = []
    for name in CORPUS:
        j = uniform_joint(network(name))
        mi = mutual_information(j)
        total_ei = 0.0
        for y in j.reachable_states():
            b = psi_bounds_state(j, y)
            ei = effective_information(j, y)
            total_ei += j.py[y] * ei
            if not b.lower <= b.upper + 1e-9:
                failed.append(f"{name} y={y}: psi sandwich")
            if not b.upper <= ei + 1e-9:
                failed.append(f"{name} y={y}: psi_max > I(X;y)")
        if abs(total_ei - mi) > 1e-9:
            failed.append(f"{name}: E_y ei != I(X;Y)")
        bb = bracket_psi(j)
        if not bb.lower <= bb.upper + 1e-9:
            failed.append(f"{name}: bracket psi sandwich")

    for name in DOUBLETS:
        j = uniform_joint(network(name))
        mi, parts_mi = mutual_information(j), part_mutual_informations(j)
        for partition in enumerate_partitions(2):
            identity = mi - sum(parts_mi[sum(1 << i for i in part)] for part in partition.parts)
            if abs(bracket_ei_beyond(j, partition) - identity) > 1e-9:
                failed.append(f"{name}: bracket identity at {partition}")

    rng = np.random.default_rng(7)
    space = StateSpace.binary(3)
    for _ in range(500):
        p = Dist(space, rng.dirichlet(np.ones(8)))
        q = Dist(space, rng.dirichlet(np.ones(8) * 0.3))
        try:
            if kl_divergence(p, q) < 0 or abs(kl_divergence(p, p)) > 1e-12:
                failed.append("KL negativity")
        except AbsoluteContinuityViolation:
            pass

    for a, b in (("AND-ZERO", "AND-AND"), ("KEEP-KEEP", "GET-GET"), ("ANDTRIPLET", "ISO-ANDTRIPLET")):
        pa, pb = bracket_psi(uniform_joint(network(a))), bracket_psi(uniform_joint(network(b)))
        if abs(pa.lower - pb.lower) > 1e-9 or abs(pa.upper - pb.upper) > 1e-9:
            failed.append(f"psi({a}) != psi({b})")

    for n in range(2, 9):
        if sum(1 for _ in enumerate_partitions(n)) != oracle.bell_triangle(n) - 1:
            failed.append(f"partition count n={n}")

    record_criterion(7, not failed, f"properties over {len(CORPUS)} networks" + ("" if not failed else "; " + "; ".join(failed[:10])))
    assert not failed, failed


def test_criterion_8_scaling():
    failed = []
    lines = []
    for n in range(4, 13):
        partitions = bench.count_partitions(n)
        bipartitions = len(bipartition_masks(n))
        if partitions != oracle.bell_triangle(n) - 1:
            failed.append(f"n={n}: {partitions} partitions")
        if bipartitions != 2 ** (n - 1) - 1:
            failed.append(f"n={n}: {bipartitions} bipartitions")
        if n >= 8:
            row = bench.bench_row(n)
            lines.append(f"n={n} phi {row.phi_seconds:.3f}s psi {row.psi_seconds:.3f}s")
            if not row.psi_seconds < row.phi_seconds:
                failed.append(f"n={n}: psi {row.psi_seconds:.3f}s not below phi {row.phi_seconds:.3f}s")
    detail = "counts n=4..12; " + ", ".join(lines)
    record_criterion(8, not failed, detail + ("" if not failed else "; " + "; ".join(failed)))
    assert not failed, failed
