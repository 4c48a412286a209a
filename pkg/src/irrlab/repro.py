"""Recompute the published tables and diff them against the golden values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import golden
from .dist import entropy, mutual_information
from .net import uniform_joint
from .phi import bracket_measures, effective_information, phi_of_state
from .psi import bracket_psi
from .report import fmt_number, fmt_probability, md_table
from .zoo import network

# float slack on top of the printed tolerance (e.g. 0.875 printed as 0.88)
EDGE_SLACK = 1e-9


@dataclass(frozen=True)
class Cell:
    network: str
    quantity: str
    expected: str | None
    computed: float | str | None
    kind: str = "number"  # "number", "fraction" or "state"

    @property
    def ok(self) -> bool:
        if self.expected is None or self.computed is None:
            return self.expected is None and self.computed is None
        if self.kind == "state":
            return self.expected == self.computed
        if self.kind == "fraction":
            return Fraction(self.expected) == Fraction(self.computed).limit_denominator(1 << 20)
        return abs(self.computed - float(self.expected)) <= golden.tolerance(self.expected) + EDGE_SLACK

    def shown(self) -> str:
        if self.kind == "state":
            return self.computed if self.computed is not None else "-"
        if self.kind == "fraction":
            return fmt_probability(self.computed)
        return fmt_number(self.computed)


@dataclass(frozen=True)
class ReproResult:
    figure: str
    cells: tuple[Cell, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def mismatches(self) -> list[Cell]:
        return [c for c in self.cells if not c.ok]

    def render(self) -> str:
        rows = [
            (c.network, c.quantity, c.expected if c.expected is not None else "-", c.shown(), "ok" if c.ok else "MISMATCH")
            for c in self.cells
        ]
        table = md_table(("network", "quantity", "published", "computed", "status"), rows)
        verdict = "PASS" if self.ok else f"FAIL ({len(self.mismatches())} mismatches)"
        return f"## {self.figure}\n\n{table}\n{self.figure}: {verdict}\n"


def _transition_cells(name: str) -> list[Cell]:
    m = network(name)
    return [
        Cell(name, f"{golden.STATES2[x]} ->", want, m.space.format(m(x)), kind="state")
        for x, want in enumerate(golden.TRANSITIONS[name])
    ]


def _per_state(table: dict, summary: dict) -> list[Cell]:
    cells: list[Cell] = []
    for name, quantities in table.items():
        if name in golden.TRANSITIONS:
            cells += _transition_cells(name)
        j = uniform_joint(network(name))
        reachable = set(j.reachable_states())
        for y, label in enumerate(golden.STATES2):
            live = y in reachable
            values = {
                "Pr(y)": float(j.py[y]) if live else None,
                "ei(y)": effective_information(j, y) if live else None,
                "phi(y)": phi_of_state(j, y) if live else None,
            }
            for quantity, expected in quantities.items():
                cells.append(Cell(name, f"{quantity} @ {label}", expected[y], values[quantity],
                                  kind="fraction" if quantity == "Pr(y)" else "number"))
        computed = {
            "H(X)": entropy(j.input_marginal()),
            "I(X;Y)": mutual_information(j),
            "<phi>": bracket_measures(j).phi,
        }
        cells += [Cell(name, q, v, computed[q]) for q, v in summary[name].items()]
    return cells


def _fig3() -> list[Cell]:
    cells = []
    for name, expected in golden.FIG3.items():
        j = uniform_joint(network(name))
        phis = [phi_of_state(j, y) for y in j.reachable_states()]
        values = (mutual_information(j), min(phis), max(phis), bracket_measures(j).phi)
        cells += [Cell(name, q, e, v) for q, e, v in zip(golden.FIG3_COLUMNS, expected, values)]
    return cells


def bracket_row(name: str) -> tuple[float, float, float, float]:
    """(I(X;Y), <phi>, <psi>_min, <psi>_max) of a built-in network."""
    j = uniform_joint(network(name))
    psi = bracket_psi(j)
    return mutual_information(j), bracket_measures(j).phi, psi.lower, psi.upper


def _bracket_table(table: dict, with_transitions: bool = False) -> list[Cell]:
    cells = []
    for name, expected in table.items():
        if with_transitions and name in golden.TRANSITIONS:
            cells += _transition_cells(name)
        values = bracket_row(name)
        cells += [Cell(name, q, e, v) for q, e, v in zip(golden.BRACKET_COLUMNS, expected, values)]
    return cells


def reproduce(figure: str) -> ReproResult:
    figure = figure.lower()
    if figure == "fig1":
        cells = _per_state(golden.FIG1, golden.FIG1_SUMMARY)
    elif figure == "fig2":
        cells = _per_state(golden.FIG2, golden.FIG2_SUMMARY)
    elif figure == "fig3":
        cells = _fig3()
    elif figure == "fig4":
        cells = _bracket_table(golden.FIG4)
    elif figure == "fig6":
        cells = _bracket_table(golden.FIG6, with_transitions=True)
    else:
        raise KeyError(f"unknown figure {figure!r}; choose from {', '.join(golden.FIGURES)}")
    return ReproResult(figure, tuple(cells))
