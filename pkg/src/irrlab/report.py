"""Measure reports and their csv / markdown / json renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .dist import Dist, UnreachableState, entropy
from .net import TransitionMap, joint_from_input
from .phi import EiMode, bracket_measures, effective_information, find_mip
from .psi import bracket_psi, input_independent, psi_bounds_state

FORMATS = ("md", "csv", "json")


@dataclass
class StateRow:
    state: str
    pr: float | None = None
    ei: float | None = None
    phi: float | None = None
    psi_min: float | None = None
    psi_max: float | None = None
    mip: str | None = None

    @property
    def reachable(self) -> bool:
        return self.pr is not None


@dataclass
class Summary:
    h_x: float
    mutual_information: float
    bracket_phi: float
    bracket_mip: str
    expected_phi: float
    min_phi: float
    max_phi: float
    bracket_psi_min: float
    bracket_psi_min_argmin: str
    bracket_psi_max: float
    bracket_psi_max_argmin: int


@dataclass
class MeasureReport:
    network: str
    rows: list[StateRow]
    summary: Summary
    mode: str = "standard"
    t: int = 1
    x_dist: str = "uniform"
    independence_violated: bool = False
    notes: list[str] = field(default_factory=list)


def build_report(
    network: str,
    mechanism: TransitionMap,
    *,
    mode: EiMode = EiMode.STANDARD,
    t: int = 1,
    px: Dist | None = None,
    x_dist: str = "uniform",
    state: int | None = None,
) -> MeasureReport:
    """Every state-dependent and averaged measure of ``mechanism`` (already composed to ``t``)."""
    if mechanism.node_count < 2:
        raise ValueError("phi and psi need a network of at least 2 nodes")
    space = mechanism.space
    px = px if px is not None else Dist.uniform(space)
    j = joint_from_input(mechanism, px)
    if state is not None and j.py[state] <= 0:
        raise UnreachableState(state, f"output state {space.format(state)} is unreachable")

    per_state: dict[int, StateRow] = {}
    for y in j.reachable_states():
        mip = find_mip(j, y, mode)
        bounds = psi_bounds_state(j, y)
        per_state[y] = StateRow(
            space.format(y), float(j.py[y]), effective_information(j, y),
            mip.raw_ei_beyond, bounds.lower, bounds.upper, str(mip.partition),
        )
    chosen = [state] if state is not None else range(space.total_states)
    rows = [per_state.get(y, StateRow(space.format(y))) for y in chosen]

    phis = [r.phi for r in per_state.values()]
    bracket = bracket_measures(j, mode)
    psi = bracket_psi(j)
    summary = Summary(
        h_x=entropy(px),
        mutual_information=bracket.ei,
        bracket_phi=bracket.phi,
        bracket_mip=str(bracket.mip.partition),
        expected_phi=sum(j.py[y] * r.phi for y, r in per_state.items()),
        min_phi=min(phis),
        max_phi=max(phis),
        bracket_psi_min=psi.lower,
        bracket_psi_min_argmin=str(psi.argmin_lower),
        bracket_psi_max=psi.upper,
        bracket_psi_max_argmin=psi.argmin_upper,
    )
    violated = not input_independent(j)
    notes = ["independence assumption violated: psi bounds carry no guarantee"] if violated else []
    return MeasureReport(network, rows, summary, mode.value, t, x_dist, violated, notes)


def fmt_number(value: float | None) -> str:
    """Three decimals, ties to even; unreachable / missing values print as '-'."""
    if value is None:
        return "-"
    text = str(Decimal(repr(float(value))).quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN))
    return "0.000" if text == "-0.000" else text


def fmt_probability(value: float | None) -> str:
    if value is None:
        return "-"
    frac = Fraction(value).limit_denominator(1 << 20)
    if frac.denominator <= 1024 and abs(float(frac) - value) < 1e-12:
        return str(frac)
    return fmt_number(value)


ROW_HEADER = ("y", "Pr(y)", "ei(y)", "phi(y)", "psi_min(y)", "psi_max(y)", "MIP(y)")


def _row_cells(row: StateRow) -> list[str]:
    return [
        row.state, fmt_probability(row.pr), fmt_number(row.ei), fmt_number(row.phi),
        fmt_number(row.psi_min), fmt_number(row.psi_max), row.mip or "-",
    ]


def _summary_cells(report: MeasureReport) -> list[tuple[str, str]]:
    s = report.summary
    return [
        ("network", report.network),
        ("mode", report.mode),
        ("t", str(report.t)),
        ("x-dist", report.x_dist),
        ("independence violated", "yes" if report.independence_violated else "no"),
        ("H(X)", fmt_number(s.h_x)),
        ("I(X;Y)", fmt_number(s.mutual_information)),
        ("<phi>", fmt_number(s.bracket_phi)),
        ("<MIP>", s.bracket_mip),
        ("E_y phi(y)", fmt_number(s.expected_phi)),
        ("min phi(y)", fmt_number(s.min_phi)),
        ("max phi(y)", fmt_number(s.max_phi)),
        ("<psi>_min", fmt_number(s.bracket_psi_min)),
        ("<psi>_min bipartition", s.bracket_psi_min_argmin),
        ("<psi>_max", fmt_number(s.bracket_psi_max)),
        ("<psi>_max node", str(s.bracket_psi_max_argmin)),
    ]


def md_table(header, rows) -> str:
    esc = lambda cell: str(cell).replace("|", "\\|")
    lines = ["| " + " | ".join(esc(h) for h in header) + " |"]
    lines.append("|" + "|".join("---" for _ in header) + "|")
    lines += ["| " + " | ".join(esc(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def render_table(report: MeasureReport, fmt: str = "md") -> str:
    if fmt == "json":
        return json.dumps(asdict(report), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(ROW_HEADER)
        writer.writerows(_row_cells(r) for r in report.rows)
        writer.writerow([])
        writer.writerow(("quantity", "value"))
        writer.writerows(_summary_cells(report))
        return buf.getvalue()
    if fmt == "md":
        out = [f"## {report.network}\n", md_table(ROW_HEADER, [_row_cells(r) for r in report.rows]), ""]
        out.append(md_table(("quantity", "value"), _summary_cells(report)))
        out += [f"\n> {note}\n" for note in report.notes]
        return "\n".join(out)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def report_from_json(text: str) -> MeasureReport:
    data = json.loads(text)
    data["rows"] = [StateRow(**row) for row in data["rows"]]
    data["summary"] = Summary(**data["summary"])
    return MeasureReport(**data)
