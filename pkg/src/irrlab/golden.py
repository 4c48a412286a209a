"""Published reference tables, stored exactly as printed.

Values are strings so the printed precision survives: it sets the
comparison tolerance. ``None`` marks an unreachable state (printed as a dash).
"""

STATES2 = ("00", "01", "10", "11")

# per-state tables: network -> quantity -> one entry per output state
FIG1 = {
    "OR-GET": {
        "Pr(y)": ("1/4", None, "1/4", "1/2"),
        "ei(y)": ("2.00", None, "2.00", "1.00"),
        "phi(y)": ("1.00", None, "2.58", "0.58"),
    },
    "OR-XOR": {
        "Pr(y)": ("1/4", None, "1/4", "1/2"),
        "ei(y)": ("2.00", None, "2.00", "1.00"),
        "phi(y)": ("1.00", None, "1.58", "1.08"),
    },
}
FIG1_SUMMARY = {
    "OR-GET": {"H(X)": "2", "I(X;Y)": "1.5", "<phi>": "1.189"},
    "OR-XOR": {"H(X)": "2", "I(X;Y)": "1.5", "<phi>": "1.189"},
}

FIG2 = {
    "AND-ZERO": {
        "Pr(y)": ("3/4", None, "1/4", None),
        "ei(y)": ("0.42", None, "2.00", None),
        "phi(y)": ("0.33", None, "1.00", None),
    },
    "AND-AND": {
        "Pr(y)": ("3/4", None, None, "1/4"),
        "ei(y)": ("0.42", None, None, "2.00"),
        "phi(y)": ("0.25", None, None, "0.00"),
    },
}
FIG2_SUMMARY = {
    "AND-ZERO": {"H(X)": "2", "I(X;Y)": "0.811", "<phi>": "0.5"},
    "AND-AND": {"H(X)": "2", "I(X;Y)": "0.811", "<phi>": "0.189"},
}

FIG3_COLUMNS = ("I(X;Y)", "min phi(y)", "max phi(y)", "<phi>")
FIG3 = {
    "SHIFT": ("4.000", "2.000", "2.000", "2.000"),
    "4422": ("1.198", "0.000", "0.673", "0.424"),
    "4322": ("1.805", "0.322", "1.586", "1.367"),
    "4321": ("2.031", "0.322", "1.682", "1.651"),
}

BRACKET_COLUMNS = ("I(X;Y)", "<phi>", "<psi>_min", "<psi>_max")
FIG4 = {
    "AND-ZERO+KEEP": ("1.81", "0", "0", "0.50"),
    "2x AND-ZERO": ("1.62", "0", "0", "0.50"),
    "KEEP-KEEP": ("2.00", "0", "0", "1.00"),
    "GET-GET": ("2.00", "2.00", "0", "1.00"),
    "ANDtriplet": ("2.00", "2.00", "0.16", "0.75"),
    "iso-ANDtriplet": ("2.00", "1.07", "0.16", "0.75"),
    "AND-ZERO": ("0.81", "0.50", "0.19", "0.50"),
    "AND-AND": ("0.81", "0.19", "0.19", "0.50"),
    "SHIFT": ("4.00", "2.00", "0", "1.00"),
    "4422": ("1.20", "0.42", "0.33", "0.50"),
    "4322": ("1.81", "1.37", "0.68", "0.88"),
    "4321": ("2.03", "1.65", "0.78", "1.00"),
}

FIG6 = {
    "ZERO-ZERO": ("0", "0", "0", "0"),
    "KEEP-ZERO": ("1.0", "0", "0", "0"),
    "KEEP-KEEP": ("2.0", "0", "0", "1.0"),
    "GET-ZERO": ("1.0", "1.0", "0", "0"),
    "GET-KEEP": ("1.0", "0", "0", "0"),
    "GET-GET": ("2.0", "2.0", "0", "1.0"),
    "AND-ZERO": ("0.811", "0.5", "0.189", "0.5"),
    "AND-KEEP": ("1.5", "0.189", "0", "0.5"),
    "AND-GET": ("1.5", "1.189", "0", "0.5"),
    "AND-AND": ("0.811", "0.189", "0.189", "0.5"),
    "AND-XOR": ("1.5", "1.189", "0.5", "1.0"),
    "XOR-ZERO": ("1.0", "1.0", "1.0", "1.0"),
    "XOR-KEEP": ("2.0", "1.0", "0", "1.0"),
    "XOR-GET": ("2.0", "2.0", "0", "1.0"),
    "XOR-AND": ("1.5", "1.189", "0.5", "1.0"),
    "XOR-XOR": ("1.0", "1.0", "1.0", "1.0"),
}

# printed transition tables: image of inputs 00, 01, 10, 11
TRANSITIONS = {
    "OR-GET": ("00", "10", "11", "11"),
    "OR-XOR": ("00", "11", "11", "10"),
    "AND-ZERO": ("00", "00", "00", "10"),
    "AND-AND": ("00", "00", "00", "11"),
    "ZERO-ZERO": ("00", "00", "00", "00"),
    "KEEP-ZERO": ("00", "00", "10", "10"),
    "GET-ZERO": ("00", "10", "00", "10"),
    "KEEP-KEEP": ("00", "01", "10", "11"),
    "GET-KEEP": ("00", "11", "00", "11"),
    "GET-GET": ("00", "10", "01", "11"),
    "AND-XOR": ("00", "01", "01", "10"),
    "XOR-ZERO": ("00", "10", "10", "00"),
    "XOR-KEEP": ("00", "11", "10", "01"),
    "XOR-GET": ("00", "10", "11", "01"),
    "XOR-XOR": ("00", "11", "11", "00"),
    "XOR-AND": ("00", "10", "10", "01"),
}

# AND-GET iterated t times, as printed; columns t = 1..4
COMPOSITION = {
    1: ("AND-GET", ("00", "00", "01", "11")),
    2: ("AND-AND", ("00", "00", "00", "11")),
    3: ("AND-ZERO", ("00", "00", "00", "10")),
    4: ("ZERO-ZERO", ("00", "00", "00", "00")),
}

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig6")


def tolerance(printed: str) -> float:
    """Three-decimal entries get 0.0005; everything coarser gets 0.005."""
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return 0.0005 if decimals >= 3 else 0.005
