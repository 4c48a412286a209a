import itertools

import pytest

import oracle
from irrlab.net import uniform_joint
from irrlab.zoo import NODE_RULES, network

DOUBLETS = [f"{a}-{b}" for a, b in itertools.product(NODE_RULES, repeat=2)]

# independent wiring of the larger networks: (thresholds, edges)
_FULL4 = [(s, d) for s in range(4) for d in range(4)]
ORACLE_WIRING = {
    "SHIFT": ((1, 1, 1, 1), [(i, (i + 1) % 4) for i in range(4)]),
    "4422": ((4, 4, 2, 2), _FULL4),
    "4322": ((4, 3, 2, 2), _FULL4),
    "4321": ((4, 3, 2, 1), _FULL4),
    "ANDTRIPLET": ((2, 2, 2), [(s, d) for s in range(3) for d in range(3) if s != d]),
    "ISO-ANDTRIPLET": ((2, 2, 2), [(k, k) for k in range(3)] + [((k - 1) % 3, k) for k in range(3)]),
    "AND-ZERO+KEEP": ((2, 99, 1), [(0, 0), (1, 0), (2, 2)]),
    "2X AND-ZERO": ((2, 99, 2, 99), [(0, 0), (1, 0), (2, 2), (3, 2)]),
}
LARGER = list(ORACLE_WIRING)
CORPUS = DOUBLETS + LARGER


def oracle_map(name: str) -> dict:
    if name.upper() in ORACLE_WIRING:
        thresholds, edges = ORACLE_WIRING[name.upper()]
        return oracle.threshold_map(len(thresholds), thresholds, edges)
    return oracle.doublet(name)


def oracle_joint(name: str) -> dict:
    return oracle.joint(oracle_map(name))


def bits(state: tuple) -> str:
    return "".join(map(str, state))


@pytest.fixture(scope="session")
def joints():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = uniform_joint(network(name))
        return cache[name]

    return get


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
