"""Shared fixtures: the worked example formulas phi1..phi14 and their
published model sets."""

import pytest

from aggdom import Domain, parse_formula

PHI_TEXT = {
    1: "p ecnf 5 3\n1 2 -3 0\n-1 3 4 0\n-2 3 -5 0\n",
    2: "p ecnf 5 3\n-1 2 3 4 0\n1 -2 -3 0\n4 5 0\n",
    3: "p ecnf 5 3\n-1 2 3 0\n1 -2 -3 0\n4 5 0\n",
    4: "p ecnf 4 4\n1 -2 0\n-1 2 0\n-2 -3 0\n-1 3 4 0\n",
    5: "p ecnf 4 3\n1 -2 0\n2 -3 0\n-1 3 4 0\n",
    6: "p ecnf 5 3\n-1 2 3 4 0\n1 -2 -3 0\n-4 5 0\n",
    7: "p ecnf 3 2\n-1 2 3 0\n1 -2 -3 0\n",
    8: "p ecnf 4 2\n-1 2 3 4 0\n-2 -3 -4 0\n",
    9: "p ecnf 6 4\n-1 2 3 0\n1 -2 -3 0\n-4 5 6 0\n4 -5 -6 0\n",
    10: "p ecnf 3 2\n-1 2 3 0\n1 2 -3 0\n",
    11: "p ecnf 3 4\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n-1 -2 -3 0\n",
    12: "p ecnf 3 3\n-1 2 0\n2 -3 0\n-1 -2 3 0\n",
    13: "p ecnf 4 2\n-1 2 0\n2 3 4 0\n",
    14: "p ecnf 3 1\nx 1 2 3 0\n",
}


@pytest.fixture(scope="session")
def phi():
    return {i: parse_formula(text) for i, text in PHI_TEXT.items()}


def cube(n):
    return [tuple((p >> (n - v)) & 1 for v in range(1, n + 1)) for p in range(1 << n)]


MOD7 = [a for a in cube(3) if a not in {(1, 0, 0), (0, 1, 1)}]
MOD9 = [a + b for a in MOD7 for b in MOD7]
MOD10 = [a for a in cube(3) if a not in {(0, 0, 1), (1, 0, 0)}]
MOD11 = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
MOD12 = [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 1, 1)]
MOD13 = [a for a in cube(4) if a[:2] != (1, 0) and a != (0, 0, 0, 0)]
MOD14 = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]


@pytest.fixture(scope="session")
def mod():
    return {
        7: Domain(3, MOD7),
        9: Domain(6, MOD9),
        10: Domain(3, MOD10),
        11: Domain(3, MOD11),
        12: Domain(3, MOD12),
        13: Domain(4, MOD13),
        14: Domain(3, MOD14),
    }
