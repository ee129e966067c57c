import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

import polycox as px


def coxeter(names, rows):
    return px.CoxeterMatrix(tuple(names), tuple(tuple(r) for r in rows))


MATRICES = {
    "A1": coxeter("s", [[1]]),
    "A1xA1": coxeter("rs", [[1, 2], [2, 1]]),
    "A2": coxeter("st", [[1, 3], [3, 1]]),
    "B2": coxeter("st", [[1, 4], [4, 1]]),
    "I5": coxeter("st", [[1, 5], [5, 1]]),
    "A1^3": coxeter("rst", [[1, 2, 2], [2, 1, 2], [2, 2, 1]]),
    "A2xA1": coxeter("rst", [[1, 3, 2], [3, 1, 2], [2, 2, 1]]),
    "A3": coxeter("rst", [[1, 3, 2], [3, 1, 3], [2, 3, 1]]),
    "B3": coxeter("rst", [[1, 4, 2], [4, 1, 3], [2, 3, 1]]),
    "H3": coxeter("rst", [[1, 5, 2], [5, 1, 3], [2, 3, 1]]),
    "I5xA1": coxeter("rst", [[1, 5, 2], [5, 1, 2], [2, 2, 1]]),
    "Atilde2": coxeter("rst", [[1, 3, 3], [3, 1, 3], [3, 3, 1]]),
    "A4": coxeter("abcd", [[1, 3, 2, 2], [3, 1, 3, 2], [2, 3, 1, 3], [2, 2, 3, 1]]),
}


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = px.enumerate_group(MATRICES[name])
        return cache[name]

    return get


@pytest.fixture(scope="session")
def b3plus():
    """The positive braid presentation (s,t,a; ta=>as, st=>a)."""
    p = px.Polygraph2(
        ["s", "t", "a"],
        [px.Rule("alpha", (1, 2), (2, 0)), px.Rule("beta", (0, 1), (2,))],
    )
    order = px.deglex_from_names(p, ["t", "s", "a"])
    return p, order


@pytest.fixture(scope="session")
def b3plus_completed(b3plus):
    p, order = b3plus
    return px.homotopical_complete(p, order), order
