"""Built-in reference graphs used by the test suite and the documentation.

Two fixtures are provided:

* ``dgs16``: a 16-vertex graph whose walk matrix has the invariant-factor
  chain [1 x8, 2 x6, 6, 2b] with b squarefree.  The half-determinant rule
  fails on it (3 divides the odd part twice) but the d_n rule certifies it,
  which makes it the canonical regression case for the certifier.

* ``mate9``: a 9-vertex graph that is NOT determined by its generalized
  spectrum.  A level-3 regular rational orthogonal matrix conjugating it to
  a non-isomorphic mate is included, so the recovery and audit code can be
  exercised against a known ground truth.
"""

from __future__ import annotations

from .graphcore import Graph

DGS16_ADJACENCY = (
    (0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 0, 0, 1, 0, 1),
    (1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1),
    (0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1),
    (1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1),
    (0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1),
    (1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1),
    (1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1),
    (0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1),
    (1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0),
    (0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 1),
    (0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1),
    (0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0),
)

MATE9_ADJACENCY = (
    (0, 1, 0, 1, 0, 0, 1, 1, 1),
    (1, 0, 1, 0, 1, 0, 0, 1, 1),
    (0, 1, 0, 1, 1, 1, 0, 1, 1),
    (1, 0, 1, 0, 1, 0, 0, 0, 0),
    (0, 1, 1, 1, 0, 1, 1, 1, 0),
    (0, 0, 1, 0, 1, 0, 1, 0, 0),
    (1, 0, 0, 0, 1, 1, 0, 1, 1),
    (1, 1, 1, 0, 1, 0, 1, 0, 1),
    (1, 1, 1, 0, 0, 0, 1, 1, 0),
)

# Numerators of the level-3 conjugating matrix Q = MATE9_Q_NUMERATORS / 3.
MATE9_Q_LEVEL = 3
MATE9_Q_NUMERATORS = (
    (1, -1, 0, 2, 1, 0, -1, 1, 0),
    (-1, 1, 0, 1, 2, 0, 1, -1, 0),
    (1, -1, 0, -1, 1, 0, 2, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 3),
    (1, 2, 0, -1, 1, 0, -1, 1, 0),
    (-1, 1, 0, 1, -1, 0, 1, 2, 0),
    (0, 0, 3, 0, 0, 0, 0, 0, 0),
    (2, 1, 0, 1, -1, 0, 1, -1, 0),
    (0, 0, 0, 0, 0, 3, 0, 0, 0),
)


def dgs16_graph() -> Graph:
    return Graph.from_adjacency(DGS16_ADJACENCY)


def mate9_graph() -> Graph:
    return Graph.from_adjacency(MATE9_ADJACENCY)


def mate9_mate_graph() -> Graph:
    """The non-isomorphic generalized-cospectral mate: Q^T A Q rebuilt exactly.

    With N the numerator matrix and l the level, the conjugate is
    N^T A N / l**2; every entry must come out as 0 or 1 for the fixture to
    be coherent, so the division is checked.
    """
    a = MATE9_ADJACENCY
    nmat = MATE9_Q_NUMERATORS
    n = len(a)
    an = [[sum(a[i][k] * nmat[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    raw = [[sum(nmat[k][i] * an[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    lvl2 = MATE9_Q_LEVEL**2
    out = []
    for row in raw:
        if any(v % lvl2 for v in row):
            raise AssertionError("conjugated fixture matrix is not integral")
        out.append([v // lvl2 for v in row])
    return Graph.from_adjacency(out)


def write_fixture_files(directory) -> list[str]:
    """Materialize the fixtures as CLI-ready input files; returns the paths."""
    import os

    from .cospec import RationalOrthogonal, emit_pair_fixture
    from .graphcore import emit_adjacency, emit_graph6

    os.makedirs(directory, exist_ok=True)
    q = RationalOrthogonal(9, MATE9_Q_NUMERATORS, MATE9_Q_LEVEL)
    files = {
        "dgs16.g6": emit_graph6(dgs16_graph()) + "\n",
        "mate9.g6": emit_graph6(mate9_graph()) + "\n",
        "mate9.adj": emit_adjacency(mate9_graph()),
        "mate9_pair.txt": emit_pair_fixture(mate9_graph(), mate9_mate_graph(), q),
    }
    written = []
    for name, content in files.items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
        written.append(path)
    return written
