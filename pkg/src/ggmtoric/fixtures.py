"""Named graphs and polynomial data transcribed from the worked examples.

Polynomials are kept as text exactly as displayed in the source so that
comparisons test the transcription, not a cleaned-up version of it.
"""

from __future__ import annotations

import re

from .errors import GraphFormatError
from .graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from .poly import Polynomial, parse_polynomial

GRAPHS: dict[str, tuple[int, list[tuple[int, int]]]] = {
    "fig1": (4, [(1, 2), (1, 3), (2, 3), (3, 4)]),
    "fig2": (6, [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]),
    "fig3": (7, [(1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7)]),
    "fig4": (5, [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5)]),
    "ex14": (6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6)]),
    "path4": (4, [(1, 2), (2, 3), (3, 4)]),
}

_FAMILY = re.compile(r"^(K|path|cycle|star)(\d+)$")


def named_graph(name: str) -> Graph:
    """Fixture by name, or one of the families K<n>, path<n>, cycle<n>, star<n> (leaf count)."""
    if name in GRAPHS:
        n, edges = GRAPHS[name]
        return Graph.from_edges(n, edges)
    m = _FAMILY.match(name)
    if not m:
        raise GraphFormatError(f"unknown graph name {name!r}")
    kind, k = m.group(1), int(m.group(2))
    return {"K": complete_graph, "path": path_graph, "cycle": cycle_graph, "star": star_graph}[kind](k)


def fixture_names() -> list[str]:
    return sorted(GRAPHS)


# Adjugate entries of the 4-vertex example, as displayed (the f_12 line included).
FIG1_ADJUGATE_TEXT = {
    (1, 1): "k22*k33*k44 - k22*k34^2 - k23^2*k44",
    (2, 2): "k11*k33*k44 - k11*k34^2 - k13^2*k44",
    (3, 3): "k11*k22*k44 - k44*k12^2",
    (4, 4): "k11*k22*k33 - k11*k23^2 - k12^2*k33 + k12*k13*k23 + k13*k12*k23 - k13^2*k22",
    (1, 2): "-k12*k33*k44 - k12*k34^2 - k23*k13*k44",
    (1, 3): "-k13*k22*k44 + k12*k23*k44",
    (1, 4): "k13*k34*k22 - k12*k23*k34",
    (2, 3): "-k23*k11*k44 + k12*k13*k44",
    (2, 4): "k23*k34*k11 - k34*k13*k12",
    (3, 4): "-k34*k11*k22 + k34*k12^2",
}

# Underlined (shortest path) term of each displayed f_ij, with its displayed sign.
FIG1_UNDERLINED_TEXT = {
    (1, 1): "k22*k33*k44",
    (2, 2): "k11*k33*k44",
    (3, 3): "k11*k22*k44",
    (4, 4): "k11*k22*k33",
    (1, 2): "-k12*k33*k44",
    (1, 3): "-k13*k22*k44",
    (1, 4): "k13*k34*k22",
    (2, 3): "-k23*k11*k44",
    (2, 4): "k23*k34*k11",
    (3, 4): "-k34*k11*k22",
}

FIG1_GENERATORS_TEXT = [
    "s13*s34 - s14*s33",
    "s23*s34 - s24*s33",
    "s14*s23 - s13*s24",
]

FIG1_PHI_MATRIX = [
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 1, 0, 0, 0, 1, 1, 1],
    [1, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 1, 1, 0, 1, 1, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
]

FIG1_PSI_MATRIX = [
    [2, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 2, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 2, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 2],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
]

# The 35 displayed generators for the six-vertex block graph with four partitions.
EX14_GENERATORS_TEXT = [
    "s13*s24-s14*s23", "s13*s25-s15*s23", "s13*s26-s16*s23", "s14*s25-s15*s24", "s23*s34-s24*s33",
    "s23*s35-s25*s33", "s23*s36-s26*s33", "s24*s35-s25*s34", "s24*s36-s26*s34", "s25*s36-s26*s35",
    "s13*s34-s14*s33", "s13*s35-s15*s33", "s13*s36-s16*s33", "s14*s35-s15*s34", "s14*s36-s16*s34",
    "s15*s36-s16*s35", "s14*s45-s15*s44", "s14*s46-s16*s44", "s15*s46-s16*s45", "s24*s45-s25*s44",
    "s24*s46-s26*s44", "s25*s46-s26*s45", "s34*s45-s35*s44", "s34*s46-s36*s44", "s35*s46-s36*s45",
    "s14*s56-s16*s45", "s24*s56-s26*s45", "s34*s56-s36*s45", "s44*s56-s46*s45", "s14*s56-s15*s46",
    "s24*s56-s25*s46", "s34*s56-s35*s46", "s44*s56-s45*s46", "s14*s26-s16*s24", "s15*s26-s16*s25",
]

EX14_PARTITIONS = [
    ({1, 2}, {4, 5, 6}, {3}),
    ({1, 2, 3}, {5, 6}, {4}),
    ({1, 2, 3, 5}, {6}, {4}),
    ({1, 2, 3, 6}, {5}, {4}),
]

# The 12 quadrics listed for the five-vertex graph with a single central vertex.
FIG4_GENERATORS_TEXT = [
    "s34*s35-s33*s45", "s24*s35-s23*s45", "s14*s35-s13*s45", "s25*s34-s23*s45",
    "s15*s34-s13*s45", "s25*s33-s23*s35", "s24*s33-s23*s34", "s15*s33-s13*s35",
    "s14*s33-s13*s34", "s15*s24-s14*s25", "s15*s23-s13*s25", "s14*s23-s13*s24",
]

FIG4_REMOVED = ["s12", "s11", "s22", "s44", "s55"]

# The two cubics beyond the minors and the pieces for the six-vertex counterexample.
FIG2_CUBICS_TEXT = [
    "s14*s25*s46 - s14*s26*s45 - s15*s24*s46 + s15*s26*s44 + s16*s24*s45 - s16*s25*s44",
    "s24*s45*s56 - s24*s46*s55 - s25*s44*s56 + s25*s46*s45 + s26*s44*s55 - s26*s45^2",
]
FIG2_SPLIT = ({1, 2}, {4, 5, 6}, {3})
FIG2_G2_VERTICES = [3, 4, 5, 6]
FIG2_PG2_ROWS_COLS = ([3, 4, 5], [4, 5, 6])

# Row and column index sets of the matrices displayed for the path on four vertices.
PATH4_RG_MATRICES = [([1, 2], [2, 3]), ([1, 2, 3], [3, 4])]
PATH4_PG_MATRICES = [([1, 2], [2, 3, 4]), ([1, 2, 3], [3, 4])]
PATH4_DIMS = (5, 4)

FIG3_M_TEXT = (
    "s17^2*s23*s56 - s13*s17*s27*s56 - s12*s17*s37*s56 + s11*s27*s37*s56 - s16*s17*s23*s57"
    " + s13*s16*s27*s57 + s12*s16*s37*s57 - s11*s26*s37*s57 - s15*s17*s23*s67 + s13*s15*s27*s67"
    " + s12*s15*s37*s67 - s11*s25*s37*s67 - s12*s13*s57*s67 + s11*s23*s57*s67 + s15*s16*s23*s77"
    " - s13*s15*s26*s77 - s12*s15*s36*s77 + s11*s25*s36*s77 + s12*s13*s56*s77 - s11*s23*s56*s77"
)


def polys(texts: list[str]) -> list[Polynomial]:
    return [parse_polynomial(t) for t in texts]
