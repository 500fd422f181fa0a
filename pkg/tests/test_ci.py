from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ggmtoric import ci
from ggmtoric.errors import DegreeTooLow, NotConnected
from ggmtoric.fixtures import (
    EX14_GENERATORS_TEXT, FIG1_GENERATORS_TEXT, FIG2_CUBICS_TEXT, FIG3_M_TEXT, named_graph, polys,
)
from ggmtoric.graph import Graph, Separation, one_clique_partitions, random_block_graph
from ggmtoric.maps import build_matrix, monomial_to_vector
from ggmtoric.poly import parse_polynomial
from ggmtoric.symlinalg import rho_star_check, symbolic_determinant

block_graphs = st.builds(lambda n, s: random_block_graph(n, random.Random(s)), st.integers(2, 6), st.integers(0, 10 ** 6))


def as_set(gens):
    return {p.sign_normalised() for p in gens}


def test_minors_of_a_small_matrix():
    out = list(ci.minors([1, 2], [3, 4], 2))
    assert as_set(out) == as_set(polys(["s13*s24 - s14*s23"]))
    # overlapping index sets give symmetric entries
    assert as_set(ci.minors([1, 2], [2, 3], 2)) == as_set(polys(["s12*s23 - s13*s22"]))


def test_fig1_generators():
    gens = ci.ci_generators_1clique(named_graph("fig1"))
    assert as_set(gens) == as_set(polys(FIG1_GENERATORS_TEXT))
    assert all(p.degree == 2 for p in gens)


def test_ex14_generators_and_partitions():
    g = named_graph("ex14")
    assert len(one_clique_partitions(g)) == 4
    gens = ci.ci_generators_1clique(g)
    listed = as_set(polys(EX14_GENERATORS_TEXT))
    assert len(listed) == 34  # one displayed line repeats another up to sign
    assert as_set(gens) == listed
    assert ci.graded_piece_dim(gens, 2) == ci.graded_piece_dim(polys(EX14_GENERATORS_TEXT), 2, 6) == 31


def test_provenance_records_the_partition():
    gens = ci.ci_generators_1clique(named_graph("fig1"))
    tags = gens.to_json()["generators"]
    assert all(set(t["provenance"]) >= {"A", "B", "C"} for t in tags)
    assert all(t["provenance"]["C"] == [3] for t in tags)


def test_complete_graphs_have_no_generators():
    for n in range(1, 6):
        assert len(ci.ci_generators_1clique(named_graph(f"K{n}"))) == 0
        assert len(ci.ci_generators_full(named_graph(f"K{n}"))) == 0


def test_full_mode_contains_3x3_minors():
    g = named_graph("path4")
    full = ci.ci_generators_full(g, 2)
    det = symbolic_determinant(ci.sigma_submatrix([1, 2, 3], [2, 3, 4]))
    assert det.sign_normalised() in as_set(full)
    assert max(p.degree for p in full) == 3
    assert max(p.degree for p in ci.ci_generators_full(named_graph("fig3"), 2)) == 3


def test_bad_separation_rejected():
    g = named_graph("fig1")
    with pytest.raises(ValueError):
        ci.partition_minors(g, Separation(frozenset({1}), frozenset({2}), frozenset({3, 4})))


def test_graded_dims():
    assert ci.graded_piece_dim([], 2, 4) == 0
    assert ci.graded_piece_dim(polys(FIG1_GENERATORS_TEXT), 2, 4) == 3
    # degree 3: 3 quadrics times 10 variables, less the two linear syzygies of a 2x3 minor ideal
    assert ci.graded_piece_dim(polys(FIG1_GENERATORS_TEXT), 3, 4) == 28
    with pytest.raises(DegreeTooLow):
        ci.graded_piece_dim(polys(FIG1_GENERATORS_TEXT), 1, 4)


def test_graded_membership_examples():
    gens = polys(FIG1_GENERATORS_TEXT)
    assert ci.graded_membership(parse_polynomial("s13*s34 - s14*s33"), gens, 4)
    assert ci.graded_membership(parse_polynomial("s11*s13*s34 - s11*s14*s33 + s22*s23*s34 - s22*s24*s33"), gens, 4)
    assert not ci.graded_membership(parse_polynomial("s12*s34 - s13*s24"), gens, 4)
    assert ci.graded_membership(parse_polynomial("0"), gens, 4)


@pytest.mark.property
@given(block_graphs)
def test_graded_dim_is_monotone_in_the_generators(g):
    gens = list(ci.ci_generators_1clique(g))
    if not gens:
        return
    half = gens[: len(gens) // 2]
    assert ci.graded_piece_dim(half, 2, g.n) <= ci.graded_piece_dim(gens, 2, g.n)
    assert ci.graded_piece_dim(gens, 2, g.n) <= ci.graded_piece_dim(gens, 3, g.n) or g.n == 1


@pytest.mark.property
@settings(max_examples=20)
@given(block_graphs)
def test_ci_generators_vanish_on_the_model(g):
    for p in ci.ci_generators_1clique(g):
        assert rho_star_check(p, g, trials=4).verdict


@pytest.mark.property
@given(block_graphs)
def test_degree2_piece_matches_the_toric_kernel(g):
    m = build_matrix(g, "psi")
    cols = len(m.cols)
    images = set()
    count = 0
    for a, b in itertools.combinations_with_replacement(range(cols), 2):
        u = [0] * cols
        u[a] += 1
        u[b] += 1
        images.add(m.apply(u))
        count += 1
    gens = ci.ci_generators_1clique(g)
    assert ci.graded_piece_dim(gens, 2, g.n) == count - len(images)


@pytest.mark.property
@given(block_graphs)
def test_sagbi_homogeneity_on_block_graphs(g):
    assert ci.sagbi_homogeneity_check(g)


def test_degree2_theorem_verdicts():
    v = ci.check_degree2_theorem(named_graph("fig1"))
    assert v.status == "CONFIRMED"
    assert v.evidence["model_dimension"] == 8
    v = ci.check_degree2_theorem(named_graph("fig2"))
    assert v.status == "NOT_BLOCK" and v.evidence["non_clique_block"] == [3, 4, 5, 6]
    assert ci.check_degree2_theorem(named_graph("K5")).status == "CONFIRMED"
    assert ci.check_degree2_theorem(Graph(1)).status == "CONFIRMED"
    with pytest.raises(NotConnected):
        ci.check_degree2_theorem(Graph.from_edges(3, [(1, 2)]))


def test_cubic_one_is_in_the_minor_ideal():
    """Certificate: expand det of rows {1,2,4}, cols {4,5,6} along its first two rows."""
    g = named_graph("fig2")
    r_g = ci.matrix_minor_set([([1, 2, 3], [3, 4, 5, 6])], g.n)
    cubic1, cubic2 = polys(FIG2_CUBICS_TEXT)
    det = symbolic_determinant(ci.sigma_submatrix([1, 2, 4], [4, 5, 6]))
    assert det.sign_normalised() == cubic1.sign_normalised()
    assert ci.graded_membership(cubic1, r_g)
    assert not ci.graded_membership(cubic2, r_g)


@pytest.fixture(scope="module")
def suite():
    return ci.counterexample_suite(trials=8, seed=3)


def test_counterexample_suite_parts(suite):
    a, b, c = suite["a"], suite["b"], suite["c"]
    assert all(x["vanishes"] and x["symbolic_zero"] for x in a["cubics"])
    assert a["P_G2_vanishes_on_G2"] and a["P_G2_vanishes_on_G"]
    assert a["G2_codimension"] == 1 and a["G2_vanishing_dims_below_3"] == [0, 0]
    assert b["dims"] == [5, 4] and b["ok"]
    assert c["m_vanishes"] and c["m_in_CI"] and not c["m_in_low_degree_part"] and c["ok"]
    assert not c["m_in_CI_max_c_2"]
    # the first cubic already lies in the minor ideal
    assert [x["in_R_G"] for x in a["cubics"]] == [True, False]
    assert not a["ok"] and not suite["ok"]


def test_m_has_twenty_terms_of_degree_four():
    m = parse_polynomial(FIG3_M_TEXT)
    assert len(m) == 20 and m.degree == 4


def test_export_cas_script():
    g = named_graph("fig1")
    text = ci.export_cas(g, ci.ci_generators_1clique(g))
    assert "eliminate" in text and "I == P" in text
    assert text.count("s_(") > 10
