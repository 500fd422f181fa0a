from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ggmtoric.errors import SizeLimit
from ggmtoric.fixtures import FIG1_ADJUGATE_TEXT, named_graph
from ggmtoric.graph import Graph, complete_graph, random_block_graph, random_connected_graph
from ggmtoric.poly import Polynomial, kvar, parse_polynomial, sigma
from ggmtoric.symlinalg import (
    adjugate_entry, check_shortest_path_term, concentration_matrix, covariance_at,
    jones_expansion_check, model_dimension, rho_star_check, rho_star_substitute,
    rho_star_vanishes, shortest_path_monomial, symbolic_determinant,
)


def sympy_adjugate(g: Graph):
    syms = {}
    rows = []
    for i in g.vertices:
        row = []
        for j in g.vertices:
            if i == j or g.has_edge(i, j):
                a, b = min(i, j), max(i, j)
                row.append(syms.setdefault((a, b), sympy.Symbol(f"k{a}_{b}")))
            else:
                row.append(0)
        rows.append(row)
    return sympy.Matrix(rows).adjugate(), syms


def to_sympy(p: Polynomial, syms):
    expr = 0
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in m:
            term *= syms[(v.i, v.j)] ** e
        expr += term
    return sympy.expand(expr)


def test_fig1_entries_agree_with_sympy_adjugate():
    g = named_graph("fig1")
    adj, syms = sympy_adjugate(g)
    for i, j in itertools.combinations_with_replacement(g.vertices, 2):
        assert sympy.expand(adj[i - 1, j - 1] - to_sympy(adjugate_entry(g, i, j), syms)) == 0


def test_fig1_entries_frozen():
    # independently recomputed with sympy's adjugate; f12 differs from the displayed text
    g = named_graph("fig1")
    for (i, j), text in FIG1_ADJUGATE_TEXT.items():
        if (i, j) != (1, 2):
            assert adjugate_entry(g, i, j) == parse_polynomial(text)
    assert adjugate_entry(g, 1, 2) == parse_polynomial("-k12*k33*k44 + k12*k34^2 + k13*k23*k44")


@pytest.mark.property
@given(st.integers(2, 5), st.integers(0, 10 ** 6))
def test_adjugate_matches_sympy_on_random_graphs(n, seed):
    g = random_connected_graph(n, random.Random(seed), 0.4)
    adj, syms = sympy_adjugate(g)
    i, j = random.Random(seed).sample(list(g.vertices) * 2, 2)
    assert sympy.expand(adj[i - 1, j - 1] - to_sympy(adjugate_entry(g, i, j), syms)) == 0


@pytest.mark.property
@given(st.integers(2, 6), st.integers(0, 10 ** 6))
def test_shortest_path_term_leads_on_block_graphs(n, seed):
    g = random_block_graph(n, random.Random(seed))
    for i, j in itertools.combinations_with_replacement(g.vertices, 2):
        assert check_shortest_path_term(g, i, j)


@pytest.mark.property
@given(st.integers(2, 5), st.integers(0, 10 ** 6))
def test_path_expansion_equals_cofactor(n, seed):
    g = random_connected_graph(n, random.Random(seed), 0.5)
    for i, j in itertools.combinations_with_replacement(g.vertices, 2):
        assert jones_expansion_check(g, i, j)


def test_shortest_path_monomial_signs():
    g = named_graph("fig1")
    assert shortest_path_monomial(g, 2, 4) == (1, parse_polynomial("k23*k34*k11").monomials()[0])
    assert shortest_path_monomial(g, 1, 2)[0] == -1


def test_symbolic_determinant_of_identity_pattern():
    g = Graph(3)
    assert symbolic_determinant(concentration_matrix(g)) == parse_polynomial("k11*k22*k33")


def test_pullback_kills_the_minors():
    g = named_graph("fig1")
    for text in ("s13*s34 - s14*s33", "s23*s34 - s24*s33", "s14*s23 - s13*s24"):
        assert not rho_star_substitute(parse_polynomial(text), g)
    assert rho_star_substitute(parse_polynomial("s12"), g) == adjugate_entry(g, 1, 2)


def test_pullback_guard():
    with pytest.raises(SizeLimit):
        rho_star_substitute(parse_polynomial("s11^4"), named_graph("fig1"))
    with pytest.raises(SizeLimit):
        rho_star_substitute(parse_polynomial("s11"), named_graph("ex14"))
    with pytest.raises(SizeLimit):
        adjugate_entry(complete_graph(9), 1, 2)


def test_random_evaluation_verdicts():
    assert not rho_star_vanishes(parse_polynomial("s11 - 1"), Graph(1))
    assert not rho_star_vanishes(parse_polynomial("s13"), named_graph("fig1"))
    assert rho_star_vanishes(parse_polynomial("s14*s23 - s13*s24"), named_graph("fig1"))
    report = rho_star_check(parse_polynomial("s13*s34 - s14*s33"), named_graph("fig1"), trials=16, seed=5)
    assert report.verdict and report.degree_bound == 8 and report.sample_set_size == 21
    assert report.error_bound == Fraction(8, 21) ** 16
    bad = rho_star_check(parse_polynomial("s12*s34 - s13*s24"), named_graph("fig1"))
    assert not bad.verdict and bad.witness_value != 0 and bad.trials == 1


def test_random_evaluation_is_deterministic():
    p = parse_polynomial("s12*s34 - s14*s23")
    g = named_graph("fig1")
    assert rho_star_check(p, g, seed=3).to_json() == rho_star_check(p, g, seed=3).to_json()


def test_covariance_is_an_inverse():
    g = named_graph("fig4")
    point = {v: 1 for v in [kvar(i, j) for i, j in g.sorted_edges()]}
    point.update({kvar(i, i): 10 for i in g.vertices})
    cov, det = covariance_at(g, point)
    k = [[point.get(kvar(min(i, j), max(i, j)), 0) for j in g.vertices] for i in g.vertices]
    prod = [[sum(k[i][t] * cov[t][j] for t in range(g.n)) for j in range(g.n)] for i in range(g.n)]
    assert prod == [[int(i == j) for j in range(g.n)] for i in range(g.n)]


@pytest.mark.property
@given(st.integers(1, 7), st.integers(0, 10 ** 6))
def test_dimension_of_block_models(n, seed):
    g = random_block_graph(n, random.Random(seed))
    assert model_dimension(g) == n + len(g.edges)


def test_dimension_of_fixtures():
    assert model_dimension(named_graph("fig1")) == 8
    assert model_dimension(named_graph("fig2")) == 14
    assert model_dimension(complete_graph(4)) == 10
