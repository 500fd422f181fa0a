"""Conditional independence ideals and exact graded linear algebra over the sigma ring.

Membership and dimension are computed one degree at a time: the degree-d
piece of an ideal is spanned by monomial multiples of its generators of
degree <= d.  Every minor of Sigma is homogeneous for the multigrading
deg(sigma_ij) = e_i + e_j, so the linear algebra splits into independent
blocks, one per multidegree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import fixtures
from .errors import DegreeTooLow, NotConnected
from .graph import (
    Graph, Separation, is_block_graph, non_clique_blocks, one_clique_partitions, separations,
)
from .linalg import EchelonBasis
from .maps import binomial_parts, build_matrix, monomial_to_vector
from .poly import Monomial, Polynomial, sigma
from .symlinalg import (
    model_dimension, rho_star_check, rho_star_substitute, symbolic_determinant,
)
from .toric import verify_markov


@dataclass
class GeneratorSet:
    n: int
    generators: list[Polynomial] = field(default_factory=list)
    provenance: list[dict] = field(default_factory=list)
    _seen: set = field(default_factory=set, repr=False)

    def add(self, p: Polynomial, tag: dict) -> bool:
        """Append ``p`` unless it or its negative is already present."""
        if not p:
            return False
        key = p.sign_normalised()
        if key in self._seen:
            return False
        self._seen.add(key)
        self.generators.append(p)
        self.provenance.append(tag)
        return True

    def extend(self, other: "GeneratorSet") -> None:
        for p, tag in zip(other.generators, other.provenance):
            self.add(p, tag)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.generators)

    def up_to_degree(self, d: int) -> "GeneratorSet":
        out = GeneratorSet(self.n)
        for p, tag in zip(self.generators, self.provenance):
            if p.degree <= d:
                out.add(p, tag)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": len(self),
            "generators": [
                {"text": p.to_text(), "degree": p.degree, "provenance": tag}
                for p, tag in zip(self.generators, self.provenance)
            ],
        }


def generator_set(polys: Iterable[Polynomial], n: int, tag: dict | None = None) -> GeneratorSet:
    gs = GeneratorSet(n)
    for p in polys:
        gs.add(p, dict(tag or {"source": "given"}))
    return gs


def sigma_submatrix(rows: Sequence[int], cols: Sequence[int]) -> list[list[Polynomial]]:
    return [[Polynomial.var(sigma(min(r, c), max(r, c))) for c in cols] for r in rows]


def minors(rows: Sequence[int], cols: Sequence[int], size: int) -> Iterator[Polynomial]:
    """All size x size minors of Sigma_{rows, cols}, rows and columns taken in increasing order."""
    rows, cols = sorted(rows), sorted(cols)
    for rs in itertools.combinations(rows, size):
        for cs in itertools.combinations(cols, size):
            det = symbolic_determinant(sigma_submatrix(rs, cs))
            if det:
                yield det


def _check_separation(g: Graph, s) -> None:
    a, b, c = set(s.A), set(s.B), set(s.C)
    if not a or not b or a & b or a & c or b & c:
        raise ValueError("A and B must be nonempty and A, B, C pairwise disjoint")
    if not (a | b | c) <= set(g.vertices):
        raise ValueError("separation mentions vertices outside the graph")
    for comp in g.components(removed=c):
        if comp & a and comp & b:
            raise ValueError(f"{sorted(c)} does not separate {sorted(a)} from {sorted(b)}")


def partition_minors(g: Graph, s: Separation) -> GeneratorSet:
    _check_separation(g, s)
    rows = sorted(set(s.A) | set(s.C))
    cols = sorted(set(s.B) | set(s.C))
    tag = {"A": sorted(s.A), "B": sorted(s.B), "C": sorted(s.C)}
    return generator_set(minors(rows, cols, len(s.C) + 1), g.n, tag)


def ci_generators_1clique(g: Graph) -> GeneratorSet:
    out = GeneratorSet(g.n)
    for part in one_clique_partitions(g):
        out.extend(partition_minors(g, part))
    return out


def ci_generators_full(g: Graph, max_c: int | None = None) -> GeneratorSet:
    if max_c is None:
        max_c = max(g.n - 2, 0)
    out = GeneratorSet(g.n)
    for sep in separations(g, max_c):
        out.extend(partition_minors(g, sep))
    return out


# -- graded linear algebra -----------------------------------------------------

def multidegree(m: Monomial, n: int) -> tuple[int, ...]:
    deg = [0] * n
    for v, e in m:
        deg[v.i - 1] += e
        deg[v.j - 1] += e
    return tuple(deg)


def _multihomogeneous(p: Polynomial, n: int) -> bool:
    return len({multidegree(m, n) for m in p.terms}) <= 1


def _parts(p: Polynomial, n: int) -> dict[tuple[int, ...], Polynomial]:
    acc: dict[tuple[int, ...], dict] = {}
    for m, c in p.terms.items():
        acc.setdefault(multidegree(m, n), {})[m] = c
    return {k: Polynomial(v) for k, v in acc.items()}


def monomials_of_multidegree(delta: Sequence[int]) -> Iterator[Monomial]:
    """Sigma-monomials whose multidegree is ``delta``."""
    delta = list(delta)
    n = len(delta)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def rec(t: int, rem: list[int], acc: dict):
        if not any(rem):
            yield Monomial(acc)
            return
        if t == len(pairs):
            return
        i, j = pairs[t]
        # every pair touching a vertex below i has already been passed
        if any(rem[a] for a in range(i)):
            return
        cap = rem[i] // 2 if i == j else min(rem[i], rem[j])
        v = sigma(i + 1, j + 1)
        for e in range(cap, -1, -1):
            rem[i] -= e
            rem[j] -= e
            if e:
                acc[v] = e
            yield from rec(t + 1, rem, acc)
            acc.pop(v, None)
            rem[i] += e
            rem[j] += e

    yield from rec(0, delta, {})


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    variables = [sigma(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    for combo in itertools.combinations_with_replacement(variables, d):
        yield Monomial.of(*combo)


def _dominated(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _block_basis(gens: Sequence[Polynomial], n: int, delta: tuple[int, ...]) -> EchelonBasis:
    eb = EchelonBasis()
    d = sum(delta) // 2
    for g in gens:
        if g.degree > d:
            continue
        for part_deg, part in _parts(g, n).items():
            if not _dominated(part_deg, delta):
                continue
            rest = tuple(x - y for x, y in zip(delta, part_deg))
            if sum(rest) % 2:
                continue
            for mult in monomials_of_multidegree(rest):
                eb.add((part * Polynomial.monomial(mult)).terms)
    return eb


def _all_multihomogeneous(gens: Iterable[Polynomial], n: int) -> bool:
    return all(_multihomogeneous(g, n) for g in gens)


def _gens_list(gens) -> tuple[list[Polynomial], int]:
    if isinstance(gens, GeneratorSet):
        return list(gens.generators), gens.n
    gens = list(gens)
    n = max((max(v.j for v in p.variables()) for p in gens if p.variables()), default=0)
    return gens, n


def graded_piece_dim(gens, d: int, n: int | None = None) -> int:
    """dim_Q of the degree-d piece of the ideal generated by ``gens``."""
    glist, gn = _gens_list(gens)
    n = n or gn
    if any(g.degree > d for g in glist):
        raise DegreeTooLow(f"a generator has degree above {d}")
    if not glist:
        return 0
    if _all_multihomogeneous(glist, n):
        blocks: dict[tuple[int, ...], list[Polynomial]] = {}
        for g in glist:
            gdeg = multidegree(next(iter(g.terms)), n)
            for mult in monomials_of_degree(n, d - g.degree):
                key = tuple(x + y for x, y in zip(gdeg, multidegree(mult, n)))
                blocks.setdefault(key, []).append(g * Polynomial.monomial(mult))
        total = 0
        for rows in blocks.values():
            eb = EchelonBasis()
            for row in rows:
                eb.add(row.terms)
            total += eb.rank
        return total
    eb = EchelonBasis()
    for g in glist:
        for mult in monomials_of_degree(n, d - g.degree):
            eb.add((g * Polynomial.monomial(mult)).terms)
    return eb.rank


def graded_membership(p: Polynomial, gens, n: int | None = None) -> bool:
    """Is ``p`` in the ideal generated by ``gens``?  Exact, one degree at a time.

    Generators of degree above that of a component of ``p`` cannot
    contribute to it and are ignored.
    """
    glist, gn = _gens_list(gens)
    pn = max((v.j for v in p.variables()), default=0)
    n = max(n or 0, gn, pn)
    if not p:
        return True
    if _all_multihomogeneous(glist, n):
        for delta, part in _parts(p, n).items():
            eb = _block_basis(glist, n, delta)
            if not eb.contains(part.terms):
                return False
        return True
    by_degree: dict[int, dict] = {}
    for m, c in p.terms.items():
        by_degree.setdefault(m.degree, {})[m] = c
    for d, terms in by_degree.items():
        eb = EchelonBasis()
        for g in glist:
            if g.degree <= d:
                for mult in monomials_of_degree(n, d - g.degree):
                    eb.add((g * Polynomial.monomial(mult)).terms)
        if not eb.contains(terms):
            return False
    return True


def same_graded_piece(gens1, gens2, d: int, n: int | None = None) -> bool:
    """Do the two generating sets span the same degree-d piece?"""
    g1, n1 = _gens_list(gens1)
    g2, n2 = _gens_list(gens2)
    n = n or max(n1, n2)
    a = graded_piece_dim(g1, d, n)
    b = graded_piece_dim(g2, d, n)
    return a == b == graded_piece_dim(g1 + g2, d, n)


# -- SAGBI homogeneity ---------------------------------------------------------

def sagbi_homogeneity_report(g: Graph, gens: GeneratorSet | None = None) -> list[dict]:
    if gens is None:
        gens = ci_generators_1clique(g) if g.n > 1 else GeneratorSet(g.n)
    if not len(gens):
        return []
    mphi = build_matrix(g, "phi")
    diag_rows = range(g.n)
    out = []
    for p in gens:
        pos, neg = binomial_parts(p)
        iu = mphi.apply(monomial_to_vector(pos, g.n))
        iv = mphi.apply(monomial_to_vector(neg, g.n))
        out.append({
            "generator": p.to_text(),
            "phi_equal": iu == iv,
            "weight": [sum(iu[r] for r in diag_rows), sum(iv[r] for r in diag_rows)],
        })
    return out


def sagbi_homogeneity_check(g: Graph, gens: GeneratorSet | None = None) -> bool:
    return all(r["phi_equal"] and r["weight"][0] == r["weight"][1] for r in sagbi_homogeneity_report(g, gens))


# -- the degree-two theorem ----------------------------------------------------

@dataclass
class Verdict:
    status: str
    graph: dict
    evidence: dict

    def to_json(self) -> dict:
        return {"status": self.status, "graph": self.graph, "evidence": self.evidence}


def check_degree2_theorem(g: Graph, degree_bound: int = 3, trials: int = 16, seed: int = 0) -> Verdict:
    if not g.is_connected():
        raise NotConnected("the graph must be connected")
    if not is_block_graph(g):
        bad = non_clique_blocks(g)[0]
        return Verdict("NOT_BLOCK", g.to_json(), {"non_clique_block": sorted(bad)})
    gens = ci_generators_1clique(g) if g.n > 1 else GeneratorSet(g.n)
    markov = verify_markov(g, gens.generators, degree_bound)
    dim = model_dimension(g, seed=seed)
    expected = g.n + len(g.edges)
    rank_psi = build_matrix(g, "psi").rank()
    vanish = [rho_star_check(p, g, trials, seed).verdict for p in gens]
    sagbi = sagbi_homogeneity_check(g, gens)
    evidence = {
        "generators": len(gens),
        "markov": markov.to_json(),
        "model_dimension": dim,
        "n_plus_edges": expected,
        "rank_M_psi": rank_psi,
        "all_vanish": all(vanish),
        "sagbi_homogeneous": sagbi,
    }
    ok = markov.all_connected and dim == expected == rank_psi and all(vanish) and sagbi
    return Verdict("CONFIRMED" if ok else "INCONSISTENT", g.to_json(), evidence)


# -- counterexamples -----------------------------------------------------------

def matrix_minor_set(matrices: Sequence[tuple[Sequence[int], Sequence[int]]], n: int, size: int = 2) -> GeneratorSet:
    out = GeneratorSet(n)
    for rows, cols in matrices:
        for p in minors(rows, cols, size):
            out.add(p, {"rows": list(rows), "cols": list(cols)})
    return out


def vanishing_degree_dim(g: Graph, d: int, seed: int = 0) -> int:
    """Dimension of the degree-d piece of the vanishing ideal, by exact evaluation.

    The monomials of degree d are evaluated at more random covariance
    matrices of the model than there are monomials; the kernel of that
    evaluation matrix is the degree-d piece with high probability and
    never smaller than it.
    """
    import random
    from .symlinalg import _nonsingular_point, sigma_assignment

    mons = list(monomials_of_degree(g.n, d))
    rows = []
    for t in range(len(mons) + 8):
        _, inv, _ = _nonsingular_point(g, random.Random(f"vdim:{seed}:{t}"), 10, 100)
        point = sigma_assignment(g, inv)
        rows.append([Polynomial.monomial(m).evaluate(point) for m in mons])
    from .linalg import rank
    return len(mons) - rank(rows)


def counterexample_suite(trials: int = 16, seed: int = 0, symbolic: bool = True) -> dict:
    report: dict = {}

    # (a) six vertices, two triangles and a four-cycle with a chord
    g = fixtures.named_graph("fig2")
    a_set, b_set, c_set = fixtures.FIG2_SPLIT
    rows_cols = fixtures.FIG2_PG2_ROWS_COLS
    pg2 = symbolic_determinant(sigma_submatrix(*rows_cols))
    r_g = matrix_minor_set([(sorted(a_set | c_set), sorted(b_set | c_set))], g.n)
    r_g.add(pg2, {"rows": rows_cols[0], "cols": rows_cols[1], "role": "P_G2"})
    g2 = g.induced(fixtures.FIG2_G2_VERTICES)
    relabel = {v: t + 1 for t, v in enumerate(fixtures.FIG2_G2_VERTICES)}
    pg2_local = pg2.substitute({
        v: Polynomial.var(sigma(relabel[v.i], relabel[v.j])) for v in pg2.variables()
    })
    g2_dim = model_dimension(g2, seed=seed)
    g2_vars = g2.n * (g2.n + 1) // 2
    cubics = []
    for text in fixtures.FIG2_CUBICS_TEXT:
        p = fixtures.parse_polynomial(text)
        entry = {
            "polynomial": p.to_text(),
            "vanishes": rho_star_check(p, g, trials, seed).verdict,
            "in_R_G": graded_membership(p, r_g),
        }
        if symbolic:
            entry["symbolic_zero"] = not rho_star_substitute(p, g, max_degree=3, max_n=6)
        cubics.append(entry)
    report["a"] = {
        "graph": g.to_json(),
        "R_G_generators": len(r_g),
        "P_G2": pg2.to_text(),
        "P_G2_vanishes_on_G2": rho_star_check(pg2_local, g2, trials, seed).verdict,
        "P_G2_vanishes_on_G": rho_star_check(pg2, g, trials, seed).verdict,
        "G2_model_dimension": g2_dim,
        "G2_sigma_variables": g2_vars,
        "G2_codimension": g2_vars - g2_dim,
        "G2_vanishing_dims_below_3": [vanishing_degree_dim(g2, d, seed) for d in (1, 2)],
        "cubics": cubics,
        "ok": all(c["vanishes"] and not c["in_R_G"] for c in cubics),
    }

    # (b) the path on four vertices
    p4 = fixtures.named_graph("path4")
    ci = ci_generators_1clique(p4)
    rg = matrix_minor_set(fixtures.PATH4_RG_MATRICES, p4.n)
    pg = matrix_minor_set(fixtures.PATH4_PG_MATRICES, p4.n)
    dims = (graded_piece_dim(ci, 2), graded_piece_dim(rg, 2))
    report["b"] = {
        "graph": p4.to_json(),
        "dims": list(dims),
        "displayed_P_G_dim": graded_piece_dim(pg, 2),
        "ci_equals_displayed_P_G": same_graded_piece(ci, pg, 2),
        "ok": dims == fixtures.PATH4_DIMS,
    }

    # (c) two four-cycles glued at a vertex, and the degree four generator m
    g3 = fixtures.named_graph("fig3")
    m = fixtures.parse_polynomial(fixtures.FIG3_M_TEXT)
    full = ci_generators_full(g3).up_to_degree(4)
    low = full.up_to_degree(3)
    c_report = {
        "graph": g3.to_json(),
        "m_terms": len(m),
        "m_vanishes": rho_star_check(m, g3, trials, seed).verdict,
        "m_in_CI": graded_membership(m, full),
        "m_in_low_degree_part": graded_membership(m, low),
        "m_in_CI_max_c_2": graded_membership(m, ci_generators_full(g3, 2)),
    }
    c_report["ok"] = c_report["m_vanishes"] and c_report["m_in_CI"] and not c_report["m_in_low_degree_part"]
    report["c"] = c_report
    report["ok"] = report["a"]["ok"] and report["b"]["ok"] and c_report["ok"]
    return report


# -- computer algebra export ---------------------------------------------------

def export_cas(g: Graph, gens: GeneratorSet) -> str:
    """Macaulay2 script comparing the generated ideal with the eliminated vanishing ideal."""
    n = g.n
    svars = [f"s_({i},{j})" for i in range(1, n + 1) for j in range(i, n + 1)]
    kvars = [f"k_({i},{i})" for i in range(1, n + 1)] + [f"k_({i},{j})" for i, j in g.sorted_edges()]

    def m2(p: Polynomial) -> str:
        text = p.to_text()
        for i in range(n, 0, -1):
            for j in range(n, i - 1, -1):
                text = text.replace(str(sigma(i, j)), f"s_({i},{j})")
        return text

    def entry(prefix, i, j, present=True):
        a, b = min(i, j), max(i, j)
        return f"{prefix}_({a},{b})" if present else "0"

    sig = "matrix{" + ",".join(
        "{" + ",".join(entry("s", i, j) for j in range(1, n + 1)) + "}" for i in range(1, n + 1)) + "}"
    kmat = "matrix{" + ",".join(
        "{" + ",".join(entry("k", i, j, i == j or g.has_edge(i, j)) for j in range(1, n + 1)) + "}"
        for i in range(1, n + 1)) + "}"
    lines = [
        f"-- graph on {n} vertices, edges {[list(e) for e in g.sorted_edges()]}",
        f"R = QQ[{','.join(kvars + svars)}, MonomialOrder => Eliminate {len(kvars)}];",
        f"S = {sig};",
        f"K = {kmat};",
        f"P = eliminate({{{','.join(kvars)}}}, ideal(S*K - id_(R^{n})));",
        "I = ideal(" + ",".join(m2(p) for p in gens) + ");" if len(gens) else "I = ideal(0_R);",
        "print(I == P)",
    ]
    return "\n".join(lines) + "\n"
