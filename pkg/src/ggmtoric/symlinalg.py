"""Symbolic concentration matrices, adjugate entries and the pullback to the k-ring.

``f_ij`` denotes det(K) times the (i, j) entry of K^-1, i.e. the signed
cofactor, expanded as a polynomial in the structural entries of K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import linalg
from .errors import DegenerateSampling, SizeLimit
from .graph import Graph, path_edges, shortest_path
from .poly import Monomial, Polynomial, Var, kvar, sigma, sum_polynomials

MAX_SYMBOLIC_N = 8


def concentration_entry(g: Graph, i: int, j: int) -> Polynomial:
    if i == j or g.has_edge(i, j):
        return Polynomial.var(kvar(i, j))
    return Polynomial()


def concentration_matrix(g: Graph) -> list[list[Polynomial]]:
    return [[concentration_entry(g, i, j) for j in g.vertices] for i in g.vertices]


def structural_variables(g: Graph) -> list[Var]:
    """Diagonal entries k_11..k_nn followed by edge entries in lex order."""
    return [kvar(i, i) for i in g.vertices] + [kvar(i, j) for i, j in g.sorted_edges()]


def symbolic_determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows, memoised on the set of remaining columns."""
    n = len(matrix)
    memo: dict[tuple[int, ...], Polynomial] = {}

    def det(cols: tuple[int, ...]) -> Polynomial:
        if not cols:
            return Polynomial.constant(1)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        r = n - len(cols)
        parts = []
        for pos, c in enumerate(cols):
            entry = matrix[r][c]
            if not entry:
                continue
            sub = det(cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            parts.append(term if pos % 2 == 0 else -term)
        out = sum_polynomials(parts)
        memo[cols] = out
        return out

    return det(tuple(range(n)))


def principal_minor(g: Graph, keep: list[int]) -> Polynomial:
    """det of K restricted to rows and columns ``keep`` (det of 0x0 is 1)."""
    sub = [[concentration_entry(g, i, j) for j in keep] for i in keep]
    return symbolic_determinant(sub)


@lru_cache(maxsize=4096)
def adjugate_entry(g: Graph, i: int, j: int, max_n: int = MAX_SYMBOLIC_N) -> Polynomial:
    if g.n > max_n:
        raise SizeLimit(f"symbolic adjugate limited to n <= {max_n} (got {g.n})")
    if i > j:
        i, j = j, i
    rows = [r for r in g.vertices if r != j]
    cols = [c for c in g.vertices if c != i]
    minor = symbolic_determinant([[concentration_entry(g, r, c) for c in cols] for r in rows])
    return minor if (i + j) % 2 == 0 else -minor


def diagonal_count(m: Monomial) -> int:
    return sum(e for v, e in m if v.kind == "k" and v.i == v.j)


def shortest_path_monomial(g: Graph, i: int, j: int) -> tuple[int, Monomial]:
    path = shortest_path(g, i, j)
    on_path = set(path)
    factors = [kvar(a, b) for a, b in path_edges(path)]
    factors += [kvar(t, t) for t in g.vertices if t not in on_path]
    sign = -1 if (len(path) - 1) % 2 else 1
    return sign, Monomial.of(*factors)


def check_shortest_path_term(g: Graph, i: int, j: int) -> bool:
    sign, m = shortest_path_monomial(g, i, j)
    f = adjugate_entry(g, i, j)
    if f.coefficient(m) != sign:
        return False
    top = diagonal_count(m)
    return all(diagonal_count(other) < top for other in f.terms if other != m)


def simple_paths(g: Graph, x: int, y: int) -> Iterator[list[int]]:
    if x == y:
        yield [x]
        return
    stack = [(x, [x])]
    while stack:
        v, path = stack.pop()
        for w in sorted(g.adjacency[v], reverse=True):
            if w in path:
                continue
            if w == y:
                yield path + [w]
            else:
                stack.append((w, path + [w]))


def path_expansion(g: Graph, x: int, y: int, max_n: int = MAX_SYMBOLIC_N) -> Polynomial:
    """Sum over simple x-y paths of signed edge weights times the complementary principal minor."""
    if g.n > max_n:
        raise SizeLimit(f"path expansion limited to n <= {max_n}")
    parts = []
    for path in simple_paths(g, x, y):
        weight = Polynomial.constant(-1 if len(path) % 2 == 0 else 1)
        for a, b in path_edges(path):
            weight = weight * Polynomial.var(kvar(a, b))
        rest = [t for t in g.vertices if t not in path]
        parts.append(weight * principal_minor(g, rest))
    return sum_polynomials(parts)


def jones_expansion_check(g: Graph, x: int, y: int) -> bool:
    return path_expansion(g, x, y) == adjugate_entry(g, x, y)


def rho_star_substitute(p: Polynomial, g: Graph, max_degree: int = 3, max_n: int = 5) -> Polynomial:
    """Replace each sigma_ij by f_ij and expand."""
    if p.degree > max_degree or g.n > max_n:
        raise SizeLimit(
            f"symbolic pullback guard exceeded (degree {p.degree} > {max_degree} or n {g.n} > {max_n});"
            " use rho_star_vanishes"
        )
    images = {}
    for v in p.variables():
        if v.kind != "s":
            raise ValueError(f"pullback expects sigma variables, got {v}")
        images[v] = adjugate_entry(g, v.i, v.j)
    return p.substitute(images)


# -- exact random evaluation ---------------------------------------------------

def sample_radius(degree: int) -> int:
    return max(10, degree)


def random_point(g: Graph, rng: random.Random, radius: int = 10) -> dict[Var, int]:
    """Integer values for every structural entry; diagonals drawn from [n*radius, 2*n*radius]."""
    point = {}
    for i in g.vertices:
        point[kvar(i, i)] = rng.randint(g.n * radius, 2 * g.n * radius)
    for i, j in g.sorted_edges():
        point[kvar(i, j)] = rng.randint(-radius, radius)
    return point


def numeric_concentration(g: Graph, point: dict[Var, int]) -> list[list[int]]:
    return [
        [point[kvar(i, j)] if (i == j or g.has_edge(i, j)) else 0 for j in g.vertices]
        for i in g.vertices
    ]


def covariance_at(g: Graph, point: dict[Var, int]) -> tuple[list[list[Fraction]], Fraction]:
    """Exact K^-1 and det K at ``point``; ZeroDivisionError if K is singular."""
    return linalg.solve_inverse(numeric_concentration(g, point))


def _nonsingular_point(g, rng, radius, retries):
    for _ in range(retries):
        point = random_point(g, rng, radius)
        try:
            inv, det = covariance_at(g, point)
        except ZeroDivisionError:
            continue
        return point, inv, det
    raise DegenerateSampling(f"det(K) = 0 at {retries} consecutive sample points")


def sigma_assignment(g: Graph, cov: list[list[Fraction]]) -> dict[Var, Fraction]:
    return {sigma(i, j): cov[i - 1][j - 1] for i in g.vertices for j in g.vertices if i <= j}


@dataclass
class VanishingReport:
    verdict: bool
    trials: int
    seed: int
    degree_bound: int
    sample_set_size: int
    error_bound: Fraction
    witness_point: dict | None = None
    witness_value: Fraction | None = None
    values: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
            "sample_set_size": self.sample_set_size,
            "error_bound": str(self.error_bound),
        }
        if self.witness_point is not None:
            out["witness_point"] = {str(v): x for v, x in sorted(self.witness_point.items())}
            out["witness_value"] = str(self.witness_value)
        return out


def rho_star_check(p: Polynomial, g: Graph, trials: int = 16, seed: int = 0,
                   retries: int = 100) -> VanishingReport:
    """Evaluate ``p`` at Sigma = K^-1 for random rational K with the sparsity of ``g``.

    A nonzero value is an exact certificate that ``p`` is not in the
    vanishing ideal.  When every trial vanishes, ``error_bound`` bounds the
    probability that a nonzero ``p`` slipped through: clearing denominators
    turns p(K^-1) into a polynomial of degree at most deg(p)*n in the
    structural entries, so the Schwartz-Zippel lemma applies per trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    deg = max(p.degree, 0) * g.n
    radius = sample_radius(deg)
    size = min(2 * radius + 1, g.n * radius + 1)
    values = []
    for t in range(trials):
        rng = random.Random(f"{seed}:{t}")
        point, inv, _ = _nonsingular_point(g, rng, radius, retries)
        val = p.evaluate(sigma_assignment(g, inv))
        values.append(val)
        if val != 0:
            return VanishingReport(False, t + 1, seed, deg, size, Fraction(0), point, Fraction(val), values)
    per_trial = min(Fraction(1), Fraction(deg, size))
    return VanishingReport(True, trials, seed, deg, size, per_trial ** trials, values=values)


def rho_star_vanishes(p: Polynomial, g: Graph, trials: int = 16, seed: int = 0) -> bool:
    return rho_star_check(p, g, trials, seed).verdict


def jacobian_rank(g: Graph, point: dict[Var, int]) -> int:
    """Rank of d(K^-1)/dk at ``point``, using dSigma/dk_e = -Sigma E_e Sigma."""
    cov, _ = covariance_at(g, point)
    pairs = [(p, q) for p in range(g.n) for q in range(p, g.n)]
    rows = []
    for v in structural_variables(g):
        i, j = v.i - 1, v.j - 1
        if i == j:
            row = [cov[p][i] * cov[i][q] for p, q in pairs]
        else:
            row = [cov[p][i] * cov[j][q] + cov[p][j] * cov[i][q] for p, q in pairs]
        rows.append(row)
    return linalg.rank(rows)


def model_dimension(g: Graph, seed: int = 0, points: int = 2) -> int:
    """Exact Jacobian rank of k -> K^-1, maximised over ``points`` random points."""
    best = 0
    for t in range(points):
        rng = random.Random(f"dim:{seed}:{t}")
        point, _, _ = _nonsingular_point(g, rng, 10, 100)
        best = max(best, jacobian_rank(g, point))
    return best
