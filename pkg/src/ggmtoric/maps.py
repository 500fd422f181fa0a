"""The shortest path map psi and the initial term map phi of a block graph.

Both maps send sigma_ij to a monomial read off the unique shortest path
between i and j; they are stored as integer exponent matrices whose columns
are indexed by sigma_ij (i <= j, lex order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import ColumnMismatch, DimensionMismatch, NotCentral, NotInKernel
from .graph import Graph, contract_to_center, path_edges, shortest_path
from .poly import Monomial, Polynomial, Var, avar, kvar, sigma


def sigma_columns(n: int) -> list[Var]:
    return [sigma(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def psi_image(g: Graph, v: Var) -> Monomial:
    i, j = v.i, v.j
    if i == j:
        return Monomial({avar(i): 2})
    path = shortest_path(g, i, j)
    return Monomial.of(avar(i), avar(j), *(kvar(a, b) for a, b in path_edges(path)))


def phi_image(g: Graph, v: Var) -> Monomial:
    path = shortest_path(g, v.i, v.j)
    on_path = set(path)
    factors = [kvar(a, b) for a, b in path_edges(path)]
    factors += [kvar(t, t) for t in g.vertices if t not in on_path]
    return Monomial.of(*factors)


def image_of_monomial(g: Graph, m: Monomial, which: str = "psi") -> Monomial:
    f = psi_image if which == "psi" else phi_image
    out = Monomial()
    for v, e in m:
        out = out * f(g, v) ** e
    return out


@dataclass(frozen=True)
class ExponentMatrix:
    rows: tuple[Var, ...]
    cols: tuple[Var, ...]
    data: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def column(self, t: int) -> tuple[int, ...]:
        return tuple(row[t] for row in self.data)

    def row(self, v: Var) -> tuple[int, ...]:
        return self.data[self.rows.index(v)]

    def apply(self, u: Sequence[int]) -> tuple[int, ...]:
        if len(u) != len(self.cols):
            raise DimensionMismatch(f"vector of length {len(u)} for {len(self.cols)} columns")
        return tuple(sum(a * x for a, x in zip(row, u) if x) for row in self.data)

    def rank(self) -> int:
        return linalg.rank(self.data)

    def to_json(self) -> dict:
        return {"rows": [str(v) for v in self.rows], "cols": [str(v) for v in self.cols],
                "data": [list(r) for r in self.data]}


def build_matrix(g: Graph, which: str = "psi") -> ExponentMatrix:
    if which not in ("psi", "phi"):
        raise ValueError("which must be 'psi' or 'phi'")
    edge_rows = [kvar(i, j) for i, j in g.sorted_edges()]
    if which == "psi":
        rows = [avar(i) for i in g.vertices] + edge_rows
    else:
        rows = [kvar(i, i) for i in g.vertices] + edge_rows
    cols = sigma_columns(g.n)
    f = psi_image if which == "psi" else phi_image
    images = [dict(f(g, c)) for c in cols]
    data = tuple(tuple(img.get(r, 0) for img in images) for r in rows)
    return ExponentMatrix(tuple(rows), tuple(cols), data)


def row_space_equal(m1: ExponentMatrix, m2: ExponentMatrix) -> bool:
    if m1.cols != m2.cols:
        raise ColumnMismatch("matrices have different column labels")
    r1, r2 = m1.rank(), m2.rank()
    return r1 == r2 == linalg.rank(list(m1.data) + list(m2.data))


def maps_share_kernel(g: Graph) -> bool:
    """Whether ker(psi) = ker(phi), via row spaces; the one-vertex graph is taken as true."""
    if g.n == 1:
        return True
    return row_space_equal(build_matrix(g, "psi"), build_matrix(g, "phi"))


def kii_relation_check(g: Graph) -> bool:
    """Row identity 2*k_ii(phi) = sum_{j != i} a_j(psi) - sum_{s ~ i} k_is(psi), for every i."""
    mpsi = build_matrix(g, "psi")
    mphi = build_matrix(g, "phi")
    width = len(mpsi.cols)
    for i in g.vertices:
        lhs = [2 * x for x in mphi.row(kvar(i, i))]
        rhs = [0] * width
        for j in g.vertices:
            if j != i:
                rhs = [x + y for x, y in zip(rhs, mpsi.row(avar(j)))]
        for s in g.adjacency[i]:
            rhs = [x - y for x, y in zip(rhs, mpsi.row(kvar(i, s)))]
        if lhs != rhs:
            return False
    return True


def monomial_to_vector(m: Monomial, n: int) -> tuple[int, ...]:
    cols = sigma_columns(n)
    d = dict(m)
    extra = set(d) - set(cols)
    if extra:
        raise DimensionMismatch(f"variables {sorted(map(str, extra))} outside the sigma columns")
    return tuple(d.get(c, 0) for c in cols)


def vector_to_monomial(u: Sequence[int], n: int) -> Monomial:
    return Monomial({c: e for c, e in zip(sigma_columns(n), u) if e})


def _as_vector(x, n: int) -> tuple[int, ...]:
    if isinstance(x, Monomial):
        return monomial_to_vector(x, n)
    x = tuple(x)
    if len(x) != n * (n + 1) // 2:
        raise DimensionMismatch(f"expected {n * (n + 1) // 2} coordinates, got {len(x)}")
    if any(e < 0 for e in x):
        raise ValueError("exponent vectors must be nonnegative")
    return x


def kernel_member(g: Graph, u, v) -> bool:
    """True iff psi(sigma^u) = psi(sigma^v), i.e. sigma^u - sigma^v lies in the shortest path ideal."""
    mpsi = build_matrix(g, "psi")
    return mpsi.apply(_as_vector(u, g.n)) == mpsi.apply(_as_vector(v, g.n))


def binomial_parts(p: Polynomial) -> tuple[Monomial, Monomial]:
    """Split a pure binomial m1 - m2 into (m1, m2)."""
    items = list(p.items())
    if len(items) != 2 or sorted(c for _, c in items) != [-1, 1]:
        raise ValueError(f"not a pure binomial: {p}")
    pos = next(m for m, c in items if c == 1)
    neg = next(m for m, c in items if c == -1)
    return pos, neg


def restrict_through(g: Graph, c: int, u: Sequence[int]) -> tuple[int, ...]:
    """Keep the coordinates whose shortest path passes through ``c``."""
    return tuple(
        e if e and c in shortest_path(g, col.i, col.j) else 0
        for col, e in zip(sigma_columns(g.n), u)
    )


def contract_monomial(rho: dict[int, int], u: Sequence[int], n: int) -> Monomial:
    out = {}
    for col, e in zip(sigma_columns(n), u):
        if e:
            w = sigma(rho[col.i], rho[col.j])
            out[w] = out.get(w, 0) + e
    return Monomial(out)


def contraction_check(g: Graph, c: int, u, v) -> bool:
    """Images under psi of the contracted through-c parts of u and v agree."""
    uu, vv = _as_vector(u, g.n), _as_vector(v, g.n)
    if not kernel_member(g, uu, vv):
        raise NotInKernel("sigma^u - sigma^v is not in the shortest path ideal")
    rho, star = contract_to_center(g, c)
    mu = contract_monomial(rho, restrict_through(g, c, uu), g.n)
    mv = contract_monomial(rho, restrict_through(g, c, vv), g.n)
    return image_of_monomial(star, mu) == image_of_monomial(star, mv)


__all__ = [
    "ExponentMatrix", "NotCentral", "binomial_parts", "build_matrix", "contraction_check",
    "image_of_monomial", "kernel_member", "kii_relation_check", "maps_share_kernel",
    "monomial_to_vector", "phi_image", "psi_image", "row_space_equal", "sigma_columns",
    "vector_to_monomial",
]
