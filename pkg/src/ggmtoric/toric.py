"""Fibers, Markov-basis checks, circular embeddings and binomial Groebner bases."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .errors import MultipleCenters, NotCentral, NotInKernel, SizeLimit
from .graph import Graph, biconnected_components, central_vertices, shortest_path
from .maps import (
    ExponentMatrix, binomial_parts, build_matrix, monomial_to_vector, sigma_columns,
    vector_to_monomial,
)
from .poly import Monomial, Polynomial, TermOrder, Var, sigma


# -- moves and fibers -----------------------------------------------------------

@dataclass(frozen=True)
class Move:
    vec: tuple[int, ...]

    def __post_init__(self):
        if not any(self.vec):
            raise ValueError("a move must be nonzero")

    @property
    def plus(self) -> tuple[int, ...]:
        return tuple(max(x, 0) for x in self.vec)

    @property
    def minus(self) -> tuple[int, ...]:
        return tuple(max(-x, 0) for x in self.vec)

    @classmethod
    def from_binomial(cls, p: Polynomial, n: int) -> "Move":
        pos, neg = binomial_parts(p)
        u, v = monomial_to_vector(pos, n), monomial_to_vector(neg, n)
        return cls(tuple(a - b for a, b in zip(u, v)))

    def to_binomial(self, n: int) -> Polynomial:
        return Polynomial.monomial(vector_to_monomial(self.plus, n)) - Polynomial.monomial(
            vector_to_monomial(self.minus, n))


@dataclass(frozen=True)
class Fiber:
    b: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.elements)


def enumerate_fiber(m: ExponentMatrix, b: Sequence[int]) -> Fiber:
    """All u >= 0 with M u = b, by depth-first search over the columns."""
    b = tuple(b)
    if len(b) != len(m.rows):
        raise ValueError(f"target has length {len(b)}, matrix has {len(m.rows)} rows")
    if any(x < 0 for x in b):
        raise ValueError("fiber target must be nonnegative")
    cols = [m.column(t) for t in range(len(m.cols))]
    if any(not any(c) for c in cols):
        raise ValueError("matrix has a zero column; fibers would be infinite")
    ncols, nrows = len(cols), len(b)
    # rows still coverable by columns t.. (for pruning)
    cover = [set() for _ in range(ncols + 1)]
    for t in range(ncols - 1, -1, -1):
        cover[t] = cover[t + 1] | {r for r in range(nrows) if cols[t][r]}

    out = []
    u = [0] * ncols

    def dfs(t: int, residual: list[int]):
        if not any(residual):
            out.append(tuple(u))
            return
        if t == ncols:
            return
        if any(residual[r] and r not in cover[t] for r in range(nrows)):
            return
        col = cols[t]
        cap = min(residual[r] // col[r] for r in range(nrows) if col[r])
        for x in range(cap, -1, -1):
            u[t] = x
            dfs(t + 1, [res - x * a for res, a in zip(residual, col)])
        u[t] = 0

    dfs(0, list(b))
    return Fiber(b, tuple(sorted(out)))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def count(self) -> int:
        return len({self.find(x) for x in self.parent})


def fiber_components(fiber: Fiber, moves: Iterable[Move]) -> int:
    elements = set(fiber.elements)
    uf = _UnionFind(fiber.elements)
    steps = []
    for mv in moves:
        steps.append((mv.plus, mv.minus))
        steps.append((mv.minus, mv.plus))
    for u in fiber.elements:
        for take, give in steps:
            if all(x >= y for x, y in zip(u, take)):
                w = tuple(x - y + z for x, y, z in zip(u, take, give))
                if w in elements:
                    uf.union(u, w)
    return uf.count()


def fiber_graph_connected(fiber: Fiber, moves: Iterable[Move]) -> bool:
    if len(fiber) <= 1:
        return True
    return fiber_components(fiber, moves) == 1


# -- Markov verification -------------------------------------------------------

@dataclass
class MarkovReport:
    graph: dict
    degree_bound: int
    verified_degree: int
    fibers_checked: int
    max_fiber_size: int
    all_connected: bool
    failures: list[dict] = field(default_factory=list)

    @property
    def first_failure(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "degree_bound": self.degree_bound,
            "verified_degree": self.verified_degree,
            "fibers_checked": self.fibers_checked,
            "max_fiber_size": self.max_fiber_size,
            "all_connected": self.all_connected,
            "failures": self.failures,
            "first_failure": self.first_failure,
        }


def as_moves(moves: Iterable, n: int) -> list[Move]:
    out = []
    for mv in moves:
        if isinstance(mv, Move):
            out.append(mv)
        elif isinstance(mv, Polynomial):
            out.append(Move.from_binomial(mv, n))
        else:
            out.append(Move(tuple(mv)))
    return out


def fibers_up_to_degree(m: ExponentMatrix, degree_bound: int) -> dict[tuple[int, tuple[int, ...]], list]:
    """Group every monomial of degree 1..degree_bound by its image.

    Complete for homogeneous matrices (all elements of a fiber share a
    degree), which holds for M_psi since the a-rows sum to twice the degree.
    """
    cols = [m.column(t) for t in range(len(m.cols))]
    ncols = len(cols)
    groups: dict[tuple[int, tuple[int, ...]], list] = {}
    for d in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(range(ncols), d):
            u = [0] * ncols
            for t in combo:
                u[t] += 1
            b = tuple(sum(col[r] for col in (cols[t] for t in combo)) for r in range(len(m.rows)))
            groups.setdefault((d, b), []).append(tuple(u))
    return groups


def verify_markov(g: Graph, moves: Iterable, degree_bound: int = 3) -> MarkovReport:
    if degree_bound < 2:
        raise ValueError("degree_bound must be at least 2")
    mpsi = build_matrix(g, "psi")
    mvs = as_moves(moves, g.n)
    for mv in mvs:
        if any(mpsi.apply(mv.vec)):
            raise NotInKernel(f"move {mv.to_binomial(g.n)} is not in the kernel of M_psi")
    groups = fibers_up_to_degree(mpsi, degree_bound)
    failures = []
    largest = 0
    for (d, b) in sorted(groups):
        fiber = Fiber(b, tuple(sorted(groups[(d, b)])))
        largest = max(largest, len(fiber))
        if len(fiber) <= 1:
            continue
        k = fiber_components(fiber, mvs)
        if k > 1:
            failures.append({
                "degree": d,
                "b": list(b),
                "size": len(fiber),
                "components": k,
                "elements": [str(vector_to_monomial(u, g.n)) for u in fiber.elements],
            })
    verified = degree_bound if not failures else failures[0]["degree"] - 1
    return MarkovReport(g.to_json(), degree_bound, verified, len(groups), largest, not failures, failures)


# -- circular embedding of K_n with loops ---------------------------------------

@dataclass(frozen=True)
class CircularEmbedding:
    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(1, len(self.order) + 1)):
            raise ValueError("order must be a permutation of 1..n")

    @property
    def n(self) -> int:
        return len(self.order)

    @classmethod
    def standard(cls, n: int) -> "CircularEmbedding":
        return cls(tuple(range(1, n + 1)))

    def position(self, v: int) -> int:
        return self.order.index(v)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(i, self.n + 1)]

    def intersects(self, e: tuple[int, int], f: tuple[int, int]) -> bool:
        """Edges meet if they share a vertex or cross as chords of the circle."""
        if set(e) & set(f):
            return True
        if e[0] == e[1] or f[0] == f[1]:
            return False
        a, b = sorted((self.position(e[0]), self.position(e[1])))
        inside = [a < self.position(x) < b for x in f]
        return inside[0] != inside[1]


def circular_weight(emb: CircularEmbedding, edge: tuple[int, int]) -> int:
    return sum(1 for f in emb.edges() if not emb.intersects(edge, f))


def circular_term_order(emb: CircularEmbedding) -> TermOrder:
    weights = {sigma(i, j): circular_weight(emb, (i, j)) for i, j in emb.edges()}
    return TermOrder.from_weights(weights, name="circular")


def chord_weight_formula(n: int, s: int) -> int:
    """Weight of a chord leaving s vertices on one side and n - 2 - s on the other."""
    t = n - 2 - s
    return comb(s + 1, 2) + comb(t + 1, 2)


def _arc_layout(parts: Sequence[int], names: Sequence[str]) -> tuple[CircularEmbedding, dict[str, int]]:
    """Place named vertices on a circle with parts[t] anonymous vertices after names[t]."""
    order, label, nxt = [], {}, 1
    for name, p in zip(names, parts):
        label[name] = nxt
        order.append(nxt)
        nxt += 1
        for _ in range(p):
            order.append(nxt)
            nxt += 1
    return CircularEmbedding(tuple(order)), label


def _e(a: int, b: int) -> tuple[int, int]:
    return (min(a, b), max(a, b))


def chord_gap(p1: int, p2: int, p3: int, p4: int) -> int:
    """w(ij)+w(kl)-w(ik)-w(jl) with arcs of sizes p1..p4 between i,j,k,l in circular order."""
    emb, v = _arc_layout((p1, p2, p3, p4), "ijkl")
    i, j, k, l = v["i"], v["j"], v["k"], v["l"]
    w = lambda a, b: circular_weight(emb, _e(a, b))
    return w(i, j) + w(k, l) - w(i, k) - w(j, l)


def chord_gap_formula(p1: int, p2: int, p3: int, p4: int) -> int:
    return 2 * p2 * p4 + 2 * (p2 + p4) + 2


def loop_gap(p1: int, p2: int, p3: int, p4: int) -> int:
    """w(ij)+w(kk)-w(ik)-w(jk) on the four-arc layout i,P1,j,P2,k,P3,l,P4."""
    emb, v = _arc_layout((p1, p2, p3, p4), "ijkl")
    i, j, k = v["i"], v["j"], v["k"]
    w = lambda a, b: circular_weight(emb, _e(a, b))
    return w(i, j) + w(k, k) - w(i, k) - w(j, k)


def loop_gap_printed(p1: int, p2: int, p3: int, p4: int) -> float:
    """The loop-case gap expression as printed in the source derivation, transcribed literally."""
    return (p2 + p3 + p4) / 2 + 2 * (p2 * p3 + p2 * p4) + 1.5 * (p2 + p3 + p4) + p2 + 4


def loop_gap_corrected(p1: int, p2: int, p3: int, p4: int) -> int:
    return 2 * p2 * p3 + 2 * p2 * p4 + 4 * p2 + 2 * p3 + 2 * p4 + 4


def compositions(total: int, parts: int = 4) -> Iterable[tuple[int, ...]]:
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def nonintersecting_basis(n: int, order: Sequence[int] | None = None) -> list[Polynomial]:
    """Binomials sigma_e sigma_f - (crossing re-pairing) over non-intersecting edge pairs.

    Loop pairs (i,i),(k,k) are non-intersecting too; their re-pairing is
    (i,k),(i,k), giving sigma_ii sigma_kk - sigma_ik^2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    emb = CircularEmbedding(tuple(order) if order else tuple(range(1, n + 1)))
    if emb.n != n:
        raise ValueError("order length differs from n")
    edges = emb.edges()
    out = []
    for e, f in itertools.combinations(edges, 2):
        if emb.intersects(e, f):
            continue
        (i, j), (k, l) = e, f
        if i == j and k == l:
            swap = [(_e(i, k), _e(i, k))]
        elif k == l:
            swap = [(_e(i, k), _e(j, k))]
        elif i == j:
            swap = [(_e(k, i), _e(l, i))]
        else:
            swap = [p for p in ((_e(i, k), _e(j, l)), (_e(i, l), _e(j, k))) if emb.intersects(*p)]
        a, b = swap[0]
        lead = Monomial.of(sigma(*e), sigma(*f))
        trail = Monomial.of(sigma(*a), sigma(*b))
        out.append(Polynomial.monomial(lead) - Polynomial.monomial(trail))
    return out


def unique_center(g: Graph) -> int:
    centers = sorted(central_vertices(g))
    if len(centers) != 1:
        raise MultipleCenters(f"expected exactly one central vertex, found {centers}")
    return centers[0]


def removed_variables(g: Graph, c: int) -> set[Var]:
    """D: the sigma_pq whose shortest path avoids c."""
    return {sigma(p, q) for p in g.vertices for q in g.vertices
            if p <= q and c not in shortest_path(g, p, q)}


def circular_order(g: Graph, c: int) -> tuple[int, ...]:
    """Blocks minus c as contiguous arcs (by smallest vertex, ascending inside), then c."""
    if c not in central_vertices(g):
        raise NotCentral(f"vertex {c} is not a cut vertex")
    arcs = sorted((sorted(b - {c}) for b in biconnected_components(g)), key=lambda a: a[0])
    return tuple(v for arc in arcs for v in arc) + (c,)


def restrict_to_Gcircle(basis: list[Polynomial] | None, g: Graph, c: int | None = None) -> list[Polynomial]:
    center = unique_center(g)
    if c is not None and c != center:
        raise NotCentral(f"vertex {c} is not the central vertex {center}")
    if basis is None:
        basis = nonintersecting_basis(g.n, circular_order(g, center))
    d = removed_variables(g, center)
    return [p for p in basis if not (p.variables() & d)]


# -- binomial Buchberger -------------------------------------------------------

def _orient(m1: Monomial, m2: Monomial, order: TermOrder) -> tuple[Monomial, Monomial]:
    return (m1, m2) if order.greater(m1, m2) else (m2, m1)


def _as_pair(p: Polynomial, order: TermOrder) -> tuple[Monomial, Monomial]:
    return _orient(*binomial_parts(p), order)


def _normal_monomial(m: Monomial, basis: Sequence[tuple[Monomial, Monomial]]) -> Monomial:
    changed = True
    while changed:
        changed = False
        for lead, trail in basis:
            if lead.divides(m):
                m = (m / lead) * trail
                changed = True
                break
    return m


def _reduce_pair(a: Monomial, b: Monomial, basis, order) -> tuple[Monomial, Monomial] | None:
    na, nb = _normal_monomial(a, basis), _normal_monomial(b, basis)
    if na == nb:
        return None
    return _orient(na, nb, order)


def _s_pair(f, g):
    lcm = f[0].lcm(g[0])
    return (lcm / f[0]) * f[1], (lcm / g[0]) * g[1]


def _pair_to_poly(pair) -> Polynomial:
    return Polynomial.monomial(pair[0]) - Polynomial.monomial(pair[1])


def buchberger_binomial(gens: Iterable[Polynomial], order: TermOrder, max_size: int = 500) -> list[Polynomial]:
    """Reduced Groebner basis of a pure-binomial ideal.

    Pairs are processed by ascending leading-term order of their lcm and
    pairs with coprime leading terms are skipped.
    """
    basis: list[tuple[Monomial, Monomial]] = []
    for p in gens:
        pair = _reduce_pair(*_as_pair(p, order), basis, order)
        if pair is not None:
            basis.append(pair)
    if len(basis) > max_size:
        raise SizeLimit(f"Groebner basis exceeded {max_size} elements")
    heap: list = []
    counter = itertools.count()

    def push_pairs(new: int):
        for old in range(new):
            f, g = basis[old], basis[new]
            if f[0].coprime(g[0]):
                continue
            heapq.heappush(heap, (order.key(f[0].lcm(g[0])), next(counter), old, new))

    for t in range(len(basis)):
        push_pairs(t)
    while heap:
        _, _, a, b = heapq.heappop(heap)
        s = _reduce_pair(*_s_pair(basis[a], basis[b]), basis, order)
        if s is None:
            continue
        basis.append(s)
        if len(basis) > max_size:
            raise SizeLimit(f"Groebner basis exceeded {max_size} elements")
        push_pairs(len(basis) - 1)
    return [_pair_to_poly(p) for p in _reduce_basis(basis, order)]


def _reduce_basis(basis, order):
    minimal = []
    for t, (lead, trail) in enumerate(basis):
        if any(other[0].divides(lead) and (other[0] != lead or s < t)
               for s, other in enumerate(basis) if s != t):
            continue
        minimal.append((lead, trail))
    out = []
    for t, (lead, trail) in enumerate(minimal):
        others = minimal[:t] + minimal[t + 1:]
        out.append((lead, _normal_monomial(trail, others)))
    return sorted(out, key=lambda p: order.key(p[0]))


@dataclass
class FixpointReport:
    s_pairs_reduce_to_zero: bool
    leads_irreducible: bool
    trails_reduced: bool
    completion_added: int

    @property
    def is_fixpoint(self) -> bool:
        return self.s_pairs_reduce_to_zero and self.leads_irreducible

    def to_json(self) -> dict:
        return {
            "is_fixpoint": self.is_fixpoint,
            "s_pairs_reduce_to_zero": self.s_pairs_reduce_to_zero,
            "leads_irreducible": self.leads_irreducible,
            "trails_reduced": self.trails_reduced,
            "completion_added": self.completion_added,
        }


def groebner_fixpoint(gens: Iterable[Polynomial], order: TermOrder) -> FixpointReport:
    """Check that completion adds nothing and that no leading term divides another."""
    basis = [_as_pair(p, order) for p in gens]
    zero = all(
        _reduce_pair(*_s_pair(f, g), basis, order) is None
        for f, g in itertools.combinations(basis, 2) if not f[0].coprime(g[0])
    )
    irreducible = not any(
        f[0].divides(g[0]) for f, g in itertools.permutations(basis, 2)
    )
    trails = all(not any(lead.divides(t) for lead, _ in basis) for _, t in basis)
    completed = buchberger_binomial(gens, order)
    added = len({p.sign_normalised() for p in completed} - {_pair_to_poly(p).sign_normalised() for p in basis})
    return FixpointReport(zero, irreducible, trails, added)


def leading_monomial(p: Polynomial, order: TermOrder) -> Monomial:
    return p.leading_term(order)[0]
