"""Exact sparse multivariate polynomials over the rationals.

Variables live in three namespaces: ``a_i``, ``k_ij`` and ``sigma_ij``
(written ``a3``, ``k12``, ``s12`` in text form).  Symmetric indices are
normalised so that ``i <= j``.  Coefficients are Python ints or
``fractions.Fraction`` values, so every zero test is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import MissingVariable, ZeroPolynomial

Coeff = Union[int, Fraction]

_KIND_RANK = {"a": 0, "k": 1, "s": 2}


class Var(NamedTuple):
    """A ring variable; ``kind`` is ``'a'``, ``'k'`` or ``'s'`` (sigma)."""

    kind: str
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "a":
            return f"a{self.i}" if self.i < 10 else f"a_{self.i}"
        if self.i < 10 and self.j < 10:
            return f"{self.kind}{self.i}{self.j}"
        return f"{self.kind}_{self.i}_{self.j}"

    def to_json(self) -> list:
        if self.kind == "a":
            return ["a", self.i]
        return [self.kind, self.i, self.j]


def sigma(i: int, j: int) -> Var:
    return Var("s", i, j) if i <= j else Var("s", j, i)


def kvar(i: int, j: int) -> Var:
    return Var("k", i, j) if i <= j else Var("k", j, i)


def avar(i: int) -> Var:
    return Var("a", i, 0)


def var_sort_key(v: Var) -> tuple[int, int, int]:
    """Position in the canonical sequence a_1..a_n, k_ij (lex), sigma_ij (lex)."""
    return (_KIND_RANK[v.kind], v.i, v.j)


class Monomial(tuple):
    """Sparse power product: a sorted tuple of ``(Var, exponent)`` pairs."""

    __slots__ = ()

    def __new__(cls, powers: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        items = powers.items() if isinstance(powers, Mapping) else powers
        acc: dict[Var, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            if e:
                acc[v] = acc.get(v, 0) + e
        return tuple.__new__(cls, sorted(acc.items(), key=lambda ve: var_sort_key(ve[0])))

    @classmethod
    def _raw(cls, pairs: tuple) -> "Monomial":
        return tuple.__new__(cls, pairs)

    @classmethod
    def of(cls, *variables: Var) -> "Monomial":
        acc: dict[Var, int] = {}
        for v in variables:
            acc[v] = acc.get(v, 0) + 1
        return cls(acc)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    def as_dict(self) -> dict[Var, int]:
        return dict(self)

    def exponent(self, v: Var) -> int:
        for w, e in self:
            if w == v:
                return e
        return 0

    def variables(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self)

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        if not self:
            return other
        if not other:
            return self
        acc = dict(self)
        for v, e in other:
            acc[v] = acc.get(v, 0) + e
        return Monomial._raw(tuple(sorted(acc.items(), key=lambda ve: var_sort_key(ve[0]))))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial._raw(tuple((v, e * k) for v, e in self)) if k else Monomial()

    def divides(self, other: "Monomial") -> bool:
        od = dict(other)
        return all(od.get(v, 0) >= e for v, e in self)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        acc = dict(self)
        for v, e in other:
            left = acc.get(v, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                acc[v] = left
            else:
                del acc[v]
        return Monomial(acc)

    def lcm(self, other: "Monomial") -> "Monomial":
        acc = dict(self)
        for v, e in other:
            acc[v] = max(acc.get(v, 0), e)
        return Monomial(acc)

    def coprime(self, other: "Monomial") -> bool:
        vs = {v for v, _ in self}
        return not any(v in vs for v, _ in other)

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE = Monomial()


def _normalise(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _normalise(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _normalise(Fraction(c))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Polynomial:
    """Immutable polynomial: a map from Monomial to nonzero rational coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | Iterable[tuple[Monomial, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Coeff] = {}
        for m, c in items:
            c = _normalise(c)
            if not c:
                continue
            if not isinstance(m, Monomial):
                m = Monomial(m)
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _wrap(cls, acc: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = acc
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Coeff) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls._wrap({Monomial._raw(((v, 1),)): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: Coeff = 1) -> "Polynomial":
        return cls({m: c})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Coeff]]:
        """Terms in canonical order: degree descending, then canonical monomial order."""
        return iter(sorted(self._terms.items(), key=lambda mc: _canonical_term_key(mc[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, m: Monomial) -> Coeff:
        return self._terms.get(m, 0)

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def scalar_mul(self, c: Coeff) -> "Polynomial":
        c = _normalise(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m: _normalise(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        other = _coerce(other)
        if not self._terms or not other._terms:
            return Polynomial()
        acc: dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = acc.get(m, 0) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        return Polynomial._wrap({m: _normalise(c) for m, c in acc.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation / substitution -------------------------------------------
    def evaluate(self, assignment: Mapping[Var, Coeff]) -> Coeff:
        total: Coeff = 0
        for m, c in self._terms.items():
            val: Coeff = c
            for v, e in m:
                try:
                    x = assignment[v]
                except KeyError:
                    raise MissingVariable(str(v)) from None
                val = val * x**e
            total += val
        return _normalise(total)

    def substitute(self, images: Mapping[Var, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials; unmapped variables are kept."""
        cache: dict[tuple[Var, int], Polynomial] = {}

        def power(v: Var, e: int) -> Polynomial:
            key = (v, e)
            if key not in cache:
                base = images.get(v)
                cache[key] = (base if base is not None else Polynomial.var(v)) ** e
            return cache[key]

        total = Polynomial()
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            for v, e in m:
                term = term * power(v, e)
                if not term:
                    break
            total = total + term
        return total

    # -- orders --------------------------------------------------------------
    def leading_term(self, order: "TermOrder") -> tuple[Monomial, Coeff]:
        if not self._terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def sign_normalised(self) -> "Polynomial":
        """``self`` or ``-self``, whichever has a positive first canonical coefficient."""
        if not self._terms:
            return self
        m = min(self._terms, key=_canonical_term_key)
        return -self if self._terms[m] < 0 else self

    # -- serialisation ---------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            body = f"{c}" if not m else f"{c}*{m}"
            parts.append(body)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    def to_json(self) -> list[dict]:
        out = []
        for m, c in self.items():
            vs = []
            for v, e in m:
                vs.extend([v.to_json()] * e)
            out.append({"coeff": str(Fraction(c)), "vars": vs})
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> "Polynomial":
        terms = []
        for t in data:
            vs = []
            for spec in t["vars"]:
                if spec[0] == "a":
                    vs.append(avar(int(spec[1])))
                elif spec[0] == "k":
                    vs.append(kvar(int(spec[1]), int(spec[2])))
                elif spec[0] == "s":
                    vs.append(sigma(int(spec[1]), int(spec[2])))
                else:
                    raise ValueError(f"unknown variable kind {spec[0]!r}")
            terms.append((Monomial.of(*vs), Fraction(t["coeff"])))
        return cls(terms)


def _canonical_term_key(m: Monomial):
    return (-m.degree, tuple((var_sort_key(v), -e) for v, e in m))


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    if isinstance(x, Var):
        return Polynomial.var(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


@dataclass(frozen=True)
class TermOrder:
    """Weight order refined by graded reverse lexicographic order.

    ``weight`` maps a variable to a nonnegative integer (missing means 0).
    Ties in weight are broken by total degree and then by reverse
    lexicographic comparison on the canonical variable sequence.
    """

    weight: Callable[[Var], int] | None = None
    name: str = "grevlex"

    def monomial_weight(self, m: Monomial) -> int:
        if self.weight is None:
            return 0
        return sum(self.weight(v) * e for v, e in m)

    def key(self, m: Monomial):
        rev = tuple((-_KIND_RANK[v.kind], -v.i, -v.j, -e) for v, e in reversed(m))
        return (self.monomial_weight(m), m.degree, rev)

    def greater(self, m1: Monomial, m2: Monomial) -> bool:
        return self.key(m1) > self.key(m2)

    @classmethod
    def from_weights(cls, weights: Mapping[Var, int], name: str = "weighted") -> "TermOrder":
        w = dict(weights)
        return cls(weight=lambda v: w.get(v, 0), name=name)


GREVLEX = TermOrder()


def diagonal_count_order() -> TermOrder:
    """Weight order on the k-ring counting diagonal entries ``k_tt``."""
    return TermOrder(weight=lambda v: 1 if v.kind == "k" and v.i == v.j else 0, name="diagonal-count")


# -- text parsing -------------------------------------------------------------

_VAR_RE = re.compile(r"^(?:(s|σ|sigma|k)_?(\d+)_(\d+)|(s|σ|sigma|k)(\d)(\d)|a_?(\d+))$")


def parse_var(token: str) -> Var:
    mt = _VAR_RE.match(token.strip())
    if not mt:
        raise ValueError(f"cannot parse variable {token!r}")
    if mt.group(1):
        kind = "k" if mt.group(1) == "k" else "s"
        i, j = int(mt.group(2)), int(mt.group(3))
    elif mt.group(4):
        kind = "k" if mt.group(4) == "k" else "s"
        i, j = int(mt.group(5)), int(mt.group(6))
    else:
        return avar(int(mt.group(7)))
    return kvar(i, j) if kind == "k" else sigma(i, j)


def parse_polynomial(text: str) -> Polynomial:
    """Parse text such as ``"s13*s24 - s14*s23"`` or ``"-1*k11*k22 + 1/2*k12^2"``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.split(r"([+-])", s)
    terms: list[tuple[Monomial, Fraction]] = []
    sign = 1
    buf = ""
    chunks: list[tuple[int, str]] = []
    for piece in pieces:
        if piece in ("+", "-"):
            if buf.strip():
                chunks.append((sign, buf))
                buf = ""
                sign = 1 if piece == "+" else -1
            else:
                sign *= 1 if piece == "+" else -1
        else:
            buf += piece
    if buf.strip():
        chunks.append((sign, buf))
    for sign, chunk in chunks:
        coeff = Fraction(sign)
        powers: dict[Var, int] = {}
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            if "^" in factor:
                base, exp = factor.split("^")
                base, e = base.strip(), int(exp)
            else:
                base, e = factor, 1
            if re.fullmatch(r"\d+(/\d+)?", base):
                coeff *= Fraction(base) ** e
            else:
                v = parse_var(base)
                powers[v] = powers.get(v, 0) + e
        terms.append((Monomial(powers), coeff))
    return Polynomial(terms)


def sum_polynomials(polys: Iterable[Polynomial]) -> Polynomial:
    """Sum many polynomials with a single accumulator."""
    acc: dict[Monomial, Coeff] = {}
    for p in polys:
        for m, c in p._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                del acc[m]
    return Polynomial._wrap({m: _normalise(c) for m, c in acc.items()})
