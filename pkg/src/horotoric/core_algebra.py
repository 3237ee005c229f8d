"""Exact Laurent polynomials in the variables x[i,j], y[k], t and their term order.

Exponent vectors are laid out as

    (x[1,2], ..., x[1,2n], x[2,3], ..., x[2,2n-1], ..., x[n,n+1], y[1], ..., y[r], t)

i.e. the x-variables (coordinates on the maximal unipotent subgroup U+ of SP(2n))
in row-major order, then the torus variables, then the grading variable.
Coefficients are :class:`fractions.Fraction`; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class DomainError(ValueError):
    """Raised when an input violates the mathematical preconditions of an operation."""


class UniverseMismatch(DomainError):
    pass


@dataclass(frozen=True)
class VariableUniverse:
    """Variables x[i,j] (i<j, i+j <= 2n+1), y[1..r] and t."""

    n: int
    r: int = 0

    def __post_init__(self):
        if self.n < 1 or self.r < 0:
            raise DomainError(f"invalid universe n={self.n}, r={self.r}")

    @cached_property
    def x_pairs(self) -> tuple[tuple[int, int], ...]:
        n = self.n
        return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, 2 * n + 2 - i))

    @property
    def nx(self) -> int:
        return len(self.x_pairs)

    @property
    def size(self) -> int:
        return self.nx + self.r + 1

    @property
    def t_index(self) -> int:
        return self.nx + self.r

    def y_index(self, k: int) -> int:
        if not 1 <= k <= self.r:
            raise DomainError(f"y[{k}] not in universe with r={self.r}")
        return self.nx + k - 1

    def x_index(self, i: int, j: int) -> int:
        try:
            return self._x_lookup[(i, j)]
        except KeyError:
            raise DomainError(f"x[{i},{j}] is not a coordinate on U+ for n={self.n}") from None

    @cached_property
    def _x_lookup(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.x_pairs)}

    @cached_property
    def names(self) -> tuple[str, ...]:
        xs = tuple(f"x[{i},{j}]" for i, j in self.x_pairs)
        ys = tuple(f"y[{k}]" for k in range(1, self.r + 1))
        return xs + ys + ("t",)

    def zero_exponent(self) -> tuple[int, ...]:
        return (0,) * self.size

    # convenience constructors
    def x(self, i: int, j: int) -> "LaurentPolynomial":
        return self.monomial({self.x_index(i, j): 1})

    def y(self, k: int) -> "LaurentPolynomial":
        return self.monomial({self.y_index(k): 1})

    def t(self) -> "LaurentPolynomial":
        return self.monomial({self.t_index: 1})

    def const(self, c) -> "LaurentPolynomial":
        return LaurentPolynomial(self, {self.zero_exponent(): Fraction(c)})

    def monomial(self, exps: Mapping[int, int], coef=1) -> "LaurentPolynomial":
        e = [0] * self.size
        for k, v in exps.items():
            e[k] = v
        return LaurentPolynomial(self, {tuple(e): Fraction(coef)})

    def lift(self, e: Sequence[int], source: "VariableUniverse") -> tuple[int, ...]:
        """Re-embed an exponent tuple of a universe with fewer y-variables."""
        if source.n != self.n or source.r > self.r:
            raise UniverseMismatch(f"cannot lift from {source} to {self}")
        nx = self.nx
        return tuple(e[:nx + source.r]) + (0,) * (self.r - source.r) + (e[-1],)


@dataclass(frozen=True)
class ExponentVector:
    universe: VariableUniverse
    exps: tuple[int, ...]

    def __post_init__(self):
        u = self.universe
        if len(self.exps) != u.size:
            raise DomainError(f"exponent vector has length {len(self.exps)}, expected {u.size}")
        if any(e < 0 for e in self.exps[:u.nx]) or self.exps[u.t_index] < 0:
            raise DomainError(f"negative x- or t-exponent in {self.exps}")

    @classmethod
    def zero(cls, universe: VariableUniverse) -> "ExponentVector":
        return cls(universe, universe.zero_exponent())

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        _check_same(self.universe, other.universe)
        return ExponentVector(self.universe, tuple(a + b for a, b in zip(self.exps, other.exps)))

    @property
    def x(self) -> tuple[int, ...]:
        return self.exps[:self.universe.nx]

    @property
    def y(self) -> tuple[int, ...]:
        u = self.universe
        return self.exps[u.nx:u.nx + u.r]

    @property
    def t(self) -> int:
        return self.exps[-1]


def _check_same(u: VariableUniverse, v: VariableUniverse) -> None:
    if u != v:
        raise UniverseMismatch(f"universes differ: {u} vs {v}")


@dataclass(frozen=True)
class TermOrder:
    """t first (larger wins), then y[r], ..., y[1] (larger wins), then the x-variables
    x[1,2n], x[1,2n-1], ..., x[1,2], x[2,2n-1], ..., x[n,n+1] with the SMALLER exponent winning.

    ``key(e)`` maps an exponent tuple to a tuple whose natural ordering is the term order.
    """

    universe: VariableUniverse
    _schedule: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        u = self.universe
        sched = [(u.t_index, 1)]
        sched += [(u.y_index(k), 1) for k in range(u.r, 0, -1)]
        n = u.n
        for i in range(1, n + 1):
            for j in range(2 * n + 1 - i, i, -1):
                sched.append((u.x_index(i, j), -1))
        object.__setattr__(self, "_schedule", tuple(sched))

    def key(self, e: Sequence[int]) -> tuple[int, ...]:
        return tuple(e[i] if s > 0 else -e[i] for i, s in self._schedule)

    def unkey(self, k: Sequence[int]) -> tuple[int, ...]:
        e = [0] * self.universe.size
        for (i, s), v in zip(self._schedule, k):
            e[i] = v if s > 0 else -v
        return tuple(e)

    def x_chain(self) -> list[tuple[int, int]]:
        """x-variables from smallest to largest single-variable monomial."""
        u = self.universe
        return [u.x_pairs[i] for i, s in self._schedule if s < 0]


def okounkov_order(universe: VariableUniverse) -> TermOrder:
    return TermOrder(universe)


def compare(a: ExponentVector, b: ExponentVector, order: TermOrder) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or greater than ``b``."""
    _check_same(a.universe, b.universe)
    _check_same(a.universe, order.universe)
    ka, kb = order.key(a.exps), order.key(b.exps)
    return (ka > kb) - (ka < kb)


class LaurentPolynomial:
    """Finite map exponent tuple -> nonzero Fraction, over a fixed universe.

    Treat instances as immutable.
    """

    __slots__ = ("universe", "terms")

    def __init__(self, universe: VariableUniverse, terms: Mapping[Sequence[int], object] | None = None):
        self.universe = universe
        clean: dict[tuple[int, ...], Fraction] = {}
        nx, ti = universe.nx, universe.t_index
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != universe.size:
                raise DomainError(f"exponent {e} has wrong length for {universe}")
            if any(v < 0 for v in e[:nx]) or e[ti] < 0:
                raise DomainError(f"negative x- or t-exponent in {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def _trusted(cls, universe: VariableUniverse, terms: dict) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, universe: VariableUniverse) -> "LaurentPolynomial":
        return cls._trusted(universe, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            _check_same(self.universe, other.universe)
            return other
        if isinstance(other, (int, Fraction)):
            return self.universe.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.universe.const(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolynomial._trusted(self.universe, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._trusted(self.universe, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPolynomial":
        c = Fraction(c)
        if not c:
            return LaurentPolynomial.zero(self.universe)
        return LaurentPolynomial._trusted(self.universe, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPolynomial._trusted(self.universe, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of polynomials are not supported")
        result = self.universe.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def relabel(self, universe: VariableUniverse) -> "LaurentPolynomial":
        """The same polynomial viewed in a universe with more y-variables."""
        return LaurentPolynomial._trusted(
            universe, {universe.lift(e, self.universe): c for e, c in self.terms.items()}
        )

    def sorted_terms(self, order: TermOrder | None = None) -> list[tuple[tuple[int, ...], Fraction]]:
        order = order or okounkov_order(self.universe)
        return sorted(self.terms.items(), key=lambda ec: order.key(ec[0]), reverse=True)

    def __repr__(self):
        return f"LaurentPolynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def mul(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f * g


def initial_term(f: LaurentPolynomial, order: TermOrder | None = None) -> tuple[Fraction, ExponentVector]:
    """Leading coefficient and exponent of ``f`` under ``order``."""
    if not f.terms:
        raise DomainError("the zero polynomial has no initial term")
    order = order or okounkov_order(f.universe)
    _check_same(f.universe, order.universe)
    e = max(f.terms, key=order.key)
    return f.terms[e], ExponentVector(f.universe, e)


def row_echelon(fs: Iterable[LaurentPolynomial], order: TermOrder | None = None) -> list[LaurentPolynomial]:
    """Reduced echelon basis of the rational span of ``fs``.

    Every output element has leading coefficient 1, leading exponents are pairwise
    distinct, no element contains another's leading monomial, and the list is sorted
    by leading exponent, descending.
    """
    fs = list(fs)
    if not fs:
        return []
    universe = fs[0].universe
    order = order or okounkov_order(universe)
    for f in fs:
        _check_same(f.universe, universe)
    rows = _reduce_keyed([{order.key(e): c for e, c in f.terms.items()} for f in fs])
    return [
        LaurentPolynomial._trusted(universe, {order.unkey(k): c for k, c in rows[p].items()})
        for p in sorted(rows, reverse=True)
    ]


def _reduce_keyed(rows: list[dict]) -> dict[tuple, dict]:
    """Incremental Gaussian elimination on sparse rows keyed by order-key tuples.

    Returns pivot key -> fully reduced row with unit pivot coefficient.
    """
    basis: dict[tuple, dict] = {}
    for row in rows:
        r = _reduce_one(dict(row), basis)
        if not r:
            continue
        p = max(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for q, other in basis.items():
            c = other.get(p)
            if c:
                for k, v in r.items():
                    w = other.get(k, 0) - c * v
                    if w:
                        other[k] = w
                    else:
                        other.pop(k, None)
        basis[p] = r
    return basis


def _reduce_one(r: dict, basis: dict[tuple, dict]) -> dict:
    # eliminate every pivot present in r (full reduction)
    for p in sorted((k for k in r if k in basis), reverse=True):
        c = r.get(p)
        if not c:
            continue
        for k, v in basis[p].items():
            w = r.get(k, 0) - c * v
            if w:
                r[k] = w
            else:
                r.pop(k, None)
    return r


def reduce_by(f: LaurentPolynomial, basis: Sequence[LaurentPolynomial], order: TermOrder | None = None) -> LaurentPolynomial:
    """Remainder of ``f`` after eliminating the leading monomials of a reduced echelon ``basis``."""
    order = order or okounkov_order(f.universe)
    keyed = {}
    for b in basis:
        kb = {order.key(e): c for e, c in b.terms.items()}
        keyed[max(kb)] = kb
    r = dict((order.key(e), c) for e, c in f.terms.items())
    # a reduced echelon basis never reintroduces an eliminated pivot
    while True:
        hit = [k for k in r if k in keyed]
        if not hit:
            break
        r = _reduce_one(r, keyed)
    return LaurentPolynomial._trusted(f.universe, {order.unkey(k): c for k, c in r.items()})


def in_span(f: LaurentPolynomial, basis: Sequence[LaurentPolynomial], order: TermOrder | None = None) -> bool:
    return reduce_by(f, basis, order).is_zero()


# ---------------------------------------------------------------------------
# text format:  coef * x[i,j]^e * y[k]^e * t^e  terms joined by " + "

def format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str) and re.fullmatch(r"\s*-?\d+(/\d+)?\s*", s):
        return Fraction(s.strip())
    raise DomainError(f"not an exact rational: {s!r}")


def format_polynomial(f: LaurentPolynomial, order: TermOrder | None = None) -> str:
    if f.is_zero():
        return "0"
    names = f.universe.names
    out = []
    for e, c in f.sorted_terms(order):
        factors = [format_rational(c)]
        for name, v in zip(names, e):
            if v == 1:
                factors.append(name)
            elif v:
                factors.append(f"{name}^{v}")
        out.append(" * ".join(factors))
    return " + ".join(out)


_FACTOR = re.compile(r"^(x\[(\d+),(\d+)\]|y\[(\d+)\]|t)(\^(-?\d+))?$")


def parse_polynomial(text: str, universe: VariableUniverse) -> LaurentPolynomial:
    text = text.strip()
    if text == "0":
        return LaurentPolynomial.zero(universe)
    terms: dict[tuple[int, ...], Fraction] = {}
    for chunk in text.split(" + "):
        factors = [s.strip() for s in chunk.split("*")]
        coef = Fraction(1)
        e = [0] * universe.size
        for k, fac in enumerate(factors):
            if k == 0 and re.fullmatch(r"-?\d+(/\d+)?", fac):
                coef = Fraction(fac)
                continue
            m = _FACTOR.match(fac)
            if not m:
                raise DomainError(f"cannot parse factor {fac!r} in {chunk!r}")
            power = int(m.group(6)) if m.group(6) else 1
            if m.group(2):
                idx = universe.x_index(int(m.group(2)), int(m.group(3)))
            elif m.group(4):
                idx = universe.y_index(int(m.group(4)))
            else:
                idx = universe.t_index
            e[idx] += power
        terms[tuple(e)] = terms.get(tuple(e), 0) + coef
    return LaurentPolynomial(universe, terms)
