"""Gelfand-Cetlin polytopes of GL(n) and SP(2n), the integral change of coordinates
to exponent space, and Newton polytopes fibred over a moment polytope.

SP(2n) patterns are stored row by row below the weight::

    lambda_1   lambda_2  ...  lambda_n   0
         x_1       x_2   ...       x_n
              y_1        ...  y_{n-1}    0
                    ...
                               z          0
                                    w

Rows alternate between "eta" rows (lengths n, n-1, ..., 1) and "theta" rows
(lengths n-1, ..., 1, 0) that carry an extra constant 0 on the right.
Every inequality is homogeneous linear in (lambda, pattern), which is what makes
dilation and Minkowski addition of the polytopes follow the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

from . import _linalg as la
from .core_algebra import DomainError, VariableUniverse
from .polyhedra import HPolytope, affine_image, hull

GROUPS = ("SP", "GL")


@dataclass(frozen=True)
class DominantWeight:
    group: str
    components: tuple[Fraction, ...]

    def __post_init__(self):
        if self.group not in GROUPS:
            raise DomainError(f"unknown group {self.group!r}; expected SP or GL")
        comps = tuple(Fraction(c) for c in self.components)
        if not comps:
            raise DomainError("weight has no components")
        if any(a < b for a, b in zip(comps, comps[1:])):
            raise DomainError(f"weight {tuple(map(str, comps))} is not dominant (must be non-increasing)")
        if self.group == "SP" and comps[-1] < 0:
            raise DomainError("SP(2n) dominant weights have nonnegative components")
        object.__setattr__(self, "components", comps)

    @classmethod
    def sp(cls, *lam) -> "DominantWeight":
        return cls("SP", tuple(lam))

    @classmethod
    def gl(cls, *lam) -> "DominantWeight":
        return cls("GL", tuple(lam))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.components)

    def __add__(self, other: "DominantWeight") -> "DominantWeight":
        if (self.group, self.n) != (other.group, other.n):
            raise DomainError("cannot add weights of different groups")
        return DominantWeight(self.group, tuple(a + b for a, b in zip(self.components, other.components)))

    def scaled(self, c) -> "DominantWeight":
        return DominantWeight(self.group, tuple(Fraction(c) * a for a in self.components))

    def ints(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise DomainError(f"weight {self} is not integral")
        return tuple(int(c) for c in self.components)

    def __str__(self):
        return f"{self.group}({','.join(str(c) for c in self.components)})"


def fundamental_weight(n: int, k: int) -> DominantWeight:
    """omega_k = (1,...,1,0,...,0) with k ones, for SP(2n)."""
    if not 1 <= k <= n:
        raise DomainError(f"fundamental weight index {k} out of range 1..{n}")
    return DominantWeight.sp(*([1] * k + [0] * (n - k)))


# ---------------------------------------------------------------------------
# pattern layout

@dataclass(frozen=True)
class GCShape:
    group: str
    n: int
    rows: tuple[tuple[int, ...], ...]   # coordinate indices of each free row, top to bottom
    padded: tuple[bool, ...]            # row carries a trailing constant 0 (weight row first)

    @property
    def dim(self) -> int:
        return sum(len(r) for r in self.rows)


@lru_cache(maxsize=None)
def gc_shape(group: str, n: int) -> GCShape:
    if group == "SP":
        lengths = []
        for k in range(1, n + 1):
            lengths.append(n - k + 1)
            if k < n:
                lengths.append(n - k)
        padded = [True] + [i % 2 == 1 for i in range(len(lengths))]
    elif group == "GL":
        lengths = list(range(n - 1, 0, -1))
        padded = [False] * (len(lengths) + 1)
    else:
        raise DomainError(f"unknown group {group!r}")
    rows, start = [], 0
    for L in lengths:
        rows.append(tuple(range(start, start + L)))
        start += L
    return GCShape(group, n, tuple(rows), tuple(padded))


@lru_cache(maxsize=None)
def gc_system(group: str, n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Interlacing inequalities as pairs (alpha, beta) meaning alpha.lambda + beta.x >= 0."""
    shape = gc_shape(group, n)
    D = shape.dim
    # entries are ('lam', i), ('x', j) or ('zero',)
    upper = [("lam", i) for i in range(n)] + ([("zero",)] if shape.padded[0] else [])
    out = []

    def vec(entry, sign):
        a, b = [0] * n, [0] * D
        if entry[0] == "lam":
            a[entry[1]] = sign
        elif entry[0] == "x":
            b[entry[1]] = sign
        return a, b

    def ge(u, v):  # u >= v
        a1, b1 = vec(u, 1)
        a2, b2 = vec(v, -1)
        row = (tuple(p + q for p, q in zip(a1, a2)), tuple(p + q for p, q in zip(b1, b2)))
        if any(row[0]) or any(row[1]):
            out.append(row)

    for r, idxs in enumerate(shape.rows):
        lower = [("x", j) for j in idxs] + ([("zero",)] if shape.padded[r + 1] else [])
        for pos, c in enumerate(lower):
            if pos < len(upper):
                ge(upper[pos], c)
            if pos + 1 < len(upper):
                ge(c, upper[pos + 1])
        upper = lower
    return tuple(dict.fromkeys(out))


def gc_polytope(w: DominantWeight) -> HPolytope:
    """The Gelfand-Cetlin polytope of a (possibly real) dominant weight."""
    lam = w.components
    D = gc_shape(w.group, w.n).dim
    rows = []
    for alpha, beta in gc_system(w.group, w.n):
        rows.append((beta, -sum((a * l for a, l in zip(alpha, lam)), Fraction(0))))
    return HPolytope.from_rows(D, rows)


def weyl_dim(w: DominantWeight) -> int:
    """Dimension of the irreducible module with highest weight ``w`` (Weyl product formula)."""
    if not w.is_integral:
        raise DomainError(f"Weyl dimension needs an integral weight, got {w}")
    lam = w.components
    n = w.n
    num, den = Fraction(1), Fraction(1)
    if w.group == "GL":
        for i in range(n):
            for j in range(i + 1, n):
                num *= lam[i] - lam[j] + j - i
                den *= j - i
    else:
        rho = [n - i for i in range(n)]
        shifted = [l + r for l, r in zip(lam, rho)]
        for i in range(n):
            for j in range(i + 1, n):
                num *= (shifted[i] - shifted[j]) * (shifted[i] + shifted[j])
                den *= (rho[i] - rho[j]) * (rho[i] + rho[j])
            num *= shifted[i]
            den *= rho[i]
    value = num / den
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------------------
# change of variables  q = A p + B lambda

@dataclass(frozen=True)
class ChangeOfVariables:
    n: int
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    p_order: tuple[tuple[int, int], ...]   # x[i,j] in row-major order
    q_order: tuple[str, ...]               # eta/theta labels, block by block

    @property
    def A_inverse(self) -> tuple[tuple[int, ...], ...]:
        return _int_inverse(self.A)


@lru_cache(maxsize=None)
def _int_inverse(A):
    inv = la.inverse(A)
    if not la.is_integer_matrix(inv):
        raise DomainError("inverse of A is not integral")
    return tuple(tuple(int(v) for v in row) for row in inv)


@lru_cache(maxsize=None)
def change_of_vars_matrices(n: int) -> ChangeOfVariables:
    """Integral matrices A, B with q = A p + B lambda.

    With theta^(0) = lambda, block m = 1..n reads
        eta^(m)_i   = theta^(m-1)_i - p[m, 2n-m+2-i]     (i = 1..n-m+1)
        theta^(m)_i = eta^(m)_{i+1} + p[m, m+i]          (i = 1..n-m)
    """
    if n < 1:
        raise DomainError("rank must be >= 1")
    u = VariableUniverse(n)
    d = u.nx

    def unit_p(i, j):
        v = [0] * d
        v[u.x_index(i, j)] = 1
        return v

    theta = []
    for i in range(n):
        lam = [0] * n
        lam[i] = 1
        theta.append(([0] * d, lam))
    rows, labels = [], []
    for m in range(1, n + 1):
        eta = []
        for i in range(1, n - m + 2):
            pv, lv = theta[i - 1]
            pe = unit_p(m, 2 * n - m + 2 - i)
            eta.append(([a - b for a, b in zip(pv, pe)], list(lv)))
            labels.append(f"eta{m}_{i}")
        rows.extend(eta)
        theta = []
        for i in range(1, n - m + 1):
            pv, lv = eta[i]
            pe = unit_p(m, m + i)
            theta.append(([a + b for a, b in zip(pv, pe)], list(lv)))
            labels.append(f"theta{m}_{i}")
        rows.extend(theta)
    A = tuple(tuple(r[0]) for r in rows)
    B = tuple(tuple(r[1]) for r in rows)
    if len(A) != d or abs(la.det(A)) != 1:
        raise DomainError(f"change of variables for n={n} is not unimodular")
    return ChangeOfVariables(n, A, B, u.x_pairs, tuple(labels))


def gc_to_exponent(cv: ChangeOfVariables, lam: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    """p = A^{-1} (q - B lambda)."""
    Bl = la.matvec(cv.B, lam)
    return tuple(la.matvec(cv.A_inverse, [Fraction(a) - b for a, b in zip(q, Bl)]))


def exponent_to_gc(cv: ChangeOfVariables, lam: Sequence, p: Sequence) -> tuple[Fraction, ...]:
    """q = A p + B lambda."""
    return tuple(a + b for a, b in zip(la.matvec(cv.A, p), la.matvec(cv.B, lam)))


def gc_prime_polytope(w: DominantWeight) -> HPolytope:
    """A^{-1}(Delta_lambda - B lambda): the GC polytope in monomial-exponent coordinates."""
    if w.group != "SP":
        raise DomainError("the transformed GC polytope is defined for SP(2n) only")
    cv = change_of_vars_matrices(w.n)
    Ainv = cv.A_inverse
    shift = la.matvec(Ainv, la.matvec(cv.B, w.components))
    return affine_image(gc_polytope(w), Ainv, [-v for v in shift])


# ---------------------------------------------------------------------------
# Newton polytopes

def newton_polytope(weights: Sequence[DominantWeight], variant: str = "delta",
                    lattice: Sequence[Sequence[int]] | None = None,
                    moment_vertices: Sequence[Sequence] | None = None) -> HPolytope:
    """Polytope fibred over the moment polytope with GC fibres.

    Coordinates are (c, x): ``c`` expresses the weight in the basis ``lattice``
    (the identity, i.e. plain weight coordinates, by default) and ``x`` is the
    pattern (``variant="delta"``) or the monomial exponent (``variant="prime"``).
    The moment polytope is conv(``moment_vertices``), defaulting to conv(weights).
    """
    if not weights:
        raise DomainError("empty weight list")
    if variant not in ("delta", "prime"):
        raise DomainError(f"unknown variant {variant!r}; expected 'delta' or 'prime'")
    n = weights[0].n
    for w in weights:
        if w.group != "SP" or w.n != n:
            raise DomainError("all weights must be SP(2n) weights of one rank")
    L = [list(map(Fraction, col)) for col in (lattice if lattice is not None else _identity_cols(n))]
    r = len(L)
    Lmat = la.transpose(L)            # n x r, lambda = Lmat c
    verts = moment_vertices if moment_vertices is not None else [w.components for w in weights]
    cverts = []
    for v in verts:
        c = la.solve(Lmat, list(v))
        if c is None:
            raise DomainError(f"moment vertex {tuple(map(str, v))} is not in the span of the lattice")
        cverts.append(c)
    D = gc_shape("SP", n).dim
    base = hull(cverts)
    rows = [(tuple(a) + (Fraction(0),) * D, b) for a, b in base.inequalities]
    for alpha, beta in gc_system("SP", n):
        ca = [sum((Fraction(alpha[i]) * Lmat[i][j] for i in range(n)), Fraction(0)) for j in range(r)]
        rows.append((tuple(ca) + tuple(Fraction(b) for b in beta), Fraction(0)))
    P = HPolytope(r + D, tuple(rows))
    if variant == "prime":
        P = affine_image(P, _newton_matrix(n, Lmat))
    return P


def _identity_cols(n):
    return [[int(i == j) for i in range(n)] for j in range(n)]


def _newton_matrix(n: int, Lmat, inverse: bool = False):
    """Block matrix of (c, x) -> (c, A^{-1}(x - B L c)), or its inverse (c, x) -> (c, A x + B L c)."""
    cv = change_of_vars_matrices(n)
    r = len(Lmat[0])
    D = len(cv.A)
    BL = la.matmul(cv.B, Lmat)
    if inverse:
        lower_left, lower_right = BL, cv.A
    else:
        Ainv = cv.A_inverse
        lower_left = [[-v for v in row] for row in la.matmul(Ainv, BL)]
        lower_right = Ainv
    M = []
    for i in range(r):
        M.append([int(i == j) for j in range(r)] + [0] * D)
    for i in range(D):
        M.append(list(lower_left[i]) + list(lower_right[i]))
    return M


def _rank_from_dim(dim: int) -> int:
    # dim = n + n^2
    n = (isqrt(1 + 4 * dim) - 1) // 2
    if n < 1 or n + n * n != dim:
        raise DomainError(f"dimension {dim} is not of the form n + n^2")
    return n


def newton_transform(P: HPolytope, inverse: bool = False) -> HPolytope:
    """(lambda, x) -> (lambda, A^{-1}(x - B lambda)); with ``inverse`` the map back."""
    n = _rank_from_dim(P.dim)
    return affine_image(P, _newton_matrix(n, [[int(i == j) for j in range(n)] for i in range(n)], inverse))
