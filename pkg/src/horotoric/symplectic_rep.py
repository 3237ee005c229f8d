"""Irreducible SP(2n)-modules as spaces of polynomial functions on U+.

A vector v of V_lambda becomes the function f_v(u) = xi(u^{-1} v) where xi reads
off the coefficient of the highest weight vector.  Fundamental modules are the
primitive parts of the exterior powers of C^{2n}; every other module is generated
by multiplying functions (Cartan products of fundamentals).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg as la
from .core_algebra import (
    DomainError,
    LaurentPolynomial,
    TermOrder,
    VariableUniverse,
    initial_term,
    okounkov_order,
    row_echelon,
)
from .gc import DominantWeight, fundamental_weight, weyl_dim
from .polyhedra import LatticePointSet

PolyMatrix = tuple[tuple[LaurentPolynomial, ...], ...]


def symplectic_form(n: int) -> list[list[int]]:
    """Antidiagonal J with +1 at (i, 2n+1-i) for i <= n and -1 for i > n (1-based)."""
    N = 2 * n
    J = [[0] * N for _ in range(N)]
    for i in range(N):
        J[i][N - 1 - i] = 1 if i < n else -1
    return J


@dataclass(frozen=True)
class SymbolicUnipotentMatrix:
    n: int
    entries: PolyMatrix

    @property
    def universe(self) -> VariableUniverse:
        return VariableUniverse(self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]


def _poly_matmul(a, b, universe):
    n = len(a)
    zero = LaurentPolynomial.zero(universe)
    out = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            acc = zero
            for k in range(len(b)):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _const_matrix(M, universe):
    return tuple(tuple(universe.const(v) if v else LaurentPolynomial.zero(universe) for v in row) for row in M)


def preserves_form(u: SymbolicUnipotentMatrix) -> bool:
    """u^T J u == J as an identity of polynomial matrices."""
    U = u.universe
    J = _const_matrix(symplectic_form(u.n), U)
    uT = tuple(zip(*u.entries))
    return _poly_matmul(_poly_matmul(uT, J, U), u.entries, U) == J


@lru_cache(maxsize=None)
def generic_unipotent(n: int) -> SymbolicUnipotentMatrix:
    """Generic element of U+: free entries x[i,j] for i+j <= 2n+1, the rest solved from u^T J u = J."""
    if n < 1:
        raise DomainError("rank must be >= 1")
    U = VariableUniverse(n)
    N = 2 * n
    zero = LaurentPolynomial.zero(U)
    u = [[zero] * (N + 1) for _ in range(N + 1)]   # 1-based
    for i in range(1, N + 1):
        u[i][i] = U.const(1)
    for i, j in U.x_pairs:
        u[i][j] = U.x(i, j)

    def eps(i):
        return 1 if i <= n else -1

    def bar(i):
        return N + 1 - i

    # entry (r, s) with r + s > N + 1 comes from the (a, b) = (bar r, s) component:
    # eps(a) u[bar a, b] + eps(bar b) u[bar b, a] + sum_{bar b < i < a} eps(i) u[i, a] u[bar i, b] = 0
    for s in range(1, N + 1):
        for r in range(s - 1, 0, -1):
            if r + s <= N + 1:
                continue
            a, b = bar(r), s
            acc = u[bar(b)][a] * eps(bar(b))
            for i in range(bar(b) + 1, a):
                if u[i][a] and u[bar(i)][b]:
                    acc = acc + (u[i][a] * u[bar(i)][b]) * eps(i)
            u[r][s] = acc * (-eps(a))
    mat = SymbolicUnipotentMatrix(n, tuple(tuple(u[i][1:]) for i in range(1, N + 1)))
    if not preserves_form(mat):
        raise DomainError(f"internal error: generic unipotent for n={n} is not symplectic")
    return mat


@lru_cache(maxsize=None)
def symbolic_inverse(u: SymbolicUnipotentMatrix) -> PolyMatrix:
    """Inverse of a unipotent upper triangular polynomial matrix by back substitution."""
    U = u.universe
    N = len(u.entries)
    zero = LaurentPolynomial.zero(U)
    inv = [[zero] * N for _ in range(N)]
    for j in range(N):
        inv[j][j] = U.const(1)
        for i in range(j - 1, -1, -1):
            acc = zero
            for k in range(i + 1, j + 1):
                if u.entries[i][k] and inv[k][j]:
                    acc = acc + u.entries[i][k] * inv[k][j]
            inv[i][j] = -acc
    return tuple(tuple(row) for row in inv)


# ---------------------------------------------------------------------------
# representation spaces

@dataclass(frozen=True)
class RepSpace:
    weight: DominantWeight
    basis: tuple[LaurentPolynomial, ...]   # reduced echelon, descending leading exponents

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def universe(self) -> VariableUniverse:
        return VariableUniverse(self.weight.n)

    @property
    def highest(self) -> LaurentPolynomial:
        """f_lambda: the constant function 1."""
        return self.universe.const(1)


def _contraction_matrix(n: int, k: int):
    """Matrix of Lambda^k C^{2n} -> Lambda^{k-2} C^{2n}, contraction against J."""
    N = 2 * n
    J = symplectic_form(n)
    src = list(itertools.combinations(range(N), k))
    if k < 2:
        return src, []
    dst = {S: idx for idx, S in enumerate(itertools.combinations(range(N), k - 2))}
    M = [[Fraction(0)] * len(src) for _ in range(len(dst))]
    for col, S in enumerate(src):
        for a, b in itertools.combinations(range(k), 2):
            w = J[S[a]][S[b]]
            if not w:
                continue
            rest = tuple(x for t, x in enumerate(S) if t not in (a, b))
            sign = -1 if (a + b) % 2 else 1   # (-1)^(a+b) with 0-based positions
            M[dst[rest]][col] += sign * w
    return src, M


def _minor(m, rows, cols, U):
    """Determinant of a small polynomial submatrix by Laplace expansion along the first row."""
    if len(rows) == 1:
        return m[rows[0]][cols[0]]
    acc = LaurentPolynomial.zero(U)
    for t, c in enumerate(cols):
        e = m[rows[0]][c]
        if not e:
            continue
        sub = _minor(m, rows[1:], cols[:t] + cols[t + 1:], U)
        if sub:
            acc = acc + (e * sub if t % 2 == 0 else -(e * sub))
    return acc


@lru_cache(maxsize=None)
def fundamental_rep(n: int, k: int) -> RepSpace:
    """V_{omega_k} as the span of f_v(u) = coefficient of e_1^...^e_k in Lambda^k(u^{-1}) v."""
    if not 1 <= k <= n:
        raise DomainError(f"fundamental index {k} out of range 1..{n}")
    U = VariableUniverse(n)
    inv = symbolic_inverse(generic_unipotent(n))
    src, C = _contraction_matrix(n, k)
    kernel = la.nullspace(C, len(src)) if C else la.identity(len(src))
    top = tuple(range(k))
    minors = {}
    polys = []
    for v in kernel:
        f = LaurentPolynomial.zero(U)
        for coef, S in zip(v, src):
            if not coef:
                continue
            if S not in minors:
                minors[S] = _minor(inv, top, S, U)
            f = f + minors[S].scale(coef)
        polys.append(f)
    basis = row_echelon(polys)
    w = fundamental_weight(n, k)
    if len(basis) != weyl_dim(w):
        raise DomainError(f"internal error: V_omega_{k} has dimension {len(basis)}, expected {weyl_dim(w)}")
    return RepSpace(w, tuple(basis))


def trivial_rep(n: int) -> RepSpace:
    U = VariableUniverse(n)
    return RepSpace(DominantWeight.sp(*([0] * n)), (U.const(1),))


def cartan_product(S: RepSpace, T: RepSpace) -> RepSpace:
    """The span of all products f g, which is the image of V_lambda (x) V_mu -> V_{lambda+mu}."""
    if S.weight.n != T.weight.n:
        raise DomainError("cartan product of representations of different rank")
    w = S.weight + T.weight
    basis = row_echelon(f * g for f in S.basis for g in T.basis)
    if len(basis) != weyl_dim(w):
        raise DomainError(
            f"product space has dimension {len(basis)} but V_{w} has dimension {weyl_dim(w)}"
        )
    return RepSpace(w, tuple(basis))


@lru_cache(maxsize=None)
def _rep_space(n: int, lam: tuple[int, ...]) -> RepSpace:
    if not any(lam):
        return trivial_rep(n)
    # peel off the largest fundamental weight present
    k = max(i + 1 for i in range(n) if lam[i] > 0 and (i == n - 1 or lam[i] > lam[i + 1]))
    rest = tuple(l - (1 if i < k else 0) for i, l in enumerate(lam))
    if not any(rest):
        return fundamental_rep(n, k)
    return cartan_product(_rep_space(n, rest), fundamental_rep(n, k))


def rep_space(w: DominantWeight) -> RepSpace:
    if w.group != "SP":
        raise DomainError("representation spaces are built for SP(2n) only")
    return _rep_space(w.n, w.ints())


def initial_exponent_set(S: RepSpace, order: TermOrder | None = None) -> LatticePointSet:
    """x-parts of the leading exponents over the space (one per echelon basis element)."""
    order = order or okounkov_order(S.universe)
    nx = S.universe.nx
    return LatticePointSet(initial_term(f, order)[1].exps[:nx] for f in S.basis)
