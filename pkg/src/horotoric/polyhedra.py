"""Exact rational H-polytopes: dilation, integral affine images, lattice points,
bounded-level semigroup generators, vertex enumeration and Minkowski sums.

An :class:`HPolytope` is the solution set of finitely many inequalities
``<a, z> >= b`` with rational ``a`` and ``b``.  Enumeration bounds come from
interval propagation over the inequality system, so no LP solver is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterable, NamedTuple, Sequence

from . import _linalg as la
from .core_algebra import DomainError

MAX_VERTEX_DIM = 12


class UnboundedError(DomainError):
    pass


Inequality = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class HPolytope:
    dim: int
    inequalities: tuple[Inequality, ...]

    def __post_init__(self):
        clean = []
        for a, b in self.inequalities:
            a = tuple(Fraction(v) for v in a)
            if len(a) != self.dim:
                raise DomainError(f"inequality of length {len(a)} in a polytope of dimension {self.dim}")
            clean.append((a, Fraction(b)))
        object.__setattr__(self, "inequalities", tuple(clean))

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[tuple[Sequence, object]]) -> "HPolytope":
        return cls(dim, tuple((tuple(a), b) for a, b in rows))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HPolytope":
        d = len(lower)
        rows = []
        for j in range(d):
            e = [0] * d
            e[j] = 1
            rows.append((e, lower[j]))
            e = [0] * d
            e[j] = -1
            rows.append((e, -Fraction(upper[j])))
        return cls.from_rows(d, rows)

    @classmethod
    def point(cls, p: Sequence) -> "HPolytope":
        return cls.box(p, p)

    def contains(self, z: Sequence) -> bool:
        return all(sum(x * y for x, y in zip(a, z)) >= b for a, b in self.inequalities)

    def with_inequalities(self, rows: Iterable[Inequality]) -> "HPolytope":
        return HPolytope(self.dim, self.inequalities + tuple(rows))

    def canonical(self) -> frozenset:
        """Inequality set with each row scaled to primitive integers (for equality tests)."""
        out = set()
        for a, b in self.inequalities:
            row = la.primitive(list(a) + [b])
            out.add(row)
        return frozenset(out)


class LatticePointSet(tuple):
    """Sorted, duplicate-free tuple of integer points."""

    def __new__(cls, points: Iterable[Sequence[int]] = ()):
        clean = set()
        for p in points:
            q = tuple(Fraction(v) for v in p)
            if any(v.denominator != 1 for v in q):
                raise DomainError(f"{tuple(map(str, q))} is not a lattice point")
            clean.add(tuple(int(v) for v in q))
        return super().__new__(cls, sorted(clean))


@dataclass(frozen=True)
class ConeOverPolytope:
    """{(z, k) : k >= 0, z in k * base}."""

    base: HPolytope

    @property
    def dim(self) -> int:
        return self.base.dim + 1


# ---------------------------------------------------------------------------
# bounds

def propagate_bounds(P: HPolytope, integral: bool = False, max_rounds: int | None = None):
    """Per-coordinate (lower, upper) bounds by interval propagation; ``None`` means infinite.

    With ``integral=True`` the bounds are rounded inward to integers, which is valid
    for lattice points only.  Returns ``None`` when the box is detected to be empty.
    """
    d = P.dim
    lo: list[Fraction | None] = [None] * d
    hi: list[Fraction | None] = [None] * d
    rows = [(a, b) for a, b in P.inequalities]
    for a, b in rows:
        if not any(a) and b > 0:
            return None
    rounds = max_rounds if max_rounds is not None else 50 + 10 * d
    for _ in range(rounds):
        changed = False
        for a, b in rows:
            # a.z >= b  ->  a_j z_j >= b - sum_{l != j} max(a_l z_l)
            support = [j for j in range(d) if a[j]]
            tops = {}
            n_inf = 0
            inf_j = -1
            total = Fraction(0)
            for j in support:
                m = _max_term(a[j], lo[j], hi[j])
                tops[j] = m
                if m is None:
                    n_inf += 1
                    inf_j = j
                else:
                    total += m
            if n_inf > 1:
                continue
            for j in support:
                if n_inf == 1 and j != inf_j:
                    continue
                rest = total - (tops[j] if tops[j] is not None else 0)
                bound = (b - rest) / a[j]
                if a[j] > 0:
                    if integral:
                        bound = Fraction(ceil(bound))
                    if lo[j] is None or bound > lo[j]:
                        lo[j] = bound
                        changed = True
                else:
                    if integral:
                        bound = Fraction(floor(bound))
                    if hi[j] is None or bound < hi[j]:
                        hi[j] = bound
                        changed = True
                if lo[j] is not None and hi[j] is not None and lo[j] > hi[j]:
                    return None
        if not changed:
            break
    return list(zip(lo, hi))


def _max_term(a: Fraction, lo, hi):
    if a > 0:
        return None if hi is None else a * hi
    return None if lo is None else a * lo


def _finite_bounds(P: HPolytope, integral: bool):
    bounds = propagate_bounds(P, integral=integral)
    if bounds is None:
        return None
    for j, (l, h) in enumerate(bounds):
        if l is None or h is None:
            side = "lower" if l is None else "upper"
            raise UnboundedError(f"coordinate {j} has no derivable {side} bound")
    return bounds


# ---------------------------------------------------------------------------
# basic constructions

def dilate(P: HPolytope, k) -> HPolytope:
    k = Fraction(k)
    if k < 0:
        raise DomainError(f"dilation factor must be nonnegative, got {k}")
    return HPolytope(P.dim, tuple((a, k * b) for a, b in P.inequalities))


def affine_image(P: HPolytope, M: Sequence[Sequence], c: Sequence | None = None) -> HPolytope:
    """{M z + c : z in P} for a square unimodular integer matrix M.

    Coordinate bounds of P, when derivable, are pushed forward as extra (redundant)
    inequalities so that the image stays enumerable by interval propagation.
    """
    d = P.dim
    M = la.to_fraction_matrix(M)
    if len(M) != d or any(len(row) != d for row in M):
        raise DomainError(f"affine map must be a {d}x{d} matrix")
    if not la.is_integer_matrix(M) or abs(la.det(M)) != 1:
        raise DomainError("affine map is not unimodular (integer entries, determinant +-1)")
    c = [Fraction(v) for v in (c if c is not None else [0] * d)]
    Minv = la.inverse(M)
    rows = []
    for a, b in P.inequalities:
        # a.z >= b with z = Minv (w - c)
        aM = [sum((a[i] * Minv[i][j] for i in range(d)), Fraction(0)) for j in range(d)]
        rows.append((tuple(aM), b + sum((x * y for x, y in zip(aM, c)), Fraction(0))))
    bounds = propagate_bounds(P)
    if bounds is not None and all(l is not None and h is not None for l, h in bounds):
        for i in range(d):
            lo = c[i] + sum((m * (l if m > 0 else h) for m, (l, h) in zip(M[i], bounds)), Fraction(0))
            hi = c[i] + sum((m * (h if m > 0 else l) for m, (l, h) in zip(M[i], bounds)), Fraction(0))
            e = [Fraction(0)] * d
            e[i] = Fraction(1)
            rows.append((tuple(e), lo))
            e = [Fraction(0)] * d
            e[i] = Fraction(-1)
            rows.append((tuple(e), -hi))
    return HPolytope(d, tuple(rows))


# ---------------------------------------------------------------------------
# lattice points

def lattice_points(P: HPolytope) -> LatticePointSet:
    """All integer points of P, in lexicographic order."""
    return LatticePointSet(iter_lattice_points(P))


def iter_lattice_points(P: HPolytope):
    d = P.dim
    bounds = _finite_bounds(P, integral=True)
    if bounds is None:
        return
    lo = [int(l) for l, _ in bounds]
    hi = [int(h) for _, h in bounds]
    if d == 0:
        if all(b <= 0 for _, b in P.inequalities):
            yield ()
        return
    A, B = [], []
    for a, b in P.inequalities:
        den = lcm(*(x.denominator for x in a), b.denominator)
        A.append([int(x * den) for x in a])
        B.append(int(b * den))
    m = len(A)
    # suffix maxima of each row over the remaining box
    suffix = [[0] * (d + 1) for _ in range(m)]
    for i in range(m):
        for j in range(d - 1, -1, -1):
            a = A[i][j]
            suffix[i][j] = suffix[i][j + 1] + (a * hi[j] if a > 0 else a * lo[j])
    for i in range(m):
        if not any(A[i]) and B[i] > 0:
            return
    by_coord = [[i for i in range(m) if A[i][j]] for j in range(d)]
    partial = [0] * m
    z = [0] * d

    def rec(j):
        low, high = lo[j], hi[j]
        for i in by_coord[j]:
            a = A[i][j]
            need = B[i] - partial[i] - suffix[i][j + 1]
            if a > 0:
                low = max(low, -((-need) // a))
            else:
                high = min(high, need // a)
            if low > high:
                return
        for v in range(low, high + 1):
            z[j] = v
            if j == d - 1:
                yield tuple(z)
            else:
                for i in by_coord[j]:
                    partial[i] += A[i][j] * v
                yield from rec(j + 1)
                for i in by_coord[j]:
                    partial[i] -= A[i][j] * v

    yield from rec(0)


def count_lattice_points(P: HPolytope) -> int:
    return sum(1 for _ in iter_lattice_points(P))


def cone_lattice_points(C: ConeOverPolytope, k: int) -> LatticePointSet:
    """Lattice points of the level-k slice (k*base, k)."""
    if k < 0:
        raise DomainError("level must be nonnegative")
    return LatticePointSet(p + (k,) for p in iter_lattice_points(dilate(C.base, k)))


class SemigroupGenerators(NamedTuple):
    generators: LatticePointSet
    certified: bool
    level: int


def semigroup_generators(C: ConeOverPolytope, K: int) -> SemigroupGenerators:
    """Indecomposable lattice points of the cone at levels 1..K.

    ``certified`` reports whether every lattice point of level <= K is a nonnegative
    integer combination of the returned points (an independent re-check).
    """
    if K < 1:
        raise DomainError("level bound must be >= 1")
    levels = {k: cone_lattice_points(C, k) for k in range(1, K + 1)}
    sets = {k: set(v) for k, v in levels.items()}
    gens = []
    for k in range(1, K + 1):
        for p in levels[k]:
            decomposable = False
            for j in range(1, k // 2 + 1):
                for q in levels[j]:
                    r = tuple(a - b for a, b in zip(p, q))
                    if r in sets[k - j]:
                        decomposable = True
                        break
                if decomposable:
                    break
            if not decomposable:
                gens.append(p)
    gens = LatticePointSet(gens)
    return SemigroupGenerators(gens, generated_up_to(gens, levels, K), K)


def generated_up_to(generators: Sequence[Sequence[int]], levels: dict[int, Sequence], K: int) -> bool:
    """Does the semigroup spanned by ``generators`` contain every point of ``levels[k]``, k <= K?

    The last coordinate of every point is its level.
    """
    reached: dict[int, set] = {0: {tuple([0] * (len(generators[0]) if generators else 0))}}
    for k in range(1, K + 1):
        cur = set()
        for g in generators:
            lvl = g[-1]
            if lvl < 1 or lvl > k:
                continue
            for q in reached.get(k - lvl, ()):
                cur.add(tuple(a + b for a, b in zip(q, g)))
        reached[k] = cur
        if not set(map(tuple, levels.get(k, ()))) <= cur:
            return False
    return True


# ---------------------------------------------------------------------------
# double description

def extreme_rays(M: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : M x >= 0} as primitive integer vectors.

    Raises DomainError when M does not have full column rank (cone not pointed).
    """
    rows = [tuple(Fraction(v) for v in r) for r in M]
    if not rows:
        raise DomainError("cone without constraints is not pointed")
    m = len(rows[0])
    chosen: list[int] = []
    basis_rows: list[tuple] = []
    for i, r in enumerate(rows):
        if la.rank(basis_rows + [r]) > len(basis_rows):
            basis_rows.append(r)
            chosen.append(i)
            if len(chosen) == m:
                break
    if len(chosen) < m:
        raise DomainError("constraint matrix is rank deficient; cone is not pointed")
    inv = la.inverse(basis_rows)
    rays = [la.primitive([inv[i][j] for i in range(m)]) for j in range(m)]
    processed = list(chosen)

    def dot(r, x):
        return sum(a * b for a, b in zip(r, x))

    for i, r in enumerate(rows):
        if i in chosen:
            continue
        vals = [dot(r, x) for x in rays]
        pos = [x for x, v in zip(rays, vals) if v > 0]
        zer = [x for x, v in zip(rays, vals) if v == 0]
        neg = [(x, v) for x, v in zip(rays, vals) if v < 0]
        if not neg:
            processed.append(i)
            continue
        zsets = {x: frozenset(k for k in processed if dot(rows[k], x) == 0) for x in rays}
        new = []
        pos_v = [(x, v) for x, v in zip(rays, vals) if v > 0]
        for (p, vp), (q, vq) in itertools.product(pos_v, neg):
            common = zsets[p] & zsets[q]
            if len(common) < m - 2:
                continue
            if any(common <= zsets[x] for x in rays if x != p and x != q):
                continue
            combo = [vp * b - vq * a for a, b in zip(p, q)]
            new.append(la.primitive(combo))
        rays = pos + zer + new
        rays = list(dict.fromkeys(rays))
        processed.append(i)
    return sorted(set(rays))


def vertices(P: HPolytope) -> list[tuple[Fraction, ...]]:
    """Exact vertex set of a bounded polytope (double description), sorted."""
    d = P.dim
    if d > MAX_VERTEX_DIM:
        raise DomainError(f"vertex enumeration limited to dimension {MAX_VERTEX_DIM}, got {d}")
    if _finite_bounds(P, integral=False) is None:
        return []
    # homogenize: (z, s) with a.z - b s >= 0, s >= 0
    M = [list(a) + [-b] for a, b in P.inequalities]
    M.append([Fraction(0)] * d + [Fraction(1)])
    if la.rank(M) < d + 1:
        # a line in the recession cone of a bounded system means the system is empty
        return []
    out = set()
    for ray in extreme_rays(M):
        s = ray[-1]
        if s > 0:
            out.add(tuple(Fraction(v, s) for v in ray[:-1]))
    return sorted(out)


def hull(points: Sequence[Sequence]) -> HPolytope:
    """H-representation of the convex hull of finitely many rational points.

    Includes the affine-hull equalities (as pairs of inequalities), the facet
    inequalities, and the coordinate bounding box.
    """
    pts = [tuple(Fraction(v) for v in p) for p in points]
    if not pts:
        raise DomainError("convex hull of an empty point set")
    d = len(pts[0])
    if d > MAX_VERTEX_DIM:
        raise DomainError(f"convex hull limited to dimension {MAX_VERTEX_DIM}, got {d}")
    # polar cone {(a, b) : a.v - b >= 0 for all v}; its lineality is the affine hull
    V = [list(p) + [Fraction(-1)] for p in pts]
    lineality = la.nullspace(V, d + 1)
    rows: list[Inequality] = []
    for l in lineality:
        a, b = tuple(l[:d]), l[d]
        rows.append((a, b))
        rows.append((tuple(-x for x in a), -b))
    cone_rows = V + [list(l) for l in lineality] + [[-x for x in l] for l in lineality]
    if len(lineality) < d + 1:
        for ray in extreme_rays(cone_rows):
            a = tuple(Fraction(x) for x in ray[:d])
            if any(a):
                rows.append((a, Fraction(ray[d])))
    for j in range(d):
        lo = min(p[j] for p in pts)
        hi = max(p[j] for p in pts)
        e = [Fraction(0)] * d
        e[j] = Fraction(1)
        rows.append((tuple(e), lo))
        e = [Fraction(0)] * d
        e[j] = Fraction(-1)
        rows.append((tuple(e), -hi))
    return HPolytope(d, tuple(dict.fromkeys(rows)))


def minkowski_sum(P: HPolytope, Q: HPolytope) -> HPolytope:
    if P.dim != Q.dim:
        raise DomainError(f"dimension mismatch {P.dim} vs {Q.dim}")
    if P.dim > MAX_VERTEX_DIM:
        raise DomainError(f"Minkowski sum limited to dimension {MAX_VERTEX_DIM}")
    vp, vq = vertices(P), vertices(Q)
    if not vp or not vq:
        raise DomainError("Minkowski sum with an empty polytope")
    sums = {tuple(a + b for a, b in zip(p, q)) for p in vp for q in vq}
    return hull(sorted(sums))
