from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from horotoric.core_algebra import DomainError
from horotoric.gc import DominantWeight, change_of_vars_matrices, gc_polytope, gc_prime_polytope, weyl_dim
from horotoric import _linalg as la
from horotoric.polyhedra import (
    ConeOverPolytope,
    HPolytope,
    UnboundedError,
    affine_image,
    cone_lattice_points,
    count_lattice_points,
    dilate,
    generated_up_to,
    hull,
    lattice_points,
    minkowski_sum,
    semigroup_generators,
    vertices,
)


def brute_force(P, lo, hi):
    """Points of the box [lo, hi]^d satisfying every inequality."""
    return sorted(p for p in product(range(lo, hi + 1), repeat=P.dim) if P.contains(p))


SQUARE = HPolytope.box([0, 0], [1, 1])
SEGMENT = HPolytope.box([0], [1])


def test_unit_square():
    assert len(lattice_points(SQUARE)) == 4
    assert len(vertices(SQUARE)) == 4


def test_gc_10_points():
    pts = lattice_points(gc_polytope(DominantWeight.sp(1, 0)))
    assert pts == ((0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 1, 0), (1, 0, 1, 1))
    assert list(pts) == brute_force(gc_polytope(DominantWeight.sp(1, 0)), -1, 2)
    assert count_lattice_points(gc_polytope(DominantWeight.sp(1, 1))) == 5


def test_dilate():
    P = gc_polytope(DominantWeight.sp(1, 0))
    assert dilate(P, 1).canonical() == P.canonical()
    assert lattice_points(dilate(P, 2)) == lattice_points(gc_polytope(DominantWeight.sp(2, 0)))
    assert lattice_points(dilate(P, 0)) == ((0, 0, 0, 0),)
    with pytest.raises(DomainError):
        dilate(P, -1)


def test_unbounded_error_names_coordinate():
    P = HPolytope.from_rows(2, [((1, 0), 0), ((-1, 0), -1), ((0, 1), 0)])
    with pytest.raises(UnboundedError, match="1"):
        lattice_points(P)


def test_empty_polytope():
    P = HPolytope.from_rows(1, [((1,), 1), ((-1,), 0)])
    assert lattice_points(P) == ()


def test_affine_image_examples():
    cube = HPolytope.box([0, 0, 0], [1, 1, 1])
    assert lattice_points(affine_image(cube, la.identity(3))) == lattice_points(cube)
    neg = affine_image(cube, [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert set(lattice_points(neg)) == set(product((-1, 0), repeat=3))
    with pytest.raises(DomainError):
        affine_image(cube, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    cv = change_of_vars_matrices(2)
    lam = (1, 0)
    Ainv = cv.A_inverse
    c = [-v for v in la.matvec(Ainv, la.matvec(cv.B, lam))]
    P = affine_image(gc_polytope(DominantWeight.sp(*lam)), Ainv, c)
    assert len(lattice_points(P)) == 4
    assert lattice_points(P) == lattice_points(gc_prime_polytope(DominantWeight.sp(*lam)))


def unimodular_matrices():
    """Products of a few elementary integer row operations."""
    def build(ops):
        M = la.identity(3)
        for i, j, c in ops:
            if i != j:
                M = la.matmul([[1 if a == b else (c if (a, b) == (i, j) else 0) for b in range(3)] for a in range(3)], M)
        return M
    return st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)), max_size=4).map(build)


@given(unimodular_matrices(), st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)))
def test_unimodular_image_preserves_count(M, c, upper):
    P = HPolytope.from_rows(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0),
                                ((-1, -1, -1), -sum(upper)), ((-1, 0, 0), -upper[0])])
    Q = affine_image(P, M, c)
    assert count_lattice_points(Q) == count_lattice_points(P)
    image = {tuple(a + b for a, b in zip(la.matvec(M, p), c)) for p in lattice_points(P)}
    assert image == set(lattice_points(Q))


def test_cone_lattice_points():
    C = ConeOverPolytope(SEGMENT)
    assert cone_lattice_points(C, 0) == ((0, 0),)
    assert cone_lattice_points(C, 2) == ((0, 2), (1, 2), (2, 2))


def test_semigroup_generators():
    sg = semigroup_generators(ConeOverPolytope(SEGMENT), 3)
    assert set(sg.generators) == {(0, 1), (1, 1)} and sg.certified
    half = HPolytope.from_rows(1, [((1,), 0), ((-1,), Fraction(-3, 2))])
    sg = semigroup_generators(ConeOverPolytope(half), 2)
    assert (3, 2) in sg.generators
    P = gc_prime_polytope(DominantWeight.sp(1, 0))
    sg = semigroup_generators(ConeOverPolytope(P), 3)
    assert len(sg.generators) == 4 and all(g[-1] == 1 for g in sg.generators) and sg.certified


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_semigroup_generation_recheck_is_idempotent(a, b, K):
    P = HPolytope.from_rows(2, [((1, 0), 0), ((0, 1), 0), ((-b, -a), -a * b)])   # triangle
    C = ConeOverPolytope(P)
    sg = semigroup_generators(C, K)
    levels = {k: cone_lattice_points(C, k) for k in range(K + 1)}
    assert generated_up_to(sg.generators, levels, K) == sg.certified


def test_vertices_examples():
    simplex = HPolytope.from_rows(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((-1, -1, -1), -1)])
    assert len(vertices(simplex)) == 4
    verts = set(vertices(gc_polytope(DominantWeight.sp(1, 0))))
    assert (0, 0, 0, 0) in verts and (1, 0, 1, 1) in verts


def test_hull_recovers_square():
    H = hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert set(vertices(H)) == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_minkowski_examples():
    P = gc_polytope(DominantWeight.sp(1, 0))
    assert set(vertices(minkowski_sum(P, HPolytope.point([0] * 4)))) == set(vertices(P))
    assert lattice_points(minkowski_sum(SEGMENT, SEGMENT)) == ((0,), (1,), (2,))
    lhs = minkowski_sum(gc_polytope(DominantWeight.sp(1, 0)), gc_polytope(DominantWeight.sp(0, 0)))
    assert set(vertices(lhs)) == set(vertices(P))
    # omega_1 + omega_2 in the standard basis is (1,0) + (1,1)
    s = minkowski_sum(gc_polytope(DominantWeight.sp(1, 0)), gc_polytope(DominantWeight.sp(1, 1)))
    assert set(vertices(s)) == set(vertices(gc_polytope(DominantWeight.sp(2, 1))))


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_minkowski_contains_pairwise_sums(a, b, c, d):
    P = HPolytope.box([0, 0], [a, b])
    Q = hull([(0, 0), (c, 0), (0, d)])
    S = set(lattice_points(minkowski_sum(P, Q)))
    assert {tuple(x + y for x, y in zip(p, q)) for p in lattice_points(P) for q in lattice_points(Q)} <= S


@given(st.sampled_from([(1, 0), (1, 1), (2, 1)]), st.integers(1, 3))
def test_dilation_contains_k_fold_sums(lam, k):
    P = gc_polytope(DominantWeight.sp(*lam))
    pts = lattice_points(P)
    sums = {tuple([0] * P.dim)}
    for _ in range(k):
        sums = {tuple(a + b for a, b in zip(s, p)) for s in sums for p in pts}
    assert sums <= set(lattice_points(dilate(P, k)))


def test_weyl_matches_count_small():
    assert count_lattice_points(gc_polytope(DominantWeight.sp(2, 0))) == weyl_dim(DominantWeight.sp(2, 0)) == 10
