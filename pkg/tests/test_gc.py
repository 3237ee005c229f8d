from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from horotoric import _linalg as la
from horotoric.core_algebra import DomainError
from horotoric.gc import (
    DominantWeight,
    change_of_vars_matrices,
    exponent_to_gc,
    fundamental_weight,
    gc_polytope,
    gc_prime_polytope,
    gc_to_exponent,
    newton_polytope,
    newton_transform,
    weyl_dim,
)
from horotoric.polyhedra import count_lattice_points, dilate, lattice_points, minkowski_sum, vertices

# dimensions of C_2 and C_3 irreducibles from standard tables
KNOWN_SP = {
    (0, 0): 1, (1, 0): 4, (1, 1): 5, (2, 0): 10, (2, 1): 16, (2, 2): 14, (3, 0): 20, (3, 1): 35,
    (1, 0, 0): 6, (1, 1, 0): 14, (1, 1, 1): 14, (2, 0, 0): 21,
}


def ssyt_count(lam):
    """Semistandard tableaux of shape lam with entries 1..len(lam), by brute force."""
    n = len(lam)
    cells = [(i, j) for i in range(n) for j in range(lam[i])]
    count = 0
    for filling in product(range(1, n + 1), repeat=len(cells)):
        T = dict(zip(cells, filling))
        if all(T[(i, j)] <= T[(i, j + 1)] for i, j in cells if (i, j + 1) in T) and \
           all(T[(i, j)] < T[(i + 1, j)] for i, j in cells if (i + 1, j) in T):
            count += 1
    return count


def sp_weights(n, top):
    def rec(prefix, bound):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(bound + 1):
            yield from rec(prefix + [v], v)
    yield from rec([], top)


def test_weyl_dim_known_values():
    for lam, d in KNOWN_SP.items():
        assert weyl_dim(DominantWeight.sp(*lam)) == d


def test_weyl_dim_gl_against_tableaux():
    for lam in [(2, 1, 0), (3, 1, 0), (2, 2, 1), (4, 0), (1, 1, 0)]:
        assert weyl_dim(DominantWeight.gl(*lam)) == ssyt_count(lam)
    for k in range(6):
        assert weyl_dim(DominantWeight.gl(k, 0)) == k + 1


def test_weight_validation():
    with pytest.raises(DomainError):
        DominantWeight.sp(0, 1)
    with pytest.raises(DomainError):
        DominantWeight.sp(1, -1)
    with pytest.raises(DomainError):
        weyl_dim(DominantWeight.sp(Fraction(1, 2), 0))
    # real weights are fine for polytopes
    assert count_lattice_points(gc_polytope(DominantWeight.sp(Fraction(3, 2), 0))) >= 1


def test_gc_examples():
    assert lattice_points(gc_polytope(DominantWeight.sp(0, 0))) == ((0, 0, 0, 0),)
    assert count_lattice_points(gc_polytope(DominantWeight.sp(1, 0))) == 4
    assert count_lattice_points(gc_polytope(DominantWeight.gl(2, 1, 0))) == 8


@pytest.mark.parametrize("n,top", [(2, 3), (3, 3)])
def test_gc_count_is_weyl_dim_sp(n, top):
    for lam in sp_weights(n, top):
        w = DominantWeight.sp(*lam)
        assert count_lattice_points(gc_polytope(w)) == weyl_dim(w)


def test_gc_count_is_weyl_dim_gl():
    for lam in [(3, 1, 0), (2, 2, 0), (3, 3, 1), (4, 2, 1), (1, -1, -2), (2, 0)]:
        w = DominantWeight.gl(*lam)
        assert count_lattice_points(gc_polytope(w)) == weyl_dim(w)


@given(st.sampled_from(list(sp_weights(2, 2))), st.integers(1, 3))
def test_dilation_is_scaling_of_weight(lam, c):
    P = gc_polytope(DominantWeight.sp(*lam))
    assert dilate(P, c).canonical() == gc_polytope(DominantWeight.sp(*(c * v for v in lam))).canonical()


def test_linearity_fundamentals():
    a, b = gc_polytope(DominantWeight.sp(1, 0)), gc_polytope(DominantWeight.sp(0, 0))
    assert set(vertices(minkowski_sum(a, b))) == set(vertices(a))


def test_change_of_variables_n2():
    cv = change_of_vars_matrices(2)
    assert cv.A == ((0, 0, -1, 0), (0, -1, 0, 0), (1, -1, 0, 0), (1, -1, 0, -1))
    assert cv.B == ((1, 0), (0, 1), (0, 1), (0, 1))
    assert cv.q_order == ("eta1_1", "eta1_2", "theta1_1", "eta2_1")


@pytest.mark.parametrize("n", range(1, 6))
def test_unimodular(n):
    cv = change_of_vars_matrices(n)
    assert abs(la.det(cv.A)) == 1
    assert la.is_integer_matrix(cv.A_inverse)
    assert la.matmul(cv.A, cv.A_inverse) == la.identity(n * n)


@given(st.sampled_from([(1, 0), (1, 1), (2, 1)]), st.integers(0, 5))
def test_prime_counts_agree(lam, k):
    w = DominantWeight.sp(*lam)
    assert count_lattice_points(dilate(gc_polytope(w), k)) == count_lattice_points(dilate(gc_prime_polytope(w), k))


def test_prime_examples():
    assert lattice_points(gc_prime_polytope(DominantWeight.sp(0, 0))) == ((0, 0, 0, 0),)
    pts = lattice_points(gc_prime_polytope(DominantWeight.sp(1, 0)))
    assert len(pts) == 4 and (0, 0, 0, 0) in pts
    cv = change_of_vars_matrices(2)
    # the zero exponent comes from the pattern B lambda
    assert exponent_to_gc(cv, (1, 0), (0, 0, 0, 0)) == (1, 0, 0, 0)
    images = {tuple(int(v) for v in gc_to_exponent(cv, (1, 0), q)) for q in lattice_points(gc_polytope(DominantWeight.sp(1, 0)))}
    assert images == set(pts)
    with pytest.raises(DomainError):
        gc_prime_polytope(DominantWeight.gl(1, 0))


def test_fundamental_weight():
    assert fundamental_weight(3, 2).components == (1, 1, 0)


def test_newton_examples():
    P = newton_polytope([DominantWeight.sp(0, 0)])
    assert lattice_points(P) == ((0,) * 6,)
    P = newton_polytope([DominantWeight.sp(1, 0)])
    assert count_lattice_points(P) == 4
    P = newton_polytope([DominantWeight.sp(1, 0), DominantWeight.sp(1, 1)])
    assert count_lattice_points(P) == 9
    Q = newton_polytope([DominantWeight.sp(1, 0), DominantWeight.sp(1, 1)], "prime")
    assert count_lattice_points(Q) == 9
    with pytest.raises(DomainError):
        newton_polytope([])
    with pytest.raises(DomainError):
        newton_polytope([DominantWeight.sp(1, 0), DominantWeight.sp(1, 0, 0)])


def test_newton_transform_round_trip():
    P = newton_polytope([DominantWeight.sp(1, 0), DominantWeight.sp(2, 2)])
    there = newton_transform(P)
    back = newton_transform(there, inverse=True)
    assert lattice_points(back) == lattice_points(P)
    assert lattice_points(there) == lattice_points(newton_polytope([DominantWeight.sp(1, 0), DominantWeight.sp(2, 2)], "prime"))
    for k in range(1, 3):
        assert count_lattice_points(dilate(there, k)) == count_lattice_points(dilate(P, k))
