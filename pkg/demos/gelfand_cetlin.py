"""Gelfand-Cetlin polytopes for SP(4): lattice points, Weyl dimensions, and the
unimodular change to exponent coordinates."""

from horotoric.gc import DominantWeight, change_of_vars_matrices, gc_polytope, gc_prime_polytope, weyl_dim
from horotoric.polyhedra import count_lattice_points, dilate, lattice_points, minkowski_sum, vertices

w = DominantWeight.sp(1, 0)
P = gc_polytope(w)
print("patterns under (1,0):", list(lattice_points(P)))
print("weyl dimension:", weyl_dim(w))

# counts match dimensions for every small weight
for lam in [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 1)]:
    w = DominantWeight.sp(*lam)
    print(lam, count_lattice_points(gc_polytope(w)), weyl_dim(w))

# the polytope is additive in the weight
a, b = gc_polytope(DominantWeight.sp(1, 0)), gc_polytope(DominantWeight.sp(1, 1))
same = set(vertices(minkowski_sum(a, b))) == set(vertices(gc_polytope(DominantWeight.sp(2, 1))))
print("Delta(1,0) + Delta(1,1) == Delta(2,1):", same)

cv = change_of_vars_matrices(2)
print("A =", cv.A)
print("B =", cv.B)
Q = gc_prime_polytope(DominantWeight.sp(2, 1))
for k in range(1, 4):   # integral equivalence: same counts at every dilation
    print(k, count_lattice_points(dilate(gc_polytope(DominantWeight.sp(2, 1)), k)), count_lattice_points(dilate(Q, k)))
