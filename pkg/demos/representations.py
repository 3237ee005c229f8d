"""Irreducible SP(4)-modules as polynomials on the unipotent group, and their
leading exponents."""

from horotoric.core_algebra import format_polynomial
from horotoric.gc import DominantWeight, gc_prime_polytope
from horotoric.polyhedra import lattice_points
from horotoric.symplectic_rep import generic_unipotent, initial_exponent_set, rep_space, symbolic_inverse

u = generic_unipotent(2)
for row in u.entries:
    print([format_polynomial(e) for e in row])

inv = symbolic_inverse(u)
print("first row of the inverse:", [format_polynomial(e) for e in inv[0]])

V = rep_space(DominantWeight.sp(1, 1))
print("V_(1,1) has dimension", V.dim)
for f in V.basis:
    print("  ", format_polynomial(f))

# leading exponents are exactly the lattice points of the transformed polytope
for lam in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]:
    w = DominantWeight.sp(*lam)
    print(lam, initial_exponent_set(rep_space(w)) == lattice_points(gc_prime_polytope(w)))
