"""A one-parameter family from a ring element to its initial term, for P^3 and
for the SP(4) flag variety."""

from fractions import Fraction

from horotoric.core_algebra import format_polynomial, row_echelon
from horotoric.sagbi import (
    degenerate,
    degenerate_generators,
    flag_variety_spec,
    flat_family_member,
    hilbert_function,
    projective_space_spec,
    psi_embed,
    realizing_weight,
)

E = psi_embed(projective_space_spec())
g = E.generators
f = g[0] * g[1] - g[2] * g[3]
print("weight vector:", realizing_weight(E, 2, extra=f.terms))
for tau in [1, Fraction(1, 2), Fraction(1, 10), 0]:
    print(tau, "->", format_polynomial(flat_family_member(f, E, tau, 2)))

F = psi_embed(flag_variety_spec())
d = degenerate(F, 3)
print(len(d.generators), "generators,", len(d.binomials), "quadratic relations")

# dimensions stay put along the family
for tau in [Fraction(1, 3), 0]:
    gens = degenerate_generators(F, tau, 2)
    level = [F.universe.const(1)]
    dims = []
    for k in (1, 2):
        level = row_echelon([a * b for a in level for b in gens], F.order)
        dims.append(len(level))
    print(tau, dims, [hilbert_function(F.spec, k) for k in (1, 2)])
