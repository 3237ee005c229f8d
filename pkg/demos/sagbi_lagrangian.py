"""The Lagrangian Grassmannian LG(2,4): embed its coordinate ring, check the
SAGBI property to degree 3, and read off the toric degeneration."""

import random

from horotoric.core_algebra import format_polynomial
from horotoric.sagbi import degenerate, lagrangian_grassmannian_spec, psi_embed, random_element, subduct, verify_sagbi

E = psi_embed(lagrangian_grassmannian_spec())
print(len(E.generators), "generators:")
for g in E.generators:
    print("  ", format_polynomial(g))

rep = verify_sagbi(E, 3, trials=20, seed=0)
for level in rep.levels:
    print(level)
print("generated by level 1:", rep.generation_certified, " passed:", rep.passed)

# one subduction, step by step
f = random_element(E, 2, random.Random(4))
trace = subduct(f, E)
for step in trace.steps:
    print(step.exponents, step.coefficient)
print("status:", trace.status)

d = degenerate(E, 3, report=rep)
print("semigroup generators:", list(d.generators))
print("relations:", d.binomials)   # one quadric
print("dimension certificate:", d.hilbert_certificate)
