"""The acceptance checklist: eight exact checks, each with a wall-clock limit."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Callable

from .gc import (
    DominantWeight,
    change_of_vars_matrices,
    fundamental_weight,
    gc_polytope,
    gc_prime_polytope,
    weyl_dim,
)
from . import _linalg as la
from .polyhedra import cone_lattice_points, count_lattice_points, dilate, lattice_points, minkowski_sum, vertices
from .sagbi import (
    EmbeddedAlgebra,
    degenerate,
    flag_variety_spec,
    hilbert_function,
    lagrangian_grassmannian_spec,
    projective_space_spec,
    psi_embed,
    verify_sagbi,
)
from .symplectic_rep import initial_exponent_set, rep_space


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number}. {self.name} ({self.seconds:.2f}s / {self.limit:.0f}s): {self.detail}"


def dominant_weights(group: str, n: int, top: int):
    """All integral dominant weights with lambda_1 <= top (and lambda_n >= 0)."""
    def rec(prefix, bound):
        if len(prefix) == n:
            yield DominantWeight(group, tuple(prefix))
            return
        for v in range(bound, -1, -1):
            yield from rec(prefix + [v], v)
    yield from rec([], top)


_specs: dict[str, EmbeddedAlgebra] = {}


def embedded(name: str) -> EmbeddedAlgebra:
    if name not in _specs:
        spec = {"P3": projective_space_spec, "LG(2,4)": lagrangian_grassmannian_spec,
                "Flag(SP4)": flag_variety_spec}[name]()
        _specs[name] = psi_embed(spec)
    return _specs[name]


SPEC_NAMES = ("P3", "LG(2,4)", "Flag(SP4)")


def gc_counts() -> tuple[bool, str]:
    cases = [("SP", 2, 4), ("SP", 3, 2), ("GL", 2, 4), ("GL", 3, 4)]
    checked, bad = 0, []
    for group, n, top in cases:
        for w in dominant_weights(group, n, top):
            checked += 1
            if count_lattice_points(gc_polytope(w)) != weyl_dim(w):
                bad.append(f"{group}{tuple(w.ints())}")
    return not bad, f"{checked} weights checked" + (f"; mismatches {bad}" if bad else "")


def minkowski_linearity() -> tuple[bool, str]:
    ws = list(dominant_weights("SP", 2, 2))
    bad = []
    for a in ws:
        for b in ws:
            lhs = set(vertices(minkowski_sum(gc_polytope(a), gc_polytope(b))))
            rhs = set(vertices(gc_polytope(a + b)))
            if lhs != rhs:
                bad.append((a.ints(), b.ints()))
    return not bad, f"{len(ws) ** 2} pairs checked" + (f"; mismatches {bad}" if bad else "")


def unimodularity() -> tuple[bool, str]:
    dets = {n: la.det(change_of_vars_matrices(n).A) for n in range(1, 6)}
    ok = all(abs(d) == 1 for d in dets.values())
    bad = []
    for lam in [(1, 0), (1, 1), (2, 1)]:
        w = DominantWeight.sp(*lam)
        P, Q = gc_polytope(w), gc_prime_polytope(w)
        for k in range(0, 6):
            if count_lattice_points(dilate(P, k)) != count_lattice_points(dilate(Q, k)):
                bad.append((lam, k))
    return ok and not bad, f"det A = {[int(d) for d in dets.values()]}" + (f"; count mismatches {bad}" if bad else "; dilation counts agree for k <= 5")


def okounkov() -> tuple[bool, str]:
    cases = [DominantWeight.sp(*l) for l in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]]
    cases += [fundamental_weight(3, k) for k in (1, 2, 3)]
    sizes, bad = [], []
    for w in cases:
        ini = initial_exponent_set(rep_space(w))
        pts = lattice_points(gc_prime_polytope(w))
        sizes.append(len(pts))
        if ini != pts:
            bad.append(w.ints())
    return not bad, f"sizes {sizes}" + (f"; mismatches {bad}" if bad else "")


def sagbi_levels() -> tuple[bool, str]:
    out, ok = [], True
    for name in SPEC_NAMES:
        rep = verify_sagbi(embedded(name), 3, trials=50, seed=0)
        ok &= rep.passed
        out.append(f"{name} levels {[l.dim for l in rep.levels]} {'ok' if rep.passed else 'FAILED'}")
    return ok, "; ".join(out)


def hilbert_ehrhart() -> tuple[bool, str]:
    oracles = {"P3": lambda k: comb(k + 3, 3), "LG(2,4)": lambda k: comb(k + 4, 4) - comb(k + 2, 4)}
    ok, out = True, []
    for name in SPEC_NAMES:
        E = embedded(name)
        vals = []
        for k in range(0, 5):
            h = hilbert_function(E.spec, k)
            c1 = len(cone_lattice_points(E.delta_cone, k))
            c2 = len(cone_lattice_points(E.cone, k))
            ok &= h == c1 == c2
            if name in oracles:
                ok &= h == oracles[name](k)
            vals.append(h)
        out.append(f"{name} {vals}")
    return ok, "; ".join(out)


def degeneration() -> tuple[bool, str]:
    ok, out = True, []
    for name in SPEC_NAMES:
        d = degenerate(embedded(name), 3, deg_bound=3, trials=5, seed=0)
        ok &= d.flat and d.relations_vanish()
        degrees = [b.degree for b in d.binomials]
        if name == "P3":
            ok &= len(d.generators) == 4 and not d.binomials
        if name == "LG(2,4)":
            ok &= len(d.generators) == 5 and degrees == [2]
        out.append(f"{name} {len(d.generators)} generators, binomial degrees {degrees}")
    return ok, "; ".join(out)


def randomized_subduction() -> tuple[bool, str]:
    ok, out = True, []
    for name in SPEC_NAMES:
        rep = verify_sagbi(embedded(name), 3, trials=50, seed=1000, random_choices=True)
        good = all(t.remainder_zero and t.decreasing for t in rep.subduction_trials)
        ok &= good and len(rep.subduction_trials) == 50
        out.append(f"{name} max steps {max(t.steps for t in rep.subduction_trials)}")
    return ok, "; ".join(out)


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "GC count equals Weyl dimension", 60, gc_counts),
    (2, "Minkowski linearity of GC polytopes", 60, minkowski_linearity),
    (3, "unimodular change of variables", 60, unimodularity),
    (4, "initial exponents equal Delta' lattice points", 300, okounkov),
    (5, "SAGBI verification at K = 3", 600, sagbi_levels),
    (6, "Hilbert function equals Ehrhart count", 120, hilbert_ehrhart),
    (7, "toric degeneration data", 120, degeneration),
    (8, "randomized subduction terminates", 120, randomized_subduction),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, limit, fn = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:   # a crash is a failed criterion, reported as such
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, detail + "; exceeded time limit"
    return CriterionResult(num, name, ok, elapsed, limit, detail)


def run_all() -> list[CriterionResult]:
    return [run_criterion(c[0]) for c in CRITERIA]
