"""Homogeneous coordinate rings of horospherical SP(2n)-varieties inside
C[x, y^{+-1}, t]: the embedding, subduction, SAGBI verification at bounded
degree, and the data of the toric degeneration.

A variety is described by a :class:`HoroVarietySpec`: the weights lambda_1..lambda_s
with R_1 = V_{lambda_1} + ... + V_{lambda_s}, a lattice basis for the weights that
occur, and the vertices of the moment polytope.  An element f of V_lambda sitting
in degree k is sent to t^k y^c f where c are the lattice coordinates of lambda.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from . import _linalg as la
from .core_algebra import (
    DomainError,
    ExponentVector,
    LaurentPolynomial,
    TermOrder,
    VariableUniverse,
    initial_term,
    okounkov_order,
    row_echelon,
)
from .gc import DominantWeight, newton_polytope, weyl_dim
from .polyhedra import (
    ConeOverPolytope,
    HPolytope,
    LatticePointSet,
    cone_lattice_points,
    dilate,
    generated_up_to,
    hull,
    iter_lattice_points,
    semigroup_generators,
)
from .symplectic_rep import rep_space


@dataclass(frozen=True)
class HoroVarietySpec:
    """Weights of R_1, a basis of the lattice they live in, and the moment polytope vertices.

    ``lattice`` defaults to the weights themselves, which is only allowed when they are
    linearly independent; ``moment_vertices`` defaults to the weights.
    """

    n: int
    weights: tuple[tuple[int, ...], ...]
    lattice: tuple[tuple[int, ...], ...] | None = None
    moment_vertices: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        weights = tuple(tuple(int(v) for v in w) for w in self.weights)
        if not weights:
            raise DomainError("a variety spec needs at least one weight")
        for w in weights:
            if len(w) != self.n:
                raise DomainError(f"weight {w} does not have {self.n} components")
            DominantWeight.sp(*w)
        object.__setattr__(self, "weights", weights)
        if self.lattice is None:
            nonzero = [w for w in weights if any(w)]
            if la.rank(nonzero) < len(nonzero) or len(nonzero) < len(weights) and nonzero:
                raise DomainError("weights are linearly dependent; give the lattice and moment vertices explicitly")
            lattice = tuple(nonzero)
        else:
            lattice = tuple(tuple(int(v) for v in b) for b in self.lattice)
            if any(len(b) != self.n for b in lattice):
                raise DomainError("lattice basis vectors must have n components")
            if la.rank(lattice) < len(lattice):
                raise DomainError("lattice basis is not linearly independent")
        object.__setattr__(self, "lattice", lattice)
        verts = self.moment_vertices if self.moment_vertices is not None else weights
        verts = tuple(tuple(Fraction(v) for v in p) for p in verts)
        object.__setattr__(self, "moment_vertices", verts)
        for w in weights:
            c = self.coordinates(w)
            if any(v.denominator != 1 for v in c):
                raise DomainError(f"weight {w} is not in the lattice")
        for v in verts:
            self.coordinates(v)

    @property
    def r(self) -> int:
        return len(self.lattice)

    def coordinates(self, lam: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the lattice basis."""
        if self.r == 0:
            if any(lam):
                raise DomainError(f"{tuple(lam)} is not in the zero lattice")
            return ()
        c = la.solve(la.transpose(self.lattice), list(lam))
        if c is None:
            raise DomainError(f"{tuple(map(str, lam))} is not in the span of the lattice")
        return tuple(c)

    def weight_of(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(ci * b[i] for ci, b in zip(c, self.lattice)) for i in range(self.n))

    @cached_property
    def moment_polytope(self) -> HPolytope:
        """conv(moment vertices) in lattice coordinates."""
        return hull([self.coordinates(v) for v in self.moment_vertices])

    def degree_weights(self, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """(lattice coordinates, weight) for the weights lambda in k Phi(X) cap Lambda'."""
        if k < 0:
            raise DomainError("degree must be nonnegative")
        if self.r == 0:
            return [((), (0,) * self.n)]
        return [(c, self.weight_of(c)) for c in iter_lattice_points(dilate(self.moment_polytope, k))]


def projective_space_spec() -> HoroVarietySpec:
    """P^3 as the closed SP(4)-orbit in P(V_omega1)."""
    return HoroVarietySpec(2, ((1, 0),))


def lagrangian_grassmannian_spec() -> HoroVarietySpec:
    """LG(2,4) in P(V_omega2)."""
    return HoroVarietySpec(2, ((1, 1),))


def flag_variety_spec() -> HoroVarietySpec:
    """The full flag variety of SP(4), embedded by V_omega1 + V_omega2."""
    return HoroVarietySpec(2, ((1, 0), (1, 1)))


def trivial_spec(n: int = 2) -> HoroVarietySpec:
    return HoroVarietySpec(n, ((0,) * n,))


def hilbert_function(spec: HoroVarietySpec, k: int) -> int:
    """dim R_k as the sum of Weyl dimensions over k Phi(X) cap Lambda'."""
    return sum(weyl_dim(DominantWeight.sp(*lam)) for _, lam in spec.degree_weights(k))


# ---------------------------------------------------------------------------
# the embedding

@dataclass
class EmbeddedAlgebra:
    spec: HoroVarietySpec
    universe: VariableUniverse
    order: TermOrder
    generators: tuple[LaurentPolynomial, ...]
    generator_weights: tuple[int, ...]          # index into spec.weights per generator
    cone: ConeOverPolytope                      # over Delta'(X), coordinates (c, x)
    delta_cone: ConeOverPolytope                # over Delta(X), coordinates (c, pattern)
    _levels: dict = field(default_factory=dict, repr=False)
    _products: dict = field(default_factory=dict, repr=False)

    def cone_point_to_exponent(self, pt: Sequence[int]) -> tuple[int, ...]:
        r = self.spec.r
        return tuple(pt[r:-1]) + tuple(pt[:r]) + (pt[-1],)

    def exponent_to_cone_point(self, e: Sequence[int]) -> tuple[int, ...]:
        nx = self.universe.nx
        return tuple(e[nx:-1]) + tuple(e[:nx]) + (e[-1],)

    def level_basis(self, k: int) -> list[LaurentPolynomial]:
        """Reduced echelon basis of the span of all degree-k products of generators."""
        if k in self._levels:
            return self._levels[k]
        if k == 0:
            basis = [self.universe.const(1)]
        else:
            prev = self.level_basis(k - 1)
            basis = row_echelon((f * g for f in prev for g in self.generators), self.order)
        self._levels[k] = basis
        return basis

    def product(self, d: Sequence[int]) -> LaurentPolynomial:
        d = tuple(d)
        if d not in self._products:
            out = self.universe.const(1)
            for g, e in zip(self.generators, d):
                if e:
                    out = out * g ** e
            self._products[d] = out
        return self._products[d]

    @cached_property
    def generator_leads(self) -> tuple[tuple[int, ...], ...]:
        return tuple(initial_term(g, self.order)[1].exps for g in self.generators)


def psi_embed(spec: HoroVarietySpec, check_degree: int = 2) -> EmbeddedAlgebra:
    """Images t * y^c * f of an echelon basis of each V_lambda_i, plus the dimension check
    dim(span of degree-k products) == hilbert_function(spec, k) for k <= check_degree."""
    U = VariableUniverse(spec.n, spec.r)
    order = okounkov_order(U)
    level_one = sorted(lam for _, lam in spec.degree_weights(1))
    if level_one != sorted(spec.weights):
        raise DomainError(
            f"Phi(X) cap Lambda' at degree 1 is {level_one}, which differs from the weights {sorted(spec.weights)}"
        )
    gens, owners = [], []
    t = U.t()
    for idx, lam in enumerate(spec.weights):
        c = [int(v) for v in spec.coordinates(lam)]
        yc = U.monomial({U.y_index(j + 1): cj for j, cj in enumerate(c) if cj})
        for f in rep_space(DominantWeight.sp(*lam)).basis:
            gens.append(t * yc * f.relabel(U))
            owners.append(idx)
    weights = [DominantWeight.sp(*w) for w in spec.weights]
    lattice = spec.lattice if spec.r else None
    if spec.r == 0:
        # every weight is zero: the ring is C[t]
        base_prime = base_delta = HPolytope.point([0] * U.nx)
    else:
        base_prime = newton_polytope(weights, "prime", lattice, spec.moment_vertices)
        base_delta = newton_polytope(weights, "delta", lattice, spec.moment_vertices)
    E = EmbeddedAlgebra(spec, U, order, tuple(gens), tuple(owners),
                        ConeOverPolytope(base_prime), ConeOverPolytope(base_delta))
    for k in range(1, check_degree + 1):
        dim = len(E.level_basis(k))
        expected = hilbert_function(spec, k)
        if dim != expected:
            raise DomainError(f"degree-{k} products span dimension {dim}, expected dim R_{k} = {expected}")
    return E


def initial_algebra_level(E: EmbeddedAlgebra, k: int) -> LatticePointSet:
    """Leading exponents of R_k (level k of the initial semigroup)."""
    if k < 0:
        raise DomainError("level must be nonnegative")
    return LatticePointSet(initial_term(f, E.order)[1].exps for f in E.level_basis(k))


def cone_level(E: EmbeddedAlgebra, k: int, variant: str = "prime") -> LatticePointSet:
    """Lattice points of (k Delta'(X), k) (or of Delta(X)) in exponent layout (x, c, k)."""
    cone = E.cone if variant == "prime" else E.delta_cone
    return LatticePointSet(E.cone_point_to_exponent(p) for p in cone_lattice_points(cone, k))


# ---------------------------------------------------------------------------
# subduction

@dataclass(frozen=True)
class SubductionStep:
    exponents: tuple[int, ...]        # d_1..d_m, multiplicities of the generators
    coefficient: Fraction
    lead: tuple[int, ...]             # leading exponent removed in this step
    remainder: LaurentPolynomial


@dataclass(frozen=True)
class SubductionTrace:
    input: LaurentPolynomial
    steps: tuple[SubductionStep, ...]
    remainder: LaurentPolynomial
    status: str                       # "zero", "stuck" or "budget_exhausted"

    @property
    def remainder_zero(self) -> bool:
        return self.status == "zero"

    def strictly_decreasing(self, order: TermOrder) -> bool:
        leads = [order.key(s.lead) for s in self.steps]
        if self.remainder:
            leads.append(order.key(initial_term(self.remainder, order)[1].exps))
        return all(a > b for a, b in zip(leads, leads[1:]))


def _solutions(leads: Sequence[tuple[int, ...]], target: tuple[int, ...], t_index: int):
    """All d >= 0 with sum d_i leads_i == target, in lexicographic order of d."""
    m = len(leads)
    dim = len(target)
    # coordinates where every generator is nonnegative give pruning bounds
    monotone = [j for j in range(dim) if all(g[j] >= 0 for g in leads)]

    def rec(i, rest, acc):
        if i == m:
            if not any(rest):
                yield tuple(acc)
            return
        g = leads[i]
        step = g[t_index]
        cap = rest[t_index] // step if step > 0 else 0
        for d in range(cap + 1):
            cur = tuple(a - d * b for a, b in zip(rest, g))
            if any(cur[j] < 0 for j in monotone):
                break
            acc.append(d)
            yield from rec(i + 1, cur, acc)
            acc.pop()

    yield from rec(0, tuple(target), [])


def default_step_budget(f: LaurentPolynomial, E: EmbeddedAlgebra) -> int:
    K = max((e[-1] for e in f.terms), default=0)
    return 10 * (len(f.terms) + K * len(E.spec.weights))


def subduct(f: LaurentPolynomial, E: EmbeddedAlgebra, max_steps: int | None = None,
            rng: random.Random | None = None) -> SubductionTrace:
    """Subduction of ``f`` by the generators of ``E``.

    The exponent combination at each step is the lexicographically lowest one, or a
    uniformly random one among all valid combinations when ``rng`` is given.
    """
    if f.universe != E.universe:
        raise DomainError("polynomial lives in a different universe than the algebra")
    budget = max_steps if max_steps is not None else default_step_budget(f, E)
    leads = E.generator_leads
    ti = E.universe.t_index
    steps = []
    g = f
    while g:
        if len(steps) >= budget:
            return SubductionTrace(f, tuple(steps), g, "budget_exhausted")
        coef, lead = initial_term(g, E.order)
        if rng is None:
            d = next(_solutions(leads, lead.exps, ti), None)
        else:
            sols = list(_solutions(leads, lead.exps, ti))
            d = rng.choice(sols) if sols else None
        if d is None:
            return SubductionTrace(f, tuple(steps), g, "stuck")
        prod = E.product(d)
        pc, pe = initial_term(prod, E.order)
        assert pe.exps == lead.exps
        c = coef / pc
        g = g - prod.scale(c)
        steps.append(SubductionStep(d, c, lead.exps, g))
    return SubductionTrace(f, tuple(steps), g, "zero")


def random_element(E: EmbeddedAlgebra, K: int, rng: random.Random) -> LaurentPolynomial:
    """A random rational combination of products of generators, of degree <= K."""
    m = len(E.generators)
    degrees = [k for k in range(1, K + 1) if rng.random() < 0.6] or [rng.randint(1, K)]
    f = LaurentPolynomial.zero(E.universe)
    for k in degrees:
        for _ in range(rng.randint(1, 4)):
            d = [0] * m
            for _ in range(k):
                d[rng.randrange(m)] += 1
            c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 3))
            f = f + E.product(d).scale(c)
    return f if f else E.product([1] + [0] * (m - 1))


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class LevelCheck:
    k: int
    dim: int
    lattice_count: int
    match: bool


@dataclass(frozen=True)
class TrialResult:
    seed: int
    steps: int
    remainder_zero: bool
    decreasing: bool = True


@dataclass(frozen=True)
class SagbiReport:
    levels: tuple[LevelCheck, ...]
    generation_certified: bool
    subduction_trials: tuple[TrialResult, ...]
    K: int

    @property
    def passed(self) -> bool:
        return (all(l.match for l in self.levels) and self.generation_certified
                and all(t.remainder_zero and t.decreasing for t in self.subduction_trials))


def verify_sagbi(E: EmbeddedAlgebra, K: int, trials: int = 10, seed: int = 0,
                 random_choices: bool = False) -> SagbiReport:
    """Check, up to level K, that the initial semigroup equals the lattice points of the
    cone over Delta'(X), that level 1 generates it, and that random elements subduct to 0."""
    if K < 1:
        raise DomainError("level bound must be >= 1")
    levels, cone_pts = [], {}
    for k in range(0, K + 1):
        ini = initial_algebra_level(E, k)
        pts = cone_level(E, k)
        cone_pts[k] = pts
        levels.append(LevelCheck(k, len(ini), len(pts), ini == pts))
    certified = generated_up_to(list(E.generator_leads), cone_pts, K)
    results = []
    for i in range(trials):
        s = seed + i
        rng = random.Random(s)
        f = random_element(E, K, rng)
        trace = subduct(f, E, rng=rng if random_choices else None)
        results.append(TrialResult(s, len(trace.steps), trace.remainder_zero, trace.strictly_decreasing(E.order)))
    return SagbiReport(tuple(levels), certified, tuple(results), K)


def finiteness_profile(E: EmbeddedAlgebra, p: ExponentVector | Sequence[int], K: int) -> dict[int, int]:
    """Per level k <= level(p): number of points of in(R) strictly below p."""
    e = tuple(p.exps if isinstance(p, ExponentVector) else p)
    level = e[-1]
    if level > K or e not in set(initial_algebra_level(E, level)):
        raise DomainError(f"{e} is not in the initial semigroup up to level {K}")
    key = E.order.key(e)
    return {k: sum(1 for q in initial_algebra_level(E, k) if E.order.key(q) < key) for k in range(level + 1)}


def finiteness_check(E: EmbeddedAlgebra, p: ExponentVector | Sequence[int], K: int) -> int:
    """Number of points of in(R) at levels <= level(p) that are smaller than p."""
    return sum(finiteness_profile(E, p, K).values())


# ---------------------------------------------------------------------------
# toric degeneration

@dataclass(frozen=True)
class Binomial:
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.plus)


@dataclass(frozen=True)
class ToricDegenerationData:
    generators: LatticePointSet
    binomials: tuple[Binomial, ...]
    certified_level: int
    hilbert_certificate: tuple[tuple[int, int, int], ...]   # (k, semigroup slice size, dim R_k)

    def relations_vanish(self) -> bool:
        for b in self.binomials:
            lhs = [sum(u * g[j] for u, g in zip(b.plus, self.generators)) for j in range(len(self.generators[0]))]
            rhs = [sum(u * g[j] for u, g in zip(b.minus, self.generators)) for j in range(len(self.generators[0]))]
            if lhs != rhs:
                return False
        return True

    @property
    def flat(self) -> bool:
        return all(a == b for _, a, b in self.hilbert_certificate)


def _monomials_of_level(levels: Sequence[int], d: int):
    """Multiplicity vectors u >= 0 with sum u_i levels_i == d."""
    m = len(levels)

    def rec(i, rest, acc):
        if i == m:
            if rest == 0:
                yield tuple(acc)
            return
        for u in range(rest // levels[i] + 1):
            acc.append(u)
            yield from rec(i + 1, rest - u * levels[i], acc)
            acc.pop()

    yield from rec(0, d, [])


def toric_relations(generators: Sequence[Sequence[int]], deg_bound: int) -> list[Binomial]:
    """Minimal binomial generators of the toric ideal of the generator matrix, up to degree
    ``deg_bound`` (grading by the last coordinate).  In each fiber the monomials are grouped
    into classes connected through common variables; consecutive classes give one binomial."""
    gens = [tuple(g) for g in generators]
    levels = [g[-1] for g in gens]
    out = []
    for d in range(2, deg_bound + 1):
        fibers: dict[tuple, list] = {}
        for u in _monomials_of_level(levels, d):
            img = tuple(sum(ui * g[j] for ui, g in zip(u, gens)) for j in range(len(gens[0])))
            fibers.setdefault(img, []).append(u)
        for img in sorted(fibers):
            mons = sorted(fibers[img])
            if len(mons) < 2:
                continue
            parent = list(range(len(mons)))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for a, b in itertools.combinations(range(len(mons)), 2):
                if any(x and y for x, y in zip(mons[a], mons[b])):
                    parent[find(a)] = find(b)
            reps = sorted({min(i for i in range(len(mons)) if find(i) == find(j)) for j in range(len(mons))})
            for j in reps[1:]:
                out.append(Binomial(mons[reps[0]], mons[j]))
    return out


def degenerate(E: EmbeddedAlgebra, K: int, deg_bound: int = 3, report: SagbiReport | None = None,
               trials: int = 5, seed: int = 0) -> ToricDegenerationData:
    """Semigroup generators of in(R) up to level K, their binomial relations up to degree
    ``deg_bound``, and the dimension-preservation certificate for levels <= K."""
    if report is None:
        report = verify_sagbi(E, K, trials=trials, seed=seed)
    if report.K < K or not report.passed:
        raise DomainError("SAGBI verification did not pass; no degeneration data")
    sg = semigroup_generators(E.cone, K)
    gens = LatticePointSet(E.cone_point_to_exponent(p) for p in sg.generators)
    binomials = tuple(toric_relations(gens, deg_bound)) if gens else ()
    reached = {0: {tuple([0] * E.universe.size)}}
    cert = []
    for k in range(1, K + 1):
        cur = set()
        for g in gens:
            if 1 <= g[-1] <= k:
                cur.update(tuple(a + b for a, b in zip(q, g)) for q in reached[k - g[-1]])
        reached[k] = cur
        cert.append((k, len(cur), hilbert_function(E.spec, k)))
    return ToricDegenerationData(gens, binomials, K, tuple(cert))


# ---------------------------------------------------------------------------
# flat family

def realizing_weight(E: EmbeddedAlgebra, K: int, extra: Sequence[Sequence[int]] = ()) -> tuple[int, ...]:
    """Integer weight w with w.a < w.b whenever a > b in the term order, on every monomial of
    R_{<=K} (and ``extra``), of smallest possible max-norm.

    The lexicographic order is not realizable globally, only on finite exponent sets.
    """
    support = set(tuple(e) for e in extra)
    for k in range(K + 1):
        for f in E.level_basis(k):
            support.update(f.terms)
    chain = sorted(support, key=E.order.key, reverse=True)
    diffs = [tuple(b - a for a, b in zip(hi, lo)) for hi, lo in zip(chain, chain[1:])]
    D = E.universe.size
    if not diffs:
        return (0,) * D
    # variables (w_1..w_D, N); minimize N subject to diffs.w >= 1, -N <= w_i <= N
    A = [list(d) + [0] for d in diffs]
    for i in range(D):
        row = [0] * (D + 1)
        row[i], row[D] = 1, -1
        A.append(row)
        row = [0] * (D + 1)
        row[i], row[D] = -1, -1
        A.append(row)
    lb = [1] * len(diffs) + [-np.inf] * (2 * D)
    ub = [np.inf] * len(diffs) + [0] * (2 * D)
    c = np.zeros(D + 1)
    c[D] = 1
    res = milp(c, constraints=LinearConstraint(np.array(A, dtype=float), lb, ub),
               integrality=np.ones(D + 1), bounds=Bounds([-1e6] * D + [0], [1e6] * (D + 1)))
    if res.x is None:
        raise DomainError(f"no realizing weight vector found ({res.message})")
    w = tuple(int(round(v)) for v in res.x[:D])
    for hi, lo in zip(chain, chain[1:]):
        if sum(a * b for a, b in zip(w, lo)) <= sum(a * b for a, b in zip(w, hi)):
            raise DomainError(f"weight {w} violates the comparison {hi} > {lo}")
    return w


def flat_family_member(f: LaurentPolynomial, E: EmbeddedAlgebra, tau, K: int,
                       weight: Sequence[int] | None = None) -> LaurentPolynomial:
    """tau^{-w(in f)} f(tau^{w_v} v): equal to f at tau = 1 and to in(f) at tau = 0."""
    tau = Fraction(tau)
    w = tuple(weight) if weight is not None else realizing_weight(E, K, extra=f.terms)
    _, lead = initial_term(f, E.order)
    base = sum(a * b for a, b in zip(w, lead.exps))
    out = {}
    for e, c in f.terms.items():
        power = sum(a * b for a, b in zip(w, e)) - base
        if power < 0 or (power == 0 and e != lead.exps):
            raise DomainError(f"weight {w} does not realize the term order on {e}")
        if tau == 0:
            if power == 0:
                out[e] = c
        else:
            out[e] = c * tau ** power
    return LaurentPolynomial(E.universe, out)


def degenerate_generators(E: EmbeddedAlgebra, tau, K: int) -> list[LaurentPolynomial]:
    """The generators of the fibre of the family over ``tau``."""
    w = realizing_weight(E, K)
    return [flat_family_member(g, E, tau, K, weight=w) for g in E.generators]
