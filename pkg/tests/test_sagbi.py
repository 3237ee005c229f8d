import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from horotoric.core_algebra import DomainError, LaurentPolynomial, initial_term, row_echelon
from horotoric.gc import DominantWeight, weyl_dim
from horotoric.polyhedra import cone_lattice_points
from horotoric.sagbi import (
    HoroVarietySpec,
    LevelCheck,
    SagbiReport,
    cone_level,
    degenerate,
    degenerate_generators,
    finiteness_check,
    finiteness_profile,
    flag_variety_spec,
    flat_family_member,
    hilbert_function,
    initial_algebra_level,
    lagrangian_grassmannian_spec,
    projective_space_spec,
    psi_embed,
    random_element,
    realizing_weight,
    subduct,
    toric_relations,
    trivial_spec,
    verify_sagbi,
)


@pytest.fixture(scope="module")
def P3():
    return psi_embed(projective_space_spec())


@pytest.fixture(scope="module")
def LG():
    return psi_embed(lagrangian_grassmannian_spec())


@pytest.fixture(scope="module")
def flag():
    return psi_embed(flag_variety_spec())


def test_hilbert_function_examples():
    assert hilbert_function(projective_space_spec(), 0) == 1
    for k in range(6):
        assert hilbert_function(projective_space_spec(), k) == comb(k + 3, 3)
        assert hilbert_function(lagrangian_grassmannian_spec(), k) == comb(k + 4, 4) - comb(k + 2, 4)
        assert hilbert_function(flag_variety_spec(), k) == sum(
            weyl_dim(DominantWeight.sp(k, j)) for j in range(k + 1))
    assert hilbert_function(lagrangian_grassmannian_spec(), 2) == weyl_dim(DominantWeight.sp(2, 2)) == 14


def test_spec_validation():
    with pytest.raises(DomainError):
        HoroVarietySpec(2, ((1, 0), (2, 0)))
    with pytest.raises(DomainError):
        HoroVarietySpec(2, ((1, 1),), lattice=((2, 2),))
    with pytest.raises(DomainError):
        HoroVarietySpec(2, ((1, 0),), moment_vertices=((1, 1),))
    with pytest.raises(DomainError):
        psi_embed(HoroVarietySpec(2, ((1, 0),), moment_vertices=((2, 0), (0, 0))))


def test_explicit_lattice_for_dependent_weights():
    spec = HoroVarietySpec(2, ((1, 0), (2, 0)), lattice=((1, 0),))
    E = psi_embed(spec)
    rep = verify_sagbi(E, 2, trials=5)
    assert rep.passed
    assert [l.dim for l in rep.levels] == [hilbert_function(spec, k) for k in range(3)]


def test_embedding_examples(P3, LG):
    E = psi_embed(trivial_spec())
    assert E.generators == (E.universe.t(),)
    assert len(P3.generators) == 4 and len(LG.generators) == 5


@pytest.mark.parametrize("name", ["P3", "LG", "flag"])
def test_generators_are_degree_one_with_weight_monomial(name, request):
    E = request.getfixturevalue(name)
    for g, idx in zip(E.generators, E.generator_weights):
        c = [int(v) for v in E.spec.coordinates(E.spec.weights[idx])]
        for e in g.terms:
            assert e[-1] == 1 and list(e[E.universe.nx:-1]) == c


def test_subduct_examples(P3):
    g1, g2 = P3.generators[0], P3.generators[1]
    tr = subduct(g1, P3)
    assert tr.status == "zero" and len(tr.steps) == 1
    assert subduct(g1 * g2, P3).remainder_zero


@given(st.integers(0, 10_000))
def test_subduct_random_degree_two(seed):
    E = _P3
    rng = random.Random(seed)
    f = LaurentPolynomial.zero(E.universe)
    for a in range(4):
        for b in range(a, 4):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            f = f + (E.generators[a] * E.generators[b]).scale(c)
    if f.is_zero():
        return
    tr = subduct(f, E)
    assert tr.remainder_zero and len(tr.steps) <= 10
    assert tr.strictly_decreasing(E.order)


_P3 = psi_embed(projective_space_spec())


def test_subduct_failure_statuses(P3):
    U = P3.universe
    outside = U.monomial({U.x_index(1, 4): 3, U.t_index: 1})
    assert subduct(outside, P3).status == "stuck"
    assert subduct(P3.generators[0], P3, max_steps=0).status == "budget_exhausted"


@pytest.mark.parametrize("name", ["P3", "LG", "flag"])
def test_randomized_choices_terminate(name, request):
    E = request.getfixturevalue(name)
    for seed in range(15):
        rng = random.Random(seed)
        f = random_element(E, 3, rng)
        tr = subduct(f, E, rng=rng)
        assert tr.remainder_zero and tr.strictly_decreasing(E.order)


def test_initial_algebra_level_examples(P3):
    assert initial_algebra_level(P3, 0) == ((0,) * P3.universe.size,)
    assert initial_algebra_level(P3, 1) == cone_level(P3, 1)
    assert len(initial_algebra_level(P3, 2)) == 10 == len(cone_level(P3, 2))


def test_verify_lg_levels(LG):
    rep = verify_sagbi(LG, 3, trials=5, seed=2)
    assert rep.passed
    assert [(l.k, l.dim) for l in rep.levels[1:]] == [(1, 5), (2, 14), (3, 30)]


def test_verify_flag_level_one(flag):
    rep = verify_sagbi(flag, 2, trials=5)
    assert rep.passed and rep.levels[1].dim == 9


@pytest.mark.parametrize("name", ["P3", "LG", "flag"])
def test_hilbert_equals_ehrhart(name, request):
    E = request.getfixturevalue(name)
    for k in range(4):
        h = hilbert_function(E.spec, k)
        assert h == len(cone_lattice_points(E.delta_cone, k)) == len(cone_lattice_points(E.cone, k))
        assert h == len(E.level_basis(k)) == len(initial_algebra_level(E, k))


def test_finiteness(P3):
    assert finiteness_check(P3, (0,) * P3.universe.size, 3) == 0
    top = max(initial_algebra_level(P3, 2), key=P3.order.key)
    assert finiteness_profile(P3, top, 3)[2] == 9
    low = min(initial_algebra_level(P3, 1), key=P3.order.key)
    assert finiteness_profile(P3, low, 3) == {0: 1, 1: 0}
    with pytest.raises(DomainError):
        finiteness_check(P3, (5, 0, 0, 0, 1, 1), 3)


def test_degenerate_examples(P3, LG):
    d = degenerate(P3, 3)
    assert len(d.generators) == 4 and d.binomials == ()
    d = degenerate(LG, 3)
    assert len(d.generators) == 5 and [b.degree for b in d.binomials] == [2]
    assert d.relations_vanish() and d.flat
    d = degenerate(psi_embed(trivial_spec()), 3)
    assert d.generators == ((0, 0, 0, 0, 1),) and d.binomials == ()


def test_degenerate_flag_certificate(flag):
    d = degenerate(flag, 3)
    assert d.flat and d.relations_vanish()
    # every degree-2 relation is minimal, so their number is C(m+1, 2) - dim R_2
    m = len(d.generators)
    assert len(d.binomials) == comb(m + 1, 2) - hilbert_function(flag.spec, 2)


def test_degenerate_requires_passing_report(P3):
    bad = SagbiReport((LevelCheck(1, 4, 5, False),), True, (), 3)
    with pytest.raises(DomainError):
        degenerate(P3, 3, report=bad)


def test_toric_relations_of_a_square():
    # the cone over the unit square: one relation a d = b c
    gens = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    rel = toric_relations(gens, 3)
    assert len(rel) == 1 and rel[0].degree == 2


def _substitute(f, w, tau, lead):
    """Scale variables one at a time by tau^{w_v}, then divide by tau^{w.lead}."""
    U = f.universe
    out = {}
    for e, c in f.terms.items():
        factor = Fraction(1)
        for v, (a, b) in enumerate(zip(e, w)):
            factor *= Fraction(tau) ** (a * b)
        out[e] = c * factor
    base = Fraction(1)
    for a, b in zip(lead, w):
        base *= Fraction(tau) ** (a * b)
    return LaurentPolynomial(U, {e: c / base for e, c in out.items()})


def test_flat_family(P3):
    g = P3.generators
    f = g[0] * g[1] - g[2] * g[3]
    c0, lead = initial_term(f, P3.order)
    assert flat_family_member(f, P3, 1, 2) == f
    assert flat_family_member(f, P3, 0, 2) == LaurentPolynomial(P3.universe, {lead.exps: c0})
    half = flat_family_member(f, P3, Fraction(1, 2), 2)
    assert set(half.terms) == set(f.terms)
    assert half.terms[lead.exps] == c0
    w = realizing_weight(P3, 2, extra=f.terms)
    assert half == _substitute(f, w, Fraction(1, 2), lead.exps)


def test_family_preserves_dimensions(LG):
    gens = degenerate_generators(LG, Fraction(1, 3), 2)
    level = [LG.universe.const(1)]
    for k in (1, 2):
        level = row_echelon([a * b for a in level for b in gens], LG.order)
        assert len(level) == hilbert_function(LG.spec, k)
    special = degenerate_generators(LG, 0, 2)
    assert all(len(g.terms) == 1 for g in special)
