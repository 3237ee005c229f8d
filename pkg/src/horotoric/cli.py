"""Command-line front end: every operation as a subcommand with JSON output.

Exit status: 0 on success, 1 when the input is well formed but mathematically
invalid (a domain error), 2 on usage errors and malformed JSON.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import serialize as ser
from .core_algebra import DomainError, parse_polynomial, parse_rational
from .gc import (
    DominantWeight,
    change_of_vars_matrices,
    gc_polytope,
    gc_prime_polytope,
    newton_polytope,
    weyl_dim,
)
from .polyhedra import (
    ConeOverPolytope,
    cone_lattice_points,
    count_lattice_points,
    dilate,
    lattice_points,
    minkowski_sum,
    vertices,
)
from .sagbi import (
    flag_variety_spec,
    flat_family_member,
    hilbert_function,
    lagrangian_grassmannian_spec,
    projective_space_spec,
    psi_embed,
    random_element,
    realizing_weight,
    subduct,
    trivial_spec,
    verify_sagbi,
    degenerate,
)
from .symplectic_rep import generic_unipotent, initial_exponent_set, rep_space

FORMATS = """\
document formats (rationals are strings "p/q" or "p"):
  polytope   {"dim": d, "inequalities": [{"a": [...], "b": "..."}]}   rows mean a.z >= b
  points     [[ints], ...]   sorted
  weight     {"group": "SP"|"GL", "n": n, "lambda": [...]}
  spec       {"n": n, "weights": [[ints]], "lattice": [[ints]], "moment_vertices": [[...]]}
  report     {"levels": [{"k", "dim", "lattice_count", "match"}], "generation_certified",
              "subduction_trials": [{"seed", "steps", "remainder_zero"}]}
  degeneration {"generators": [[ints]], "binomials": [{"plus", "minus"}], "certified_level"}
  polynomials use the text form  coef * x[i,j]^e * y[k]^e * t^e + ...
built-in specs for --builtin: P3, LG, flag, trivial (all for SP(4))
"""

BUILTIN = {"P3": projective_space_spec, "LG": lagrangian_grassmannian_spec,
           "flag": flag_variety_spec, "trivial": trivial_spec}


class UsageError(Exception):
    pass


def _lambda(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(v.strip()) for v in text.split(","))
    except DomainError as exc:
        raise UsageError(f"--lambda: {exc}") from None


def _weight(args) -> DominantWeight:
    if getattr(args, "weight", None):
        return ser.weight_from_json(ser.load_file(args.weight), args.weight)
    if args.n is None or args.lam is None:
        raise UsageError("give --n and --lambda (or --weight FILE)")
    lam = _lambda(args.lam)
    if len(lam) != args.n:
        raise UsageError(f"--lambda has {len(lam)} components but --n is {args.n}")
    return DominantWeight(getattr(args, "group", "SP"), lam)


def _spec(args):
    if args.builtin:
        return BUILTIN[args.builtin]()
    if not args.spec:
        raise UsageError("give --spec FILE or --builtin NAME")
    return ser.spec_from_json(ser.load_file(args.spec), args.spec)


def _polytope(path):
    return ser.polytope_from_json(ser.load_file(path), path)


def _poly_arg(args, U):
    text = args.poly
    if args.poly_file:
        with open(args.poly_file, encoding="utf-8") as fh:
            text = fh.read()
    if text is None:
        return None
    try:
        return parse_polynomial(text, U)
    except DomainError as exc:
        raise UsageError(f"polynomial: {exc}") from None


def _need_seed(args):
    if args.seed is None:
        raise UsageError("this command is randomized; --seed is required")


# ---------------------------------------------------------------------------
# handlers return a JSON-serializable object

def cmd_gc(args):
    return ser.polytope_to_json(gc_polytope(_weight(args)))


def cmd_gcprime(args):
    return ser.polytope_to_json(gc_prime_polytope(_weight(args)))


def cmd_newton(args):
    spec = _spec(args)
    P = newton_polytope([DominantWeight.sp(*w) for w in spec.weights], args.variant,
                        spec.lattice, spec.moment_vertices)
    return ser.polytope_to_json(P)


def cmd_count(args):
    P = _polytope(args.polytope)
    if args.cone:
        return len(cone_lattice_points(ConeOverPolytope(P), args.k))
    return count_lattice_points(dilate(P, args.k))


def cmd_points(args):
    P = _polytope(args.polytope)
    return ser.points_to_json(lattice_points(dilate(P, args.k)))


def cmd_vertices(args):
    return ser.points_to_json(sorted(vertices(_polytope(args.polytope))))


def cmd_minkowski(args):
    P, Q = (_polytope(p) for p in args.polytope)
    return ser.polytope_to_json(minkowski_sum(P, Q))


def cmd_weyldim(args):
    return weyl_dim(_weight(args))


def cmd_changevars(args):
    return ser.changevars_to_json(change_of_vars_matrices(args.n))


def cmd_unipotent(args):
    return ser.unipotent_to_json(generic_unipotent(args.n))


def cmd_repspace(args):
    return ser.repspace_to_json(rep_space(_weight(args)))


def cmd_initials(args):
    if args.repspace:
        S = ser.repspace_from_json(ser.load_file(args.repspace), args.repspace)
    else:
        S = rep_space(_weight(args))
    return ser.points_to_json(initial_exponent_set(S))


def cmd_okounkov(args):
    w = _weight(args)
    ini = initial_exponent_set(rep_space(w))
    pts = lattice_points(gc_prime_polytope(w))
    return {"match": ini == pts, "count": len(pts)}


def cmd_hilbert(args):
    return hilbert_function(_spec(args), args.k)


def cmd_embed(args):
    return ser.embedding_to_json(psi_embed(_spec(args), check_degree=args.check_degree))


def cmd_subduct(args):
    E = psi_embed(_spec(args), check_degree=1)
    f = _poly_arg(args, E.universe)
    rng = None
    if f is None:
        _need_seed(args)
        f = random_element(E, args.K, random.Random(args.seed))
    if args.random_choices:
        _need_seed(args)
        rng = random.Random(args.seed + 1)
    return ser.trace_to_json(subduct(f, E, max_steps=args.max_steps, rng=rng))


def cmd_verify(args):
    _need_seed(args)
    E = psi_embed(_spec(args), check_degree=1)
    rep = verify_sagbi(E, args.K, trials=args.trials, seed=args.seed, random_choices=args.random_choices)
    return ser.report_to_json(rep)


def cmd_degenerate(args):
    _need_seed(args)
    E = psi_embed(_spec(args), check_degree=1)
    return ser.degeneration_to_json(degenerate(E, args.K, args.deg_bound, trials=args.trials, seed=args.seed))


def cmd_family(args):
    E = psi_embed(_spec(args), check_degree=1)
    f = _poly_arg(args, E.universe)
    if f is None:
        raise UsageError("give --poly or --poly-file")
    try:
        tau = parse_rational(args.tau)
    except DomainError as exc:
        raise UsageError(f"--tau: {exc}") from None
    w = realizing_weight(E, args.K, extra=f.terms)
    return ser.family_to_json(E.universe, w, tau, flat_family_member(f, E, tau, args.K, weight=w))


def cmd_suite(args):
    from .acceptance import CRITERIA, run_criterion
    numbers = args.only or [c[0] for c in CRITERIA]
    results = [run_criterion(n) for n in numbers]
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                         for r in results],
            "passed": all(r.passed for r in results)}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horotoric", description=__doc__,
                                epilog=FORMATS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help, epilog=FORMATS, formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(fn=fn)
        sp.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
        return sp

    def weight_args(sp, group=True):
        if group:
            sp.add_argument("--group", choices=["SP", "GL"], default="SP")
        sp.add_argument("--n", type=int)
        sp.add_argument("--lambda", dest="lam", help="comma separated components, e.g. 2,1")
        sp.add_argument("--weight", help="weight JSON file (instead of --n/--lambda)")

    def spec_args(sp):
        sp.add_argument("--spec", help="variety spec JSON file")
        sp.add_argument("--builtin", choices=sorted(BUILTIN))

    weight_args(add("gc", cmd_gc, "Gelfand-Cetlin polytope of a weight"))
    weight_args(add("gcprime", cmd_gcprime, "GC polytope in exponent coordinates (SP only)"), group=False)
    sp = add("newton", cmd_newton, "Newton polytope of a variety spec")
    spec_args(sp)
    sp.add_argument("--variant", choices=["delta", "prime"], default="delta")
    sp = add("count", cmd_count, "number of lattice points of k*P (or of the cone slice)")
    sp.add_argument("polytope")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--cone", action="store_true", help="count the level-k slice of the cone over P")
    sp = add("points", cmd_points, "lattice points of k*P")
    sp.add_argument("polytope")
    sp.add_argument("--k", type=int, default=1)
    add("vertices", cmd_vertices, "vertices of a polytope").add_argument("polytope")
    add("minkowski", cmd_minkowski, "Minkowski sum of two polytopes").add_argument("polytope", nargs=2)
    weight_args(add("weyldim", cmd_weyldim, "Weyl dimension of a weight"))
    add("changevars", cmd_changevars, "matrices A, B of q = A p + B lambda").add_argument("--n", type=int, required=True)
    add("unipotent", cmd_unipotent, "generic symplectic unipotent matrix").add_argument("--n", type=int, required=True)
    weight_args(add("repspace", cmd_repspace, "V_lambda as polynomials on U+"), group=False)
    sp = add("initials", cmd_initials, "leading exponents over V_lambda")
    weight_args(sp, group=False)
    sp.add_argument("--repspace", help="RepSpace JSON file (instead of a weight)")
    weight_args(add("okounkov-check", cmd_okounkov, "compare leading exponents with Delta' lattice points"), group=False)
    sp = add("hilbert", cmd_hilbert, "dim R_k of a variety spec")
    spec_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp = add("embed", cmd_embed, "generators of the embedded coordinate ring")
    spec_args(sp)
    sp.add_argument("--check-degree", type=int, default=2)
    sp = add("subduct", cmd_subduct, "subduction trace of a polynomial")
    spec_args(sp)
    sp.add_argument("--poly", help="polynomial in text form")
    sp.add_argument("--poly-file")
    sp.add_argument("--K", type=int, default=2, help="degree bound for a random input")
    sp.add_argument("--max-steps", type=int)
    sp.add_argument("--random-choices", action="store_true")
    sp.add_argument("--seed", type=int)
    sp = add("sagbi-verify", cmd_verify, "bounded-degree SAGBI verification report")
    spec_args(sp)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--random-choices", action="store_true")
    sp.add_argument("--seed", type=int)
    sp = add("degenerate", cmd_degenerate, "semigroup generators and binomial relations")
    spec_args(sp)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--deg-bound", type=int, default=3)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int)
    sp = add("family", cmd_family, "member of the flat family over tau")
    spec_args(sp)
    sp.add_argument("--poly")
    sp.add_argument("--poly-file")
    sp.add_argument("--tau", required=True)
    sp.add_argument("--K", type=int, default=2)
    sp = add("suite", cmd_suite, "run the acceptance checklist")
    sp.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
        text = ser.dumps(result)
        if args.output:
            ser.write_atomic(args.output, text)
        else:
            sys.stdout.write(text)
    except (UsageError, ser.FormatError) as exc:
        print(f"horotoric {args.command}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"horotoric {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.command == "suite" and not result["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
