"""JSON documents for polytopes, weights, change of variables, representation
spaces, variety specs, verification reports and degeneration data.

Rationals are written as strings "p/q" (or "p" for integers) so every document
is exact.  Each ``*_to_json`` has a matching ``*_from_json``.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any

from .core_algebra import (
    DomainError,
    VariableUniverse,
    format_polynomial,
    format_rational,
    parse_polynomial,
    parse_rational,
)
from .gc import ChangeOfVariables, DominantWeight
from .polyhedra import HPolytope, LatticePointSet
from .sagbi import (
    Binomial,
    HoroVarietySpec,
    LevelCheck,
    SagbiReport,
    ToricDegenerationData,
    TrialResult,
)
from .symplectic_rep import RepSpace


class FormatError(ValueError):
    """A document does not have the expected shape; ``path`` names the offending field."""

    def __init__(self, source: str, field: str, message: str):
        self.source, self.field = source, field
        super().__init__(f"{source}: field {field!r}: {message}")


class _Doc:
    """Field access with error messages that carry the file and field path."""

    def __init__(self, data, source: str = "<document>", prefix: str = ""):
        self.data, self.source, self.prefix = data, source, prefix

    def path(self, key) -> str:
        return f"{self.prefix}.{key}" if self.prefix else str(key)

    def fail(self, key, msg):
        raise FormatError(self.source, self.path(key), msg)

    def get(self, key, kind=None, optional=False):
        if not isinstance(self.data, dict):
            raise FormatError(self.source, self.prefix or "<root>", "expected a JSON object")
        if key not in self.data or self.data[key] is None:
            if optional:
                return None
            self.fail(key, "missing")
        value = self.data[key]
        if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is int:
            self.fail(key, f"expected {getattr(kind, '__name__', kind)}")
        return value

    def rational(self, key, value=None):
        value = self.data[key] if value is None else value
        try:
            return parse_rational(value)
        except DomainError:
            self.fail(key, f"not an exact rational: {value!r}")

    def int_list(self, key, value=None):
        value = self.get(key, list) if value is None else value
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            self.fail(key, "expected a list of integers")
        return [int(v) for v in value]

    def rational_list(self, key, value=None):
        value = self.get(key, list) if value is None else value
        out = []
        for i, v in enumerate(value):
            try:
                out.append(parse_rational(v))
            except DomainError:
                self.fail(f"{key}[{i}]", f"not an exact rational: {v!r}")
        return out

    def sub(self, key, value) -> "_Doc":
        return _Doc(value, self.source, self.path(key))


def rational_json(c) -> str:
    return format_rational(Fraction(c))


# ---------------------------------------------------------------------------
# polytopes and point sets

def polytope_to_json(P: HPolytope) -> dict:
    return {
        "dim": P.dim,
        "inequalities": [{"a": [rational_json(v) for v in a], "b": rational_json(b)} for a, b in P.inequalities],
    }


def polytope_from_json(data, source: str = "<document>") -> HPolytope:
    doc = _Doc(data, source)
    dim = doc.get("dim", int)
    rows = []
    for i, row in enumerate(doc.get("inequalities", list)):
        r = doc.sub(f"inequalities[{i}]", row)
        a = r.rational_list("a")
        if len(a) != dim:
            r.fail("a", f"has length {len(a)}, expected {dim}")
        rows.append((a, r.rational("b", r.get("b"))))
    return HPolytope.from_rows(dim, rows)


def _scalar(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else rational_json(v)


def points_to_json(points) -> list:
    """Integral coordinates as JSON integers, anything else as "p/q"."""
    return [[_scalar(v) for v in p] for p in points]


def points_from_json(data, source: str = "<document>") -> tuple:
    """A LatticePointSet when every coordinate is an integer, else a sorted tuple of rational points."""
    if not isinstance(data, list) or not all(isinstance(p, list) for p in data):
        raise FormatError(source, "<root>", "expected a list of coordinate lists")
    doc = _Doc({"points": data}, source)
    out = []
    for i, p in enumerate(data):
        q = doc.rational_list(f"points[{i}]", p)
        out.append(tuple(int(v) if v.denominator == 1 else v for v in q))
    if all(isinstance(v, int) for p in out for v in p):
        return LatticePointSet(out)
    return tuple(sorted(set(out)))


# ---------------------------------------------------------------------------
# weights and change of variables

def weight_to_json(w: DominantWeight) -> dict:
    return {"group": w.group, "n": w.n,
            "lambda": [int(c) if c.denominator == 1 else rational_json(c) for c in w.components]}


def weight_from_json(data, source: str = "<document>") -> DominantWeight:
    doc = _Doc(data, source)
    group = doc.get("group", str)
    n = doc.get("n", int)
    lam = doc.rational_list("lambda")
    if len(lam) != n:
        doc.fail("lambda", f"has {len(lam)} components, expected n = {n}")
    return DominantWeight(group, tuple(lam))


def changevars_to_json(cv: ChangeOfVariables) -> dict:
    return {
        "n": cv.n,
        "p_order": [f"x[{i},{j}]" for i, j in cv.p_order],
        "q_order": list(cv.q_order),
        "lambda_order": [f"lambda{i}" for i in range(1, cv.n + 1)],
        "A": [list(r) for r in cv.A],
        "B": [list(r) for r in cv.B],
    }


def changevars_from_json(data, source: str = "<document>") -> ChangeOfVariables:
    doc = _Doc(data, source)
    n = doc.get("n", int)
    p_order = []
    for i, name in enumerate(doc.get("p_order", list)):
        try:
            a, b = name.strip("x[]").split(",")
            p_order.append((int(a), int(b)))
        except (ValueError, AttributeError):
            doc.fail(f"p_order[{i}]", f"bad variable name {name!r}")
    A = tuple(tuple(doc.int_list(f"A[{i}]", r)) for i, r in enumerate(doc.get("A", list)))
    B = tuple(tuple(doc.int_list(f"B[{i}]", r)) for i, r in enumerate(doc.get("B", list)))
    return ChangeOfVariables(n, A, B, tuple(p_order), tuple(doc.get("q_order", list)))


# ---------------------------------------------------------------------------
# polynomials and representation spaces

def universe_to_json(U: VariableUniverse) -> dict:
    return {"n": U.n, "r": U.r, "variables": list(U.names)}


def repspace_to_json(S: RepSpace) -> dict:
    return {"weight": weight_to_json(S.weight), "dim": S.dim,
            "basis": [format_polynomial(f) for f in S.basis]}


def repspace_from_json(data, source: str = "<document>") -> RepSpace:
    doc = _Doc(data, source)
    w = weight_from_json(doc.get("weight", dict), source)
    U = VariableUniverse(w.n)
    basis = []
    for i, text in enumerate(doc.get("basis", list)):
        try:
            basis.append(parse_polynomial(text, U))
        except (DomainError, TypeError, AttributeError) as exc:
            doc.fail(f"basis[{i}]", str(exc))
    return RepSpace(w, tuple(basis))


# ---------------------------------------------------------------------------
# variety specs, reports, degeneration data

def spec_to_json(spec: HoroVarietySpec) -> dict:
    return {
        "n": spec.n,
        "weights": [list(w) for w in spec.weights],
        "lattice": [list(b) for b in spec.lattice],
        "moment_vertices": [[int(v) if v.denominator == 1 else rational_json(v) for v in p]
                            for p in spec.moment_vertices],
    }


def spec_from_json(data, source: str = "<document>") -> HoroVarietySpec:
    doc = _Doc(data, source)
    n = doc.get("n", int)
    weights = tuple(tuple(doc.int_list(f"weights[{i}]", w)) for i, w in enumerate(doc.get("weights", list)))
    lattice = doc.get("lattice", list, optional=True)
    if lattice is not None:
        lattice = tuple(tuple(doc.int_list(f"lattice[{i}]", b)) for i, b in enumerate(lattice))
    verts = doc.get("moment_vertices", list, optional=True)
    if verts is not None:
        verts = tuple(tuple(doc.rational_list(f"moment_vertices[{i}]", p)) for i, p in enumerate(verts))
    return HoroVarietySpec(n, weights, lattice, verts)


def report_to_json(rep: SagbiReport) -> dict:
    return {
        "K": rep.K,
        "levels": [{"k": l.k, "dim": l.dim, "lattice_count": l.lattice_count, "match": l.match} for l in rep.levels],
        "generation_certified": rep.generation_certified,
        "subduction_trials": [{"seed": t.seed, "steps": t.steps, "remainder_zero": t.remainder_zero,
                               "decreasing": t.decreasing} for t in rep.subduction_trials],
        "passed": rep.passed,
    }


def report_from_json(data, source: str = "<document>") -> SagbiReport:
    doc = _Doc(data, source)
    levels = []
    for i, l in enumerate(doc.get("levels", list)):
        d = doc.sub(f"levels[{i}]", l)
        levels.append(LevelCheck(d.get("k", int), d.get("dim", int), d.get("lattice_count", int), d.get("match", bool)))
    trials = []
    for i, t in enumerate(doc.get("subduction_trials", list)):
        d = doc.sub(f"subduction_trials[{i}]", t)
        dec = d.get("decreasing", bool, optional=True)
        trials.append(TrialResult(d.get("seed", int), d.get("steps", int), d.get("remainder_zero", bool),
                                  True if dec is None else dec))
    K = doc.get("K", int, optional=True)
    if K is None:
        K = max((l.k for l in levels), default=0)
    return SagbiReport(tuple(levels), doc.get("generation_certified", bool), tuple(trials), K)


def degeneration_to_json(d: ToricDegenerationData) -> dict:
    return {
        "generators": [list(g) for g in d.generators],
        "binomials": [{"plus": list(b.plus), "minus": list(b.minus)} for b in d.binomials],
        "certified_level": d.certified_level,
        "hilbert_certificate": [{"k": k, "semigroup": a, "hilbert": b} for k, a, b in d.hilbert_certificate],
    }


def degeneration_from_json(data, source: str = "<document>") -> ToricDegenerationData:
    doc = _Doc(data, source)
    gens = LatticePointSet(tuple(doc.int_list(f"generators[{i}]", g)) for i, g in enumerate(doc.get("generators", list)))
    binomials = []
    for i, b in enumerate(doc.get("binomials", list)):
        d = doc.sub(f"binomials[{i}]", b)
        binomials.append(Binomial(tuple(d.int_list("plus")), tuple(d.int_list("minus"))))
    cert = []
    for i, c in enumerate(doc.get("hilbert_certificate", list, optional=True) or []):
        d = doc.sub(f"hilbert_certificate[{i}]", c)
        cert.append((d.get("k", int), d.get("semigroup", int), d.get("hilbert", int)))
    return ToricDegenerationData(gens, tuple(binomials), doc.get("certified_level", int), tuple(cert))


# ---------------------------------------------------------------------------
# files

def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(path, f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    except OSError as exc:
        raise FormatError(path, "<file>", exc.strerror or str(exc)) from None


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# polynomial-valued outputs

def _universe_from(doc: _Doc) -> VariableUniverse:
    u = doc.sub("universe", doc.get("universe", dict))
    return VariableUniverse(u.get("n", int), u.get("r", int))


def _poly(doc: _Doc, key, text, U):
    try:
        return parse_polynomial(text, U)
    except (DomainError, TypeError, AttributeError) as exc:
        doc.fail(key, str(exc))


def unipotent_to_json(u) -> dict:
    return {"n": u.n, "entries": [[format_polynomial(e) for e in row] for row in u.entries]}


def unipotent_from_json(data, source: str = "<document>"):
    from .symplectic_rep import SymbolicUnipotentMatrix
    doc = _Doc(data, source)
    n = doc.get("n", int)
    U = VariableUniverse(n)
    rows = doc.get("entries", list)
    entries = tuple(tuple(_poly(doc, f"entries[{i}][{j}]", e, U) for j, e in enumerate(row))
                    for i, row in enumerate(rows))
    return SymbolicUnipotentMatrix(n, entries)


def embedding_to_json(E) -> dict:
    return {
        "spec": spec_to_json(E.spec),
        "universe": universe_to_json(E.universe),
        "generators": [format_polynomial(g) for g in E.generators],
        "generator_weights": [list(E.spec.weights[i]) for i in E.generator_weights],
    }


def embedding_from_json(data, source: str = "<document>") -> dict:
    """Spec, universe and generator polynomials (the cone is recomputed by psi_embed when needed)."""
    doc = _Doc(data, source)
    U = _universe_from(doc)
    return {
        "spec": spec_from_json(doc.get("spec", dict), source),
        "universe": U,
        "generators": [_poly(doc, f"generators[{i}]", g, U) for i, g in enumerate(doc.get("generators", list))],
        "generator_weights": [tuple(doc.int_list(f"generator_weights[{i}]", w))
                              for i, w in enumerate(doc.get("generator_weights", list))],
    }


def trace_to_json(trace) -> dict:
    U = trace.input.universe
    return {
        "universe": universe_to_json(U),
        "input": format_polynomial(trace.input),
        "steps": [{"exponents": list(s.exponents), "coefficient": rational_json(s.coefficient),
                   "lead": list(s.lead), "remainder": format_polynomial(s.remainder)} for s in trace.steps],
        "remainder": format_polynomial(trace.remainder),
        "status": trace.status,
    }


def trace_from_json(data, source: str = "<document>"):
    from .sagbi import SubductionStep, SubductionTrace
    doc = _Doc(data, source)
    U = _universe_from(doc)
    steps = []
    for i, s in enumerate(doc.get("steps", list)):
        d = doc.sub(f"steps[{i}]", s)
        steps.append(SubductionStep(tuple(d.int_list("exponents")), d.rational("coefficient", d.get("coefficient")),
                                    tuple(d.int_list("lead")), _poly(d, "remainder", d.get("remainder", str), U)))
    status = doc.get("status", str)
    if status not in ("zero", "stuck", "budget_exhausted"):
        doc.fail("status", f"unknown status {status!r}")
    return SubductionTrace(_poly(doc, "input", doc.get("input", str), U), tuple(steps),
                           _poly(doc, "remainder", doc.get("remainder", str), U), status)


def family_to_json(U: VariableUniverse, weight, tau, f) -> dict:
    return {"universe": universe_to_json(U), "weight": list(weight), "tau": rational_json(tau),
            "polynomial": format_polynomial(f)}


def family_from_json(data, source: str = "<document>") -> dict:
    doc = _Doc(data, source)
    U = _universe_from(doc)
    return {"universe": U, "weight": tuple(doc.int_list("weight")), "tau": doc.rational("tau", doc.get("tau")),
            "polynomial": _poly(doc, "polynomial", doc.get("polynomial", str), U)}
