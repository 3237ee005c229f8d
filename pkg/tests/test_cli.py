import json
import subprocess
import sys
from fractions import Fraction


from horotoric import serialize as ser
from horotoric.cli import run
from horotoric.gc import DominantWeight, change_of_vars_matrices, gc_polytope
from horotoric.sagbi import (
    degenerate,
    flag_variety_spec,
    lagrangian_grassmannian_spec,
    psi_embed,
    random_element,
    subduct,
    verify_sagbi,
)
from horotoric.symplectic_rep import generic_unipotent, rep_space


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_examples(capsys, tmp_path):
    assert call(capsys, "weyldim", "--group", "SP", "--n", "2", "--lambda", "1,0")[:2] == (0, "4\n")
    code, out, _ = call(capsys, "okounkov-check", "--n", "2", "--lambda", "1,1")
    assert code == 0 and json.loads(out) == {"match": True, "count": 5}
    path = tmp_path / "d0.json"
    assert call(capsys, "gc", "--n", "2", "--lambda", "0,0", "-o", str(path))[0] == 0
    assert call(capsys, "count", str(path))[1] == "1\n"


def test_exit_codes(capsys, tmp_path):
    assert call(capsys, "nosuchcommand")[0] == 2
    assert call(capsys, "weyldim", "--n", "2", "--lambda", "0,1")[0] == 1
    assert call(capsys, "weyldim", "--n", "2", "--lambda", "1,x")[0] == 2
    assert call(capsys, "sagbi-verify", "--builtin", "P3")[0] == 2     # no seed
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "inequalities": [{"a": ["1", "0"], "b": "one"}]}')
    code, _, err = call(capsys, "count", str(bad))
    assert code == 2 and "inequalities[0].b" in err and str(bad) in err
    bad.write_text("{not json")
    assert call(capsys, "count", str(bad))[0] == 2
    spec = tmp_path / "spec.json"
    spec.write_text('{"n": 2, "weights": [[1, 0]], "lattice": [[1, "a"]]}')
    code, _, err = call(capsys, "hilbert", "--spec", str(spec), "--k", "1")
    assert code == 2 and "lattice[0]" in err


def test_randomized_output_is_reproducible(capsys):
    argv = ["sagbi-verify", "--builtin", "LG", "--K", "2", "--trials", "3", "--seed", "7", "--random-choices"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first
    assert json.loads(first)["passed"]


def test_every_subcommand_runs(capsys, tmp_path):
    p = tmp_path / "p.json"
    q = tmp_path / "q.json"
    call(capsys, "gc", "--n", "2", "--lambda", "1,0", "-o", str(p))
    call(capsys, "gc", "--n", "2", "--lambda", "1,1", "-o", str(q))
    spec = tmp_path / "spec.json"
    spec.write_text(ser.dumps(ser.spec_to_json(flag_variety_spec())))
    commands = [
        ["gc", "--group", "GL", "--n", "3", "--lambda", "2,1,0"],
        ["gcprime", "--n", "2", "--lambda", "2,1"],
        ["newton", "--spec", str(spec), "--variant", "prime"],
        ["count", str(p), "--k", "2"],
        ["count", str(p), "--k", "2", "--cone"],
        ["points", str(p)],
        ["vertices", str(p)],
        ["minkowski", str(p), str(q)],
        ["changevars", "--n", "3"],
        ["unipotent", "--n", "2"],
        ["repspace", "--n", "2", "--lambda", "1,1"],
        ["initials", "--n", "2", "--lambda", "2,0"],
        ["hilbert", "--spec", str(spec), "--k", "2"],
        ["embed", "--builtin", "P3"],
        ["subduct", "--builtin", "P3", "--K", "2", "--seed", "1"],
        ["subduct", "--builtin", "P3", "--poly", "1 * x[1,2] * y[1] * t"],
        ["degenerate", "--builtin", "LG", "--seed", "0"],
        ["family", "--builtin", "P3", "--poly", "1 * y[1] * t + 1 * x[1,2] * y[1] * t", "--tau", "1/3"],
    ]
    for argv in commands:
        code, out, err = call(capsys, *argv)
        assert code == 0, (argv, err)
        json.loads(out)


def test_suite_subset(capsys):
    code, out, err = call(capsys, "suite", "--only", "1", "3")
    assert code == 0 and json.loads(out)["passed"]
    assert err.count("[PASS]") == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "horotoric", "weyldim", "--n", "2", "--lambda", "2,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "10\n"


def test_help_lists_formats(capsys):
    assert run(["--help"]) == 0
    out = capsys.readouterr().out
    assert "moment_vertices" in out and "inequalities" in out


# ---------------------------------------------------------------------------
# round trips: parse(print(x)) == x

def roundtrip(to, frm, x):
    doc = json.loads(ser.dumps(to(x)))
    return frm(doc)


def test_roundtrip_polytope_and_points():
    P = gc_polytope(DominantWeight.sp(Fraction(3, 2), 1))
    assert roundtrip(ser.polytope_to_json, ser.polytope_from_json, P) == P
    pts = [(0, 1), (Fraction(1, 2), 3)]
    assert list(roundtrip(ser.points_to_json, ser.points_from_json, pts)) == pts


def test_roundtrip_weight_changevars_repspace_unipotent():
    for w in [DominantWeight.sp(2, 1), DominantWeight.gl(1, 0, -1), DominantWeight.sp(Fraction(1, 2), 0)]:
        assert roundtrip(ser.weight_to_json, ser.weight_from_json, w) == w
    cv = change_of_vars_matrices(3)
    assert roundtrip(ser.changevars_to_json, ser.changevars_from_json, cv) == cv
    S = rep_space(DominantWeight.sp(2, 1))
    assert roundtrip(ser.repspace_to_json, ser.repspace_from_json, S) == S
    u = generic_unipotent(2)
    assert roundtrip(ser.unipotent_to_json, ser.unipotent_from_json, u) == u


def test_roundtrip_spec_report_degeneration_trace():
    spec = flag_variety_spec()
    assert roundtrip(ser.spec_to_json, ser.spec_from_json, spec) == spec
    E = psi_embed(lagrangian_grassmannian_spec())
    rep = verify_sagbi(E, 2, trials=3, seed=5)
    assert roundtrip(ser.report_to_json, ser.report_from_json, rep) == rep
    d = degenerate(E, 2, report=rep)
    assert roundtrip(ser.degeneration_to_json, ser.degeneration_from_json, d) == d
    import random
    tr = subduct(random_element(E, 2, random.Random(1)), E)
    assert roundtrip(ser.trace_to_json, ser.trace_from_json, tr) == tr
    emb = roundtrip(ser.embedding_to_json, ser.embedding_from_json, E)
    assert emb["spec"] == E.spec and tuple(emb["generators"]) == E.generators


def test_atomic_write(tmp_path):
    target = tmp_path / "out.json"
    ser.write_atomic(str(target), "{}\n")
    assert target.read_text() == "{}\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
