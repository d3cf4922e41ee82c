import json
import shutil
import subprocess
import sys

import pytest

from ctree.cli import main

SIG = "(signature (pred r 1) (fn f 1))"
U = "(structure (size 2) (pred r (0 1)) (fn f (1 0)))"
TWO_TEST = ("(tree (n 1) (root n0) (node n0 pred (r x0) (0 n1) (1 n4))"
            " (node n1 fn (x0 <= f x0) (next n2)) (node n2 pred (r x0) (0 n3) (1 n5))"
            " (node n3 term 3) (node n4 term 1) (node n5 term 2))")
IDENT = "(problem (n 1) (exprs (r x0)) (nu (0 0) (1 1)))"
D1 = "(class (sig-summary (pred 1 x3)) (equality off) (prefixes (prefix-lang \"E*A*\")))"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kappa(capsys):
    code, out, _ = run(capsys, "kappa", "--seq", "(seq (n 1) (x1 <= f x0) (r x1))")
    assert code == 0 and out.strip() == "M2: x0 f(x0) | kappa[2]: (r (f x0))"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--tree", TWO_TEST, "--structure", U, "--input", "0",
                       "--signature", SIG)
    assert code == 0 and out.splitlines()[0] == "label 2"
    code, out, _ = run(capsys, "eval", "--tree", TWO_TEST, "--structure", U, "--input", "1")
    assert out.splitlines()[0] == "label 1"


def test_problem_eval(capsys):
    p = "(problem (n 1) (exprs (r x0)) (nu (0 5) (1 7)))"
    assert run(capsys, "problem-eval", "--problem", p, "--structure", U, "--input", "1")[1] \
        == "value 7\n"


def test_classify_exit_codes(capsys):
    code, out, _ = run(capsys, "classify", "--spec", D1)
    assert code == 0 and out.splitlines()[0] == "DECIDABLE via Thm5.2(d.1)"
    red = "(class (sig-summary (pred 2 x1) (fn 2 x1)) (prefixes (prefix-lang \"A2\")))"
    assert run(capsys, "classify", "--spec", red)[0] == 3
    unk = "(class (sig-summary (pred 2 x3)) (prefixes (prefix-lang \"AEA\")))"
    assert run(capsys, "classify", "--spec", unk)[0] == 4
    assert run(capsys, "classify", "--spec", unk, "--r0", "2")[0] == 3
    code, out, _ = run(capsys, "classify", "--spec", D1, "--explain")
    assert "(d.2)" in out


def test_sat(capsys, tmp_path):
    sent = tmp_path / "s.fo"
    sent.write_text("(exists x0 (r x0))")
    sig = tmp_path / "s.sig"
    sig.write_text("(signature (pred r 1))")
    code, out, _ = run(capsys, "sat", "--sentence", str(sent), "--signature", str(sig),
                       "--max-size", "1")
    assert code == 0 and out.startswith("SAT\n(structure (size 1)")
    code, out, _ = run(capsys, "sat", "--sentence", "(exists x0 (r x0))", "--signature", str(sig),
                       "--max-size", "3", "--alpha", "(forall x0 (not (r x0)))")
    assert code == 1 and out.strip() == "UNSAT-UP-TO 3"


def test_solve_check(capsys):
    code, out, _ = run(capsys, "solve-check", "--tree", "(tree (n 1) (root n0) (node n0 term 0))",
                       "--problem", IDENT, "--signature", SIG, "--max-size", "2",
                       "--method", "both")
    assert code == 1 and "brute: FAILS" in out and "reduction: FAILS" in out
    code, out, _ = run(capsys, "solve-check", "--tree",
                       "(tree (n 1) (root n0) (node n0 pred (r x0) (0 n1) (1 n2))"
                       " (node n1 term 0) (node n2 term 1))",
                       "--problem", IDENT, "--signature", SIG, "--max-size", "2",
                       "--method", "both")
    assert code == 0


def test_optimize_json(capsys, tmp_path):
    w = tmp_path / "w.tsv"
    w.write_text("r\t1\nf\t2\n")
    p = "(problem (n 1) (exprs (x1 <= f x0) (r x1)) (nu (0 0) (1 1)))"
    code, out, _ = run(capsys, "optimize", "--problem", p, "--signature", SIG, "--max-size", "2",
                       "--measure", str(w), "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"]["psi"] == 3
    assert set(data) >= {"verdict", "certificate", "timings"}


def test_sat_via_opt(capsys):
    code, out, _ = run(capsys, "sat-via-opt", "--sentence", "(exists x0 (r (f x0)))",
                       "--signature", SIG, "--max-size", "2",
                       "--alpha", "(forall x0 (not (r x0)))")
    assert code == 1 and out.strip() == "UNSAT-UP-TO 2"


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--tree",
                       "(tree (n 1) (root n0) (node n0 fn (x5 <= f x0) (next n1)) (node n1 term 0))")
    assert code == 0 and "(x1 <= f x0)" in out


def test_errors(capsys):
    code, _, err = run(capsys, "kappa", "--seq", "(seq (n 1)\n  (x1 <= f x0) (r x1)")
    assert code == 2 and "line" in err
    code, _, err = run(capsys, "sat", "--sentence", "(exists x0 (= x0 x0))", "--signature",
                       "(signature (pred r 1))", "--max-size", "1")
    assert code == 2
    code, out, _ = run(capsys, "kappa", "--seq", "no-such-file.seq", "--json")
    assert code == 2 and json.loads(out)["verdict"] == "ERROR"
    with pytest.raises(SystemExit):
        main(["eval", "--threads", "0", "--tree", "x", "--structure", "y", "--input", "0"])


@pytest.mark.skipif(shutil.which("ctree") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["ctree", "classify", "--spec", D1], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("DECIDABLE")


def test_module_entry():
    proc = subprocess.run([sys.executable, "-m", "ctree.cli", "kappa", "--seq",
                           "(seq (n 2) (= x0 x1))"], capture_output=True, text=True)
    assert proc.returncode == 0 and "kappa[1]: (= x0 x1)" in proc.stdout


def test_divergence_exit_code(capsys, monkeypatch):
    from ctree import cli
    from ctree.solvability import FailsWith, Solves
    monkeypatch.setattr(cli, "solves_relative",
                        lambda S, s, sig, spec, alpha, m, guard: Solves() if m == "brute"
                        else FailsWith(None))
    code, out, _ = run(capsys, "solve-check", "--tree", "(tree (n 1) (root n0) (node n0 term 0))",
                       "--problem", IDENT, "--signature", SIG, "--max-size", "1",
                       "--method", "both")
    assert code == 5 and "DIVERGED" in out
