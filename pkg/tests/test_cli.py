from __future__ import annotations

import subprocess
import sys

import pytest

from conftest import DATA
from csysmod.cli import main, resolve_monad, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_laws_pass_for_option(capsys):
    code, out, _ = run(capsys, "laws", "--monad", "option", "--samples", "20", "--seed", "3")
    assert code == 0
    assert "seed: 3" in out and "law monad-3: 20 instances, pass" in out


def test_laws_fail_for_broken_plugin(capsys):
    code, out, _ = run(capsys, "laws", "--monad", "py:csysmod.testing:BrokenMonad", "--samples", "100")
    assert code == 1
    assert "law monad-3: 100 instances, FAIL counterexample:" in out


def test_laws_from_signature_file(capsys):
    code, out, _ = run(capsys, "laws", "--sig", str(DATA / "lambda.sig"), "--samples", "10")
    assert code == 0 and "monad: lambda" in out


def test_gat_selector(capsys):
    code, out, _ = run(capsys, "laws", "--monad", "gat(U/0,El/1;c/0)", "--samples", "10")
    assert code == 0


def test_check_reports_missing_rule_6(capsys):
    code, out, _ = run(capsys, "check", "--monad", "option", "--judgements", str(DATA / "option_missing_var.jdg"))
    assert code == 1
    assert "RULE 6: ctx: * => MISSING typing: * |- #1 : *" in out
    assert out.rstrip().endswith("subsystem: fail")


def test_check_equalities(capsys):
    args = ["check", "--sig", str(DATA / "gat_uu.sig"), "--max-len", "4", "--max-size", "4", "--judgements"]
    code, out, _ = run(capsys, *args, str(DATA / "uu_closed.jdg"))
    assert code == 0 and "congruence: pass" in out and "regularity: pass" in out
    code, out, _ = run(capsys, *args, str(DATA / "uu_asymmetric.jdg"))
    assert code == 1 and "RULE 2c:" in out


def test_close_then_check(capsys, tmp_path):
    out_file = tmp_path / "eps.jdg"
    code, out, _ = run(capsys, "close", "--monad", "option", "--epsilon", "101", "--max-len", "4", "--out", str(out_file))
    assert code == 0 and "fixpoint: false" in out
    code, out, _ = run(capsys, "check", "--monad", "option", "--max-len", "4", "--judgements", str(out_file))
    assert code == 0


def test_close_of_nothing(capsys, tmp_path):
    empty = tmp_path / "empty.jdg"
    empty.write_text("")
    code, out, _ = run(capsys, "close", "--monad", "option", "--judgements", str(empty))
    assert code == 0
    assert out.splitlines()[0] == "ctx: <empty>"
    assert "# fixpoint: true" in out


def test_close_out_of_bounds_is_usage_error(capsys):
    code, _, err = run(capsys, "close", "--monad", "option", "--epsilon", "1011", "--max-len", "3")
    assert code == 2 and "exceeds bounds" in err


def test_demo_epsilon(capsys):
    code, out, _ = run(capsys, "demo-epsilon", "1", "0", "--max-len", "3")
    assert code == 0
    assert "bounded evidence, not a proof" in out
    assert "symmetric difference: 0" not in out
    code, out, _ = run(capsys, "demo-epsilon", "01", "01")
    assert "symmetric difference: 0 " in out and "first difference: none" in out


def test_quotient_command(capsys, tmp_path):
    dest = tmp_path / "q.txt"
    code, out, _ = run(capsys, "quotient", "--sig", str(DATA / "gat_uu.sig"), "--judgements",
                       str(DATA / "uu_closed.jdg"), "--max-len", "4", "--max-size", "4", "--out", str(dest))
    assert code == 0 and "well-definedness: pass" in out
    lines = dest.read_text().splitlines()
    assert lines[0] == "context classes: 5"
    assert "C1: ctx: U" in lines and "  member ctx: U'" in lines


def test_quotient_refuses_failing_input(capsys):
    code, out, _ = run(capsys, "quotient", "--sig", str(DATA / "gat_uu.sig"), "--judgements",
                       str(DATA / "uu_asymmetric.jdg"), "--max-len", "4", "--max-size", "4")
    assert code == 1 and "not computed" in out


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--monad", "lambda", "L(y. A(V(y), #2))")
    assert code == 0 and out == "L(x1. A(V(x1), #2))\n"
    code, _, err = run(capsys, "normalize", "--monad", "lambda", "L(y. V(z))")
    assert code == 2 and "z" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["laws", "--monad", "nosuch"],
        ["laws", "--monad", "py:nosuch.module:thing"],
        ["check", "--monad", "option", "--judgements", "/nonexistent/file"],
        ["check", "--monad", "option", "--judgements", str(DATA / "gat_uu.sig")],
        ["check", "--monad", "option", "--judgements", str(DATA / "option_missing_var.jdg"), "--max-len", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["laws"])
    assert exc.value.code == 2


def test_resolve_monad():
    monad, module = resolve_monad("option")
    assert monad.name == "option"
    with pytest.raises(UsageError):
        resolve_monad(None)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "csysmod", "laws", "--monad", "point", "--samples", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "verdict: pass" in proc.stdout
