import json
import subprocess
import sys


from virasoro.cli import main

SAMPLE = ["--z", "1", "--m2", "1", "--m3", "1", "--m4", "3"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_bracket(capsys):
    assert run(capsys, "bracket", "l(2)", "l(-2)") == (0, "-4*l(0) + 1/2*c", "")


def test_bracket_json(capsys):
    code, out, _ = run(capsys, "bracket", "l(2)", "l(3)", "--format", "json")
    assert code == 0 and json.loads(out)


def test_normal_order(capsys):
    assert run(capsys, "normal-order", "l(1)*l(-1)")[1] == "l(-1)*l(1) - 2*l(0)"


def test_act_numeric(capsys):
    code, out, _ = run(capsys, "act", "--module", "W", *SAMPLE, "l(2) - z*l(1) - m2", "z*l(0)*v - l(1)*v")
    assert (code, out) == (0, "-1*v")


def test_act_symbolic(capsys):
    code, out, _ = run(capsys, "act", "--module", "W", "l(2) - z*l(1) - m2", "z*l(0)*v - l(1)*v")
    assert (code, out) == (0, "(-2*z*m2 + m3)*v")


def test_act_inadmissible_mode(capsys):
    code, _, err = run(capsys, "act", "--module", "V", "l(0)", "v")
    assert code == 2 and err


def test_kernel(capsys):
    code, out, _ = run(capsys, "kernel", *SAMPLE, "--max-j", "3", "--max-k", "3", "l(2) - z*l(1) - m2")
    assert code == 0 and out.splitlines() == ["dimension 1", "v"]


def test_kernel_needs_numeric(capsys):
    code, _, err = run(capsys, "kernel", "--max-j", "1", "--max-k", "1", "l(2)")
    assert code == 2 and err


def test_kernel_needs_bounds(capsys):
    code, _, err = run(capsys, "kernel", *SAMPLE, "l(2)")
    assert code == 2 and "--max-j" in err


def test_solve_single_and_joint(capsys):
    ops = ["l(2) - z*l(1) - m2", "v"]
    code, out, _ = run(capsys, "solve", *SAMPLE, "--max-j", "2", "--max-k", "2", *ops)
    assert code == 0 and out.startswith("particular")
    both = ops + ["l(3) - z^2*l(1) - m3", "z*v"]
    code, out, _ = run(capsys, "solve", *SAMPLE, "--max-j", "2", "--max-k", "2", *both)
    assert code == 1 and out == "no solution within the truncation"


def test_compare_index(capsys):
    assert run(capsys, "compare-index", "[0,2]", "[1,0,1]")[:2] == (0, "less")
    assert run(capsys, "compare-index", "[1]", "[1]")[1] == "equal"
    assert run(capsys, "compare-index", "[2]", "[0,1]")[1] == "greater"
    assert run(capsys, "compare-index", "1,2", "[1]")[0] == 2


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "act", "v*l(1)", "v")
    assert code == 2 and "rightmost" in err


def test_check_single(capsys):
    code, out, _ = run(capsys, "check", "closure", "--format", "json", "--no-timing")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "pass" and obj["elapsed_ms"] == 0


def test_check_failing_exit_code(capsys):
    code, out, _ = run(capsys, "check", "contrib", "--format", "json")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_check_mutation_exit_code(capsys):
    assert run(capsys, "check", "bracket_fock", "--mutate", "central_sign")[0] == 1
    assert run(capsys, "check", "character", "--mutate", "m5")[0] == 1
    assert run(capsys, "check", "character")[0] == 0


def test_check_unknown(capsys):
    assert run(capsys, "check", "nope")[0] == 2


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "--module", "V", *SAMPLE, "--trials", "5", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_probe_refuses_violating_point(capsys):
    code, _, err = run(capsys, "probe", "--module", "V", "--z", "1", "--m2", "1", "--m3", "1", "--m4", "1")
    assert code == 2 and "z*m3 != m4" in err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify-subalgebra", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["a3 - a2^2 reduces to 0"] and obj["a4 - a2^3 reduces to 0"]


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "virasoro.cli", "bracket", "l(2)", "l(3)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "l(5)"
