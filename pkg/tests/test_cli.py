import json

import numpy as np
import pytest

from suprafix.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


# ---------------------------------------------------------------------------
# exit codes

def test_classify_clean_exits_zero(run):
    code, out, _ = run("classify", "euclidean_line", "--samples", "500")
    assert code == 0
    assert "metric: holds" in out


def test_classify_exp_abs(run):
    code, out, _ = run("classify", "exp_abs", "--samples", "1000")
    assert code == 0
    assert "suprametric: holds" in out
    assert "b_metric: fails" in out
    assert "grows with the box" in out
    assert "declared suprametric (s=1, c=1): ok" in out


def test_classify_semimetric_violation_exits_two(run):
    code, out, _ = run("classify", "exp_signed", "--samples", "500")
    assert code == 2
    assert "symmetry witness" in out


def test_classify_asymmetric_file_exits_two_with_witness(run, tmp_path):
    path = tmp_path / "asym.json"
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0.0, 2.0], [1.0, 0.0]]}))
    code, out, _ = run("classify", f"file:{path}")
    assert code == 2
    assert "symmetry witness" in out


def test_classify_no_validate_reaches_semimetric_check(run, tmp_path):
    path = tmp_path / "asym.json"
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0.0, 2.0], [1.0, 0.0]]}))
    code, out, _ = run("classify", f"file:{path}", "--no-validate")
    assert code == 2
    assert "symmetry" in out


def test_classify_good_file(run, tmp_path):
    path = tmp_path / "ok.json"
    path.write_text(json.dumps({"points": ["a", "b", "c"],
                                "distances": [[0.0, 1.0, 2.0],
                                              [1.0, 0.0, 1.0],
                                              [2.0, 1.0, 0.0]]}))
    code, out, _ = run("classify", f"file:{path}")
    assert code == 0
    assert "metric: holds" in out


def test_unreadable_file_exits_three(run, tmp_path):
    code, _, err = run("classify", f"file:{tmp_path}/nope.json")
    assert code == 3
    assert "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _, _ = run("classify", f"file:{bad}")
    assert code == 3


def test_unknown_space_exits_three(run):
    code, _, err = run("classify", "atlantis")
    assert code == 3
    assert "unknown space" in err


def test_convert_values(run):
    code, out, _ = run("convert", "0.5", "2")
    assert code == 0
    assert out.strip() == "s = 2"
    code, out, _ = run("convert", "0.25", "4")
    assert "s = 4" in out
    code, out, _ = run("convert", "0.9", "0")
    assert "s = 1" in out


def test_convert_bad_params_exit_three(run):
    code, _, err = run("convert", "1.5", "2")
    assert code == 3
    code, _, _ = run("convert", "0.5", "-1")
    assert code == 3


def test_convert_with_verification(run):
    code, out, _ = run("convert", "0.5", "2", "--verify", "power_square",
                       "--samples", "2000")
    assert code == 0
    assert "interpolative(alpha=0.5, c=2) on power_square: ok" in out
    assert "b_metric(s=2): ok" in out


def test_solve_halving(run):
    code, out, _ = run("solve", "halving_euclid", "--x0", "1", "--tol", "1e-12")
    assert code == 0
    assert "status: converged" in out


def test_solve_requires_map(run):
    code, _, err = run("solve", "euclidean_line", "--x0", "1")
    assert code == 3
    assert "no self-map" in err


def test_solve_explicit_map(run):
    code, out, _ = run("solve", "euclidean_line", "--map", "affine:0.25,0",
                       "--x0", "8")
    assert code == 0


def test_solve_doubling_exits_four(run):
    code, out, _ = run("solve", "doubling_euclid", "--x0", "1")
    assert code == 4
    assert "diverged" in out


def test_solve_bad_start_exits_three(run):
    code, _, err = run("solve", "supra_expm1", "--x0", "50")
    assert code == 3
    assert "outside" in err


def test_solve_trace_output(run, tmp_path):
    path = tmp_path / "trace.txt"
    code, _, _ = run("solve", "halving_euclid", "--x0", "1",
                     "--trace-out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# iteration point step_distance")
    first = lines[1].split()
    assert first[0] == "0" and float(first[1]) == 1.0
    second = lines[2].split()
    assert float(second[1]) == 0.5 and float(second[2]) == 0.5


def test_certify_supra_expm1(run):
    code, out, _ = run("certify", "supra_expm1", "--samples", "2000")
    assert code == 0
    assert "no_violation" in out


def test_certify_negative_control_exits_four(run):
    code, out, _ = run("certify", "halving_euclid", "--theta", "linear:0.4",
                       "--samples", "1000")
    assert code == 4
    assert "violated" in out


def test_certify_plain_kind(run):
    code, out, _ = run("certify", "halving_euclid", "--kind", "plain",
                       "--samples", "1000")
    assert code == 0
    assert "plain" in out


def test_certify_rejects_non_monotone_theta(run, tmp_path):
    table = tmp_path / "dec.txt"
    table.write_text("0.0 0.5\n1.0 0.4\n2.0 0.3\n")
    code, _, err = run("certify", "halving_euclid", "--theta", f"table:{table}")
    assert code == 3
    assert "non-decreasing" in err


def test_falsify_witness_found(run):
    code, out, _ = run("falsify", "exp_abs", "b_metric:1000")
    assert code == 0
    assert "WITNESS" in out
    assert "triangle ratio" in out


def test_falsify_no_witness_exits_five(run):
    code, out, _ = run("falsify", "euclidean_line", "b_metric:1")
    assert code == 5
    assert "no witness" in out


def test_falsify_symmetry(run):
    code, out, _ = run("falsify", "exp_signed", "symmetry")
    assert code == 0
    assert "d(x,y)" in out


def test_falsify_bad_claim_exits_three(run):
    code, _, _ = run("falsify", "exp_abs", "b_metric:0.2")
    assert code == 3


def test_theta_command(run):
    code, out, _ = run("theta", "linear:0.5")
    assert code == 0
    assert "theta1 (iterates vanish): holds" in out
    assert "theta2 (iterates summable): holds" in out


def test_theta_rational_decay_with_raised_cap(run):
    code, out, _ = run("theta", "rational_decay", "--cap", "1000000",
                       "--eps", "1e-5")
    assert code == 0
    assert "theta1 (iterates vanish): holds" in out
    assert "theta2 (iterates summable): fails" in out


def test_theta_power_half_subdiagonal_fails(run):
    code, out, _ = run("theta", "power:0.5")
    assert code == 0
    assert "subdiagonal: FAILS" in out


def test_box_override(run):
    code, out, _ = run("falsify", "exp_abs", "b_metric:10", "--box", "-2,2")
    assert code == 5  # on [-2,2] the worst ratio is e^2/2 < 10


def test_box_on_finite_space_exits_three(run, tmp_path):
    path = tmp_path / "ok.json"
    path.write_text(json.dumps({"points": ["a", "b"],
                                "distances": [[0.0, 1.0], [1.0, 0.0]]}))
    code, _, err = run("classify", f"file:{path}", "--box", "-1,1")
    assert code == 3


def test_gallery_listing(run):
    code, out, _ = run("gallery")
    assert code == 0
    assert "supra_expm1" in out


# ---------------------------------------------------------------------------
# machine output

MACHINE_COMMANDS = [
    ("classify", "exp_abs", "--samples", "1000"),
    ("convert", "0.25", "4"),
    ("solve", "halving_euclid", "--x0", "1", "--tol", "1e-12"),
    ("certify", "supra_expm1", "--samples", "1000"),
    ("falsify", "exp_abs", "b_metric:1000"),
    ("theta", "rational_decay"),
]


@pytest.mark.parametrize("argv", MACHINE_COMMANDS, ids=lambda a: a[0])
def test_machine_output_is_valid_json_and_reproducible(run, argv):
    code1, out1, _ = run(*argv, "--format", "machine", "--seed", "42")
    code2, out2, _ = run(*argv, "--format", "machine", "--seed", "42")
    assert code1 == code2
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["command"] == argv[0]
    assert doc["config"]["seed"] == 42


def test_machine_floats_have_full_precision(run):
    _, out, _ = run("solve", "halving_euclid", "--x0", "1", "--tol", "1e-12",
                    "--format", "machine")
    doc = json.loads(out)
    assert doc["result"]["fixed_point"] == 2.0 ** -40


def test_different_seed_changes_sampled_output(run):
    _, a, _ = run("classify", "exp_abs", "--samples", "500",
                  "--format", "machine", "--seed", "1")
    _, b, _ = run("classify", "exp_abs", "--samples", "500",
                  "--format", "machine", "--seed", "2")
    assert a != b
    assert json.loads(a)["config"]["seed"] == 1
