import json

import pytest

from ellhyp import cli, contour
from ellhyp.gamma_core import QuasiPeriods


def write(tmp_path, obj, name="p.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_cgamma(tmp_path, capsys):
    code, out, _ = run(capsys, "eval", "--fn", "cgamma", "--params", write(tmp_path, {"x": 0, "n": 1}))
    assert code == 0
    assert json.loads(out)["value"] == [2.0, 0.0]


def test_eval_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "eval", "--fn", "cgamma", "--params", write(tmp_path, {"x": [0, -1], "n": 0}),
                       "--format", "csv")
    assert code == 0
    head, row = out.strip().splitlines()
    assert head.startswith("fn,value_re,value_im")
    assert row.startswith("cgamma,1.0,0.0")


def test_malformed_json_names_the_line(tmp_path, capsys):
    path = write(tmp_path, '{\n  "x": 0,\n  "n": \n}')
    code, _, err = run(capsys, "eval", "--fn", "cgamma", "--params", path)
    assert code == 4
    assert "p.json:4" in err


def test_wrong_field_type(tmp_path, capsys):
    code, _, err = run(capsys, "eval", "--fn", "cgamma", "--params", write(tmp_path, {"x": 0, "n": 2.0}))
    assert code == 4
    assert "'n'" in err


def test_unknown_field(tmp_path, capsys):
    code, _, _ = run(capsys, "eval", "--fn", "cgamma", "--params", write(tmp_path, {"x": 0, "n": 1, "y": 2}))
    assert code == 4


def test_bad_arguments(capsys):
    assert run(capsys, "eval", "--fn", "nosuch", "--params", "x.json")[0] == 4
    assert run(capsys, "frobnicate")[0] == 4


def test_pole_is_a_domain_error(tmp_path, capsys):
    code, _, _ = run(capsys, "eval", "--fn", "cgamma", "--params", write(tmp_path, {"x": [0, 2], "n": 0}))
    assert code == 3


def test_unbalanced_parameters(tmp_path, capsys):
    par = {"mu": [0.3, 0.3, 0.3, 0.3], "nu": [0.3, 0.3, 0.3, [0.3, 1]]}
    code, _, err = run(capsys, "eval", "--fn", "jh", "--params", write(tmp_path, par))
    assert code == 3
    assert "balancing" in err


def test_jh_on_its_locus_matches_closed_form(tmp_path, capsys):
    # omega = (1, 1): Q = 2; mu4 + nu4 = Q and the first three pairs sum to Q
    par = {"mu": [0.3, 0.35, 0.4, 0.3], "nu": [0.25, 0.2, 0.5, 1.7], "omega": [1, 1]}
    path = write(tmp_path, par)
    code, out, _ = run(capsys, "eval", "--fn", "jh", "--params", path)
    assert code == 0
    a = complex(*json.loads(out)["value"])
    code, out, _ = run(capsys, "eval", "--fn", "jh_closed_form", "--params", path)
    assert code == 0
    b = complex(*json.loads(out)["value"])
    assert abs(a - b) < 1e-9 * abs(b)


def test_check_random_cases(capsys):
    code, out, _ = run(capsys, "check", "--id", "ehe", "--seed", "42", "--tol", "1e-8")
    assert code == 0
    assert json.loads(out)["status"] == "PASS"


def test_check_alias_and_closed_form_equation(capsys):
    code, out, _ = run(capsys, "check", "--id", "f_eq", "--seed", "1", "--cases", "3")
    assert code == 0
    assert len(json.loads(out)["deviations"]) == 3
    assert run(capsys, "check", "--id", "elldif", "--seed", "1")[0] == 0


def test_failed_check_exits_one(capsys):
    assert run(capsys, "check", "--id", "f_eq", "--seed", "1", "--tol", "1e-30")[0] == 1


def test_check_with_coincident_labels(tmp_path, capsys):
    # s2 = s3 and n2 = n3 make the equation's coefficients singular
    par = {"s": [[0.1, -0.5], [0.2, -0.4], [0.2, -0.4], [0.1, -0.5]], "n": [0, 1, 1, 0],
           "t": [[-0.1, -0.5], [-0.2, -0.6], [-0.1, -0.5], [-0.2, -0.6]], "m": [0, -1, -1, 0]}
    code, _, _ = run(capsys, "check", "--id", "difjmn", "--params", write(tmp_path, par))
    assert code == 3


def test_unknown_check(capsys):
    assert run(capsys, "check", "--id", "nosuch")[0] == 4


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--id", "gamma_b_to_i", "--deltas", "1e-1,1e-2,1e-3")
    assert code == 0
    res = json.loads(out)
    devs = [r["deviation"] for r in res["rows"]]
    assert len(devs) == 3 and devs[0] > devs[1] > devs[2]
    assert res["monotone"] is True


def test_scan_csv_ends_with_order(capsys):
    code, out, _ = run(capsys, "scan", "--id", "gamma_b_to_i", "--deltas", "1e-1,1e-2", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("order,")


@pytest.mark.parametrize("deltas", ["", "0.1,x"])
def test_scan_rejects_unreadable_deltas(capsys, deltas):
    assert run(capsys, "scan", "--id", "gamma_b_to_i", "--deltas", deltas)[0] == 4


def test_scan_needs_decreasing_deltas(capsys):
    assert run(capsys, "scan", "--id", "gamma_b_to_i", "--deltas", "0.1,0.2")[0] == 3


def test_output_is_deterministic(capsys):
    a = run(capsys, "check", "--id", "br", "--seed", "3")[1]
    b = run(capsys, "check", "--id", "br", "--seed", "3")[1]
    assert a == b


def test_budget_flag(capsys):
    try:
        code, _, err = run(capsys, "check", "--id", "br", "--seed", "3", "--budget", "64")
    finally:
        contour.set_budget(None)
    assert code == 2
    assert "non-convergence" in err


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv(contour.BUDGET_ENV, "5000")
    try:
        contour._budget_from_env()
        assert contour.ContourSpec().budget == 5000
    finally:
        contour.set_budget(None)


def test_default_omega_is_complex():
    w = QuasiPeriods(*cli.DEFAULT_OMEGA)
    assert w.omega2.imag > 0
