import json

import pytest

from charseq.cli import constants_table, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_pair_quartic_output(capsys):
    code, out = run(capsys, "pair", "--p", "13", "--left", "f", "--right", "g", "--json")
    assert code == 0
    report = json.loads(out.out)
    assert report["params_direct"]["U"] == pytest.approx(0, abs=1e-12)
    assert report["params_direct"]["V"] == pytest.approx(0, abs=1e-12)
    assert report["params_table"]["U"] == 0
    assert report["merit"]["cdf_exact"] == "157/169"


def test_pair_legendre_output(capsys):
    code, out = run(capsys, "pair", "--p", "13", "--left", "h", "--right", "h", "--natural")
    assert code == 0
    assert "S=-2 " in out.out


def test_pair_residual(capsys):
    code, out = run(capsys, "pair", "--p", "13", "--left", "f", "--right", "f", "--json")
    assert json.loads(out.out)["periodic_residual"] < 1e-6


def test_pair_explicit_shifts(capsys):
    code, out = run(capsys, "pair", "--p", "29", "--left", "f", "--right", "h", "--shift", "2", "--shift-right", "5", "--length", "40", "--json")
    report = json.loads(out.out)
    assert (report["shift_left"], report["shift_right"], report["length"]) == (2, 5, 40)


@pytest.mark.parametrize(
    "argv",
    [
        ["figure", "nobody"],
        ["pair", "--p", "13", "--left", "f", "--right", "x"],
        ["pair", "--p", "7", "--left", "f", "--right", "g"],
        ["pair", "--p", "15", "--left", "h", "--right", "h"],
        ["pair", "--p", "13", "--left", "f", "--right", "g", "--shift", "1"],
        ["figure", "aaron", "--pmax", "5"],
        [],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_figure_to_stdout_and_file(capsys, tmp_path):
    code, out = run(capsys, "figure", "edward", "--pmax", "60")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0].startswith("p,cos2gamma,df_f_nat,df_h_nat")
    assert [int(line.split(",")[0]) for line in lines[1:]] == [13, 17, 29, 37, 41, 53]
    target = tmp_path / "figure.csv"
    code, out = run(capsys, "figure", "edward", "--pmax", "60", "--out", str(target))
    assert code == 0 and out.out == ""
    assert target.read_text().splitlines() == lines


def test_unwritable_output(capsys, tmp_path):
    code, out = run(capsys, "figure", "edward", "--pmax", "20", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1
    assert "charseq:" in out.err


def test_constants(capsys):
    code, out = run(capsys, "constants")
    assert code == 0
    rows = dict(constants_table())
    assert rows["mf_max"].startswith("6.342061")
    assert rows["psc_natural"].startswith("1.1666667")
    assert rows["app_cdf_constant"].startswith("0.653367")
    assert f"{float(rows['app_cdf_constant']):.6f}" == "0.653368"
    assert "lambda_app" in out.out


def test_verify_exit_codes(capsys, monkeypatch):
    from charseq import verify

    monkeypatch.setattr(verify, "SUITES", [verify.check_cos_two_gamma_gauss])
    code, out = run(capsys, "verify")
    assert code == 0 and "1/1 suites passed" in out.out
    monkeypatch.setattr(verify, "SUITES", [verify.check_cos_two_gamma_gauss, lambda: verify.CheckResult("forced", False, "negative control")])
    code, out = run(capsys, "verify")
    assert code == 1
    assert "FAIL forced: negative control" in out.out
