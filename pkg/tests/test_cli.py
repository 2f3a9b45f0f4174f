import json

from covol.cli import EXIT_CONTRADICTION, EXIT_ERROR, EXIT_OK, EXIT_USAGE, run


def run_json(capsys, *argv):
    code = run(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_field_command(capsys):
    code, data = run_json(capsys, "field", "--poly", "x^4-x^3-3x^2+x+1")
    assert code == EXIT_OK
    assert data["degree"] == 4 and data["disc"] == 725
    text = json.dumps(data)
    assert "16" in text  # the inert prime 2 has norm 16


def test_field_command_coefficient_list(capsys):
    code, data = run_json(capsys, "field", "--poly", "[1,1,-3,-1,1]")
    assert code == EXIT_OK and data["disc"] == 725


def test_zeta_command(capsys):
    code, data = run_json(capsys, "zeta", "--poly", "x^2-x-1")
    assert code == EXIT_OK and data["zeta_minus_1"] == "1/30"


def test_covolume_command(capsys):
    code, data = run_json(capsys, "covolume", "--disc", "49")
    assert code == EXIT_OK
    assert data["chi_max"] == "1/84" and data["chi_norm1_vigneras"] == "-1/42"
    assert any("vigneras-discrepancy" in f for f in data["flags"])
    code, data = run_json(capsys, "covolume", "--disc", "725", "--inf-ram", "2")
    assert data["chi_max"] == "1/60" and data["ep_min"] == "1/15"


def test_json_round_trip(capsys):
    run(["covolume", "--disc", "725", "--json"])
    first = capsys.readouterr().out
    assert json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n" == first


def test_exit_codes(capsys):
    assert run(["covolume", "--disc", "725", "--inf-ram", "1"]) == EXIT_ERROR
    assert run(["nonsense"]) == EXIT_USAGE
    assert run(["field", "--poly", "x^2+1"]) == EXIT_ERROR
    assert EXIT_CONTRADICTION == 2
    capsys.readouterr()


def test_bounds_command(capsys):
    code, data = run_json(capsys, "bounds", "cutoff", "--m", "4", "--budget", "1/60")
    assert code == EXIT_OK and "4704" in json.dumps(data)


def test_survey_plan_only(capsys):
    code, data = run_json(capsys, "survey", "--budget", "1/15", "--measure", "ep", "--plan-only")
    assert code == EXIT_OK and data["chi_budget"] == "1/60"


def test_reproduce_tables(capsys):
    assert run(["reproduce", "--tables"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "quintic" in out and "quartic" in out and "cubic" in out
    assert "5/264" in out
