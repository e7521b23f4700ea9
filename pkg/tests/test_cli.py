import json

import pytest

from wittcalc.api.cli import main
from wittcalc.utils.constants import EXIT_ERROR, EXIT_OBSTRUCTION, EXIT_OK


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_ghost(capsys):
    code, out = run(capsys, "witt", "ghost", "--p", "3", "--m", "2", "[0,1]")
    assert code == EXIT_OK
    assert out.out.strip() == "[0,3]"


def test_unghost_outside_the_image_is_an_obstruction(capsys):
    code, out = run(capsys, "witt", "unghost", "--p", "3", "--m", "2", "[0,1]", "--json")
    assert code == EXIT_OBSTRUCTION
    report = json.loads(out.out)
    assert report["status"] == "obstruction"
    assert report["payload"]["index"] == 1


def test_witt_arithmetic_over_f3(capsys):
    code, out = run(capsys, "witt", "add", "--p", "3", "--m", "2", "--ring", "Z/3", "[1,0]", "[1,0]")
    assert code == EXIT_OK
    assert out.out.strip() == "[2,1]"


def test_burnside_norm_lift_is_obstructed(capsys):
    code, out = run(capsys, "witt", "lift", "--p", "3", "--map", "burnside-norm:C3", "[0,1]")
    assert code == EXIT_OBSTRUCTION
    assert "status: obstruction" in out.out


def test_lift_of_squaring(capsys):
    code, out = run(capsys, "witt", "lift", "--p", "3", "--map", "power:2", "[1,1]", "--json")
    assert code == EXIT_OK
    assert json.loads(out.out)["status"] == "ok"


def test_lift_formula(capsys):
    code, out = run(capsys, "witt", "formula", "--p", "3", "--n", "2", "--json")
    assert code == EXIT_OK
    assert "expression" in json.loads(out.out)["payload"]


@pytest.mark.parametrize(
    "argv",
    (
        ["witt", "ghost", "[0,1]"],
        ["witt", "ghost", "--p", "3"],
        ["witt", "explode", "--p", "3"],
        ["nonsense"],
        ["burnside", "norm", "--group", "A4", "4"],
    ),
)
def test_usage_errors_exit_with_one(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert out.err


def test_computation_errors_exit_with_one(capsys):
    code, out = run(capsys, "burnside", "units", "--group", "Q8")
    assert code == EXIT_ERROR
    assert "unknown group" in out.err


def test_marks_table(capsys):
    code, out = run(capsys, "burnside", "marks", "--group", "D3", "--json")
    assert code == EXIT_OK
    payload = json.loads(out.out)["payload"]
    assert payload["columns"] == ["e", "Z/2", "C3", "D3"]
    assert payload["marks"][0] == [6, 0, 0, 0]


def test_burnside_norm(capsys):
    code, out = run(capsys, "burnside", "norm", "--group", "A4", "--sub", "C3", "4", "--json")
    assert code == EXIT_OK
    assert json.loads(out.out)["payload"] == {"1": "4", "[A4/C3]": "12", "[A4/Z/2]": "6", "[A4/e]": "14"}


def test_congruence_with_a_point(capsys):
    code, out = run(capsys, "polymap", "congruence", "--map", "burnside-norm:C3", "--p", "3",
                    "--point", "0", "1")
    assert code == EXIT_OBSTRUCTION


def test_free_tambara_product(capsys):
    tr_u = '{"s3": [[[1, 0], 1]]}'
    code, out = run(capsys, "freetambara", "mul", tr_u, tr_u, "--json")
    assert code == EXIT_OK
    assert json.loads(out.out)["payload"] == {"s1": [], "s2": [[[1, 1], "1"]], "s3": [[[2, 0], "1"]]}


def test_tambara_check(capsys):
    code, out = run(capsys, "tambara", "check", "--base", "burnside:Z2", "--samples", "5")
    assert code == EXIT_OK
    assert "FAIL" not in out.out


def test_dp_check(capsys):
    code, out = run(capsys, "dp", "check", "--degree", "2", "--samples", "5")
    assert code == EXIT_OK


def test_replay_cex_json(capsys):
    code, out = run(capsys, "replay", "cex", "--json")
    assert code == EXIT_OBSTRUCTION
    report = json.loads(out.out)
    assert report["status"] == "obstruction"
    assert report["payload"]["3"]["residue"] == {"x": "8"}
    assert report["payload"]["5"]["residue"] == {"x": "624"}


def test_psi_check(capsys):
    code, out = run(capsys, "tambara", "psi-check", "--p", "3", "--n", "1", "--samples", "3")
    assert code == EXIT_OK
    assert out.out.startswith("PASS")
