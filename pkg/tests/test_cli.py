import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import ex3, two_player

from intervalgames import intgame
from intervalgames.cli import GameFileError, dumps, game_document, loads_game, main, parse_game
from intervalgames.intervals import Interval
from intervalgames.intgame import IntervalGame

DATA = Path(__file__).parent / "data"
EX3_FILE = str(DATA / "ex3.json")
TWO_FILE = str(DATA / "two_player.json")
DEGENERATE_FILE = str(DATA / "degenerate.json")


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_ex3_file():
    assert parse_game(EX3_FILE) == ex3()
    assert parse_game(TWO_FILE) == two_player()


def test_decimals_read_exactly():
    assert parse_game(DEGENERATE_FILE)(2) == Interval("1/2", "1/2")
    assert loads_game('{"players": 1, "coalitions": {"1": [0.1, "3/10"]}}')(1) == Interval("1/10", "3/10")
    assert loads_game('{"players": 1, "coalitions": {"1": [1e-1, 2]}}')(1).lo == Fraction(1, 10)


def test_round_trip(rng):
    assert loads_game(dumps(game_document(ex3()))) == ex3()
    for _ in range(100):
        w = intgame.random_interval_game(rng.randint(1, 4), rng)
        assert loads_game(dumps(game_document(w))) == w


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"players": 2, "coalitions": {"1": [0, 1], "2": [0, 1], "2,1": [4, 6]}}', "non-canonical coalition key"),
        ('{"players": 3, "coalitions": {"1": [0, 1], "2": [0, 1], "3": [0, 1], "1,2": [0, 1], "1,3": [0, 1], "1,2,3": [0, 1]}}', "incomplete characteristic function"),
        ('{"players": 1, "coalitions": {"1": [0, 1], "1": [0, 2]}}', "duplicate"),
        ('{"players": 1, "coalitions": {"1": [2, 1]}}', "exceeds"),
        ('{"players": 1, "coalitions": {"1": [0, 1], "": [0, 0]}}', "empty coalition"),
        ('{"players": 1, "coalitions": {"01": [0, 1]}}', "bad coalition key"),
        ('{"players": 1, "coalitions": {"x": [0, 1]}}', "bad coalition key"),
        ('{"players": 1, "coalitions": {"2": [0, 1]}}', "outside"),
        ('{"players": 17, "coalitions": {}}', "players must be"),
        ('{"players": 0, "coalitions": {}}', "players must be"),
        ('{"players": 1, "coalitions": {"1": [0]}}', "two-element"),
        ('{"players": 1, "coalitions": {"1": [0, true]}}', "endpoint"),
        ('{"players": 1, "coalitions": {"1": ["a", 1]}}', "coalition '1'"),
        ('{"players": 1}', "exactly"),
        ("not json", "invalid JSON"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(GameFileError, match=message):
        loads_game(text)


def test_shapley_documented_bytes(capsys):
    code, out, err = run(capsys, "shapley", EX3_FILE)
    assert code == 0 and err == ""
    assert out == '[["11/12","31/12"],["7/6","17/6"],["23/12","43/12"]]\n'


def test_coincide_documented_outputs(capsys):
    code, out, _ = run(capsys, "coincide", TWO_FILE)
    assert code == 0
    assert json.loads(out) == {"outcome": "NotCoincident", "witness": ["6/1", "0/1"], "reason": "VertexInclusion"}
    code, out, _ = run(capsys, "coincide", DEGENERATE_FILE)
    assert json.loads(out) == {"outcome": "Coincident", "reason": "Degenerate"}


def test_improved_shapley_command(capsys):
    _, out, _ = run(capsys, "improved-shapley", EX3_FILE)
    assert json.loads(out) == [["19/12", "23/12"], ["11/6", "13/6"], ["31/12", "35/12"]]


def test_classify_command(capsys):
    _, out, _ = run(capsys, "classify", EX3_FILE)
    doc = json.loads(out)
    assert doc["selection_monotonic"] and not doc["selection_convex"]
    # |w|({1}) = 2 > |w|({1,2}) = 1
    assert doc["witnesses"]["size_monotonic"] == {"game": "length", "pair": [[1], [1, 2]]}
    assert set(doc["witnesses"]) == {k for k, v in doc.items() if v is False}


def test_core_command(capsys):
    _, out, _ = run(capsys, "core", TWO_FILE, "--point", "2,2")
    doc = json.loads(out)
    assert doc["selection_imputation"] and doc["selection_core"] and doc["gen_interval_core"]
    assert set(doc["certificate"]) == {"l", "u"}
    _, out, _ = run(capsys, "core", TWO_FILE, "--point", "6,0")
    assert json.loads(out) == {"selection_imputation": True, "selection_core": True, "gen_interval_core": False}
    _, out, _ = run(capsys, "core", EX3_FILE, "--point", "2,2,2")
    assert json.loads(out)["selection_core"]


def test_vertices_command(capsys):
    _, out, _ = run(capsys, "vertices", TWO_FILE, "--set", "sc")
    assert json.loads(out) == [["0/1", "4/1"], ["0/1", "6/1"], ["4/1", "0/1"], ["6/1", "0/1"]]
    _, out, _ = run(capsys, "vertices", TWO_FILE, "--set", "lower-core")
    assert json.loads(out) == [["0/1", "4/1"], ["4/1", "0/1"]]
    _, out, _ = run(capsys, "vertices", TWO_FILE, "--set", "upper-core")
    assert json.loads(out) == [["1/1", "5/1"], ["5/1", "1/1"]]


def test_audit_command(capsys):
    _, out, _ = run(capsys, "audit", EX3_FILE, "--seed", "7", "--samples", "20", "--pairs", "3")
    doc = json.loads(out)
    assert doc["seed"] == 7
    phi, improved = doc["interval_shapley"], doc["improved_shapley"]
    assert phi["IEFF"]["passed"] and not phi["EFF"]["passed"]
    assert phi["EFF"]["witness"] == {"game": 0, "sum": ["4/1", "9/1"], "grand": ["6/1", "7/1"]}
    assert phi["ADD"] == {"passed": True, "checked": 3}
    assert improved["EFF"]["passed"]
    assert phi["selection_range"] is True and improved["selection_range"] is False
    assert doc["roles"] == {"null": [], "total_null": [], "symmetric": []}


def test_gen_wa_command(capsys, tmp_path):
    target = tmp_path / "wa.json"
    code, out, _ = run(capsys, "gen-wa", "--n", "3", "--b", "1", "--out", str(target))
    assert code == 0 and json.loads(out) == {"written": str(target)}
    assert parse_game(target) == intgame.gen_wa_game(3, 1)
    _, out, _ = run(capsys, "coincide", str(target))
    assert json.loads(out) == {"outcome": "Coincident", "reason": "VertexInclusion", "theorem_test_disagrees": True}
    _, out, _ = run(capsys, "gen-wa", "--n", "2", "--b", "1/2")
    assert loads_game(out) == intgame.gen_wa_game(2, "1/2")


def test_byte_stable(capsys):
    for argv in (("classify", EX3_FILE), ("audit", EX3_FILE, "--samples", "5"), ("coincide", EX3_FILE)):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first
        assert first.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("shapley", str(DATA / "missing.json")),
        ("core", TWO_FILE, "--point", "1,2,3"),
        ("core", TWO_FILE, "--point", "a,b"),
        ("gen-wa", "--n", "2", "--b", "0"),
        ("gen-wa", "--n", "2", "--b", "x"),
        ("audit", EX3_FILE, "--seed", "-1"),
        ("nonsense",),
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err


def test_budget_exit_2(capsys, tmp_path):
    big = tmp_path / "big.json"
    big.write_text(dumps(game_document(IntervalGame.from_function(9, lambda m: (0, 1)))))
    code, out, err = run(capsys, "vertices", str(big))
    assert code == 2 and out == "" and "budget" in err
    # the decision procedure absorbs the budget into an Unknown verdict; the
    # upper border game (singletons 1, grand coalition 1) has an empty core
    code, out, _ = run(capsys, "coincide", str(big))
    assert code == 0
    assert json.loads(out) == {"outcome": "Unknown", "reason": "BudgetExceeded", "heuristic_not_coincident": False}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "intervalgames", "shapley", EX3_FILE], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == '[["11/12","31/12"],["7/6","17/6"],["23/12","43/12"]]\n'
    bad = subprocess.run([sys.executable, "-m", "intervalgames", "shapley"], capture_output=True, text=True)
    assert bad.returncode == 1 and bad.stdout == ""
