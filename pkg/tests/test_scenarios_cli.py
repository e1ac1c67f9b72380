import csv

import numpy as np
import pytest

from attain.cli import main
from attain.game import save_game
from attain.scenarios import (
    NETWORK_COLS,
    NETWORK_ERRATA,
    NETWORK_F,
    NETWORK_ROWS,
    build_network_game,
    compare_network_table,
    network_formula,
    round_trips,
    scenarios,
)


def test_network_formula_entries():
    assert network_formula((5, 5, 5), (-3, -3)) == (3.0, 13.0)
    assert network_formula((-5, -5, -5), (2, 2)) == (-2.0, -12.0)
    assert NETWORK_F @ np.array([5, 5, 5]) == pytest.approx([0, 10])


def test_network_game_layout(net):
    assert (net.n1, net.n2, net.m) == (8, 4, 2)
    for i, r in enumerate(NETWORK_ROWS):
        for j, c in enumerate(NETWORK_COLS):
            assert tuple(net.payoffs[i, j]) == network_formula(r, c)


def test_network_table_differs_only_at_known_misprint():
    cmp = compare_network_table()
    assert cmp["entries"] == 32
    assert cmp["matches"] == 31
    assert {(m["row"], m["col"]) for m in cmp["mismatches"]} == set(NETWORK_ERRATA)


def test_bundled_games_round_trip():
    for name, sc in scenarios().items():
        if sc.game is not None:
            assert round_trips(sc.game), name
    assert round_trips(build_network_game())


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_cli_value(capsys):
    rc, out, _ = run(capsys, "value", "example1", "--lambda", "1")
    assert rc == 0
    assert out.splitlines()[0] == "1"
    rc, out, _ = run(capsys, "value", "example1", "--lambda", "-1")
    # -G has a saddle at (U, R) with value 1
    assert float(out.splitlines()[0]) == pytest.approx(1.0)


def test_cli_check_all_network(capsys):
    rc, out, _ = run(capsys, "check-all", "network")
    assert rc == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert fields["summary"].startswith("Holds (C2")
    assert float(fields["C2_lower_bound"]) > 0


def test_cli_check_zero_example1(capsys):
    rc, out, _ = run(capsys, "check-zero", "example1")
    assert rc == 0
    assert out.startswith("verdict\tHolds")


def test_cli_check_point_example4(capsys):
    rc, out, _ = run(capsys, "check-point", "example4", "--x", "1,1")
    assert rc == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert fields["B3"].startswith("Fails")
    assert fields["B4"].startswith("Fails")
    assert fields["verdict"].startswith("Fails")


def test_cli_parse_error_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.game"
    bad.write_text("# a game\nn1 2\nn2 2\nm 1\n0 0 x\n")
    rc, _, err = run(capsys, "value", str(bad), "--lambda", "1")
    assert rc == 2
    assert "line" in err


def test_cli_file_game(tmp_path, capsys, ex1):
    path = tmp_path / "ex1.game"
    save_game(ex1, path)
    rc, out, _ = run(capsys, "value", str(path), "--lambda", "1")
    assert rc == 0 and out.splitlines()[0] == "1"


def test_cli_unknown_game(capsys):
    rc, _, err = run(capsys, "value", "nope", "--lambda", "1")
    assert rc == 2 and "nope" in err


def test_cli_simulate_outputs(tmp_path, capsys):
    csv_path, png = tmp_path / "run.csv", tmp_path / "run.png"
    rc, out, _ = run(
        capsys, "simulate", "example1", "--p1", "zero_attainer(eta=0.2)", "--p2", "stationary(q=[1,0])",
        "--horizon", "1.5", "--target", "0", "--csv", str(csv_path), "--plot", str(png),
    )
    assert rc == 0
    assert png.stat().st_size > 1000
    rows = list(csv.reader(open(csv_path)))
    assert rows[0][:2] == ["t", "gamma_1"]
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert float(fields["sup_distance"]) <= 2 * 0.2 * 3 + 3 * 0.2


def test_cli_simulate_unreachable(capsys):
    rc, _, err = run(capsys, "simulate", "example1", "--p1", "zero_attainer(eta=0.05)", "--p2", "uniform",
                     "--horizon", "2")
    assert rc == 2 and "reach" in err


def test_cli_discrete(capsys):
    rc, out, _ = run(capsys, "discrete", "example1", "--stages", "100", "--p1", "pure:0")
    assert rc == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines())
    assert float(fields["final_S"]) == -300.0


def test_cli_scenario_list(capsys):
    rc, out, _ = run(capsys, "scenario", "list")
    assert rc == 0
    for name in ("example1", "example2", "example4", "network"):
        assert name in out


def test_cli_scenario_example2(tmp_path, capsys):
    rc, out, _ = run(capsys, "scenario", "run", "example2", "--plot-dir", str(tmp_path / "figs"))
    assert rc == 0
    assert out.startswith("PASS")
    assert list((tmp_path / "figs").glob("*.png"))


def test_cli_scenario_example4_reports_failure(capsys):
    # the weak-attainer claim fails against R, so the scenario exits 1
    rc, out, _ = run(capsys, "scenario", "run", "example4", "--claim", "5b")
    assert rc == 1
    assert out.startswith("FAIL\t5b")


def test_cli_scenario_unknown(capsys):
    rc, _, _ = run(capsys, "scenario", "run", "nowhere")
    assert rc == 2
