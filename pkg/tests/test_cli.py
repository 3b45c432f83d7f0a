import json

import pytest

from pythagorean_curves import records
from pythagorean_curves.cli import EXIT_BREACH, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from pythagorean_curves.triples import gen_triples_even


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_triples_csv(capsys):
    code, out, err = run(capsys, "gen-triples", "--max-ij", "10")
    assert code == EXIT_OK
    triples = records.triples_from_csv(out)
    assert [t.abc for t in triples] == [t.abc for t in gen_triples_even(10)]
    assert "18 triples" in err


def test_gen_triples_json_round_trip(capsys, tmp_path):
    out_file = tmp_path / "t.jsonl"
    code, _, _ = run(capsys, "gen-triples", "--max-ij", "12", "--format", "json", "--out", str(out_file))
    assert code == EXIT_OK
    got = records.triples_from_jsonl(out_file.read_text())
    assert got == gen_triples_even(12)


def test_gen_triples_bad_bound(capsys):
    code, _, err = run(capsys, "gen-triples", "--max-ij", "1")
    assert code == EXIT_USAGE and "error" in err


def test_curve_report(capsys):
    code, out, _ = run(capsys, "curve", "--triple", "3,4,5", "--all")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["A"] == "-25" and rep["B"] == "144" and rep["discriminant"] == "1016064"
    assert rep["torsion"]["order"] == 4
    assert rep["witness"]["point"] == {"x": ["25", "1"], "y": ["60", "1"]}
    assert (rep["rank"]["lower"], rep["rank"]["upper"]) == (1, 1)


def test_curve_with_points_file(capsys, tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("x,y\n2,14\n")
    code, out, _ = run(capsys, "curve", "--triple", "3,4,5", "--rank", "--no-selmer", "--points", str(pts))
    assert code == EXIT_OK
    assert json.loads(out)["rank"]["lower"] == 1


def test_curve_point_off_curve(capsys, tmp_path):
    pts = tmp_path / "p.csv"
    pts.write_text("x,y\n2,15\n")
    code, _, err = run(capsys, "curve", "--triple", "3,4,5", "--rank", "--points", str(pts))
    assert code == EXIT_USAGE and "not on" in err


@pytest.mark.parametrize("triple", ["3,4,6", "6,8,10"])
def test_curve_bad_triple(capsys, triple):
    code, _, err = run(capsys, "curve", "--triple", triple)
    assert code == EXIT_USAGE and "error" in err


def test_unparseable_triple(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--triple", "3,4"])
    assert exc.value.code == 2


def test_verify_tables_without_ranks(capsys):
    code, out, _ = run(capsys, "verify-tables", "--no-ranks")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "87/87 checks passed"


def test_verify_tables_missing_data(capsys, tmp_path):
    code, _, err = run(capsys, "verify-tables", "--data", str(tmp_path), "--no-ranks")
    assert code == EXIT_FAIL and "cannot read" in err


def test_invariant_breach_exit_code(capsys, monkeypatch):
    from pythagorean_curves import cli
    from pythagorean_curves.rank import InvariantBreach

    def boom(*a, **k):
        raise InvariantBreach("lower bound exceeds upper bound")

    monkeypatch.setattr(cli, "rank_interval", boom)
    code, _, err = run(capsys, "curve", "--triple", "3,4,5", "--rank")
    assert code == EXIT_BREACH and "invariant" in err


def test_gen_triples_1000_reports_both_conventions(capsys, tmp_path):
    code, _, err = run(capsys, "gen-triples", "--max-ij", "1000", "--out", str(tmp_path / "t.csv"))
    assert code == EXIT_OK
    assert "i < N: 202461 triples (matches" in err
    assert "i <= N: 202861 triples (differs" in err
