from __future__ import annotations

import csv
import io
import json

import pytest

from scrollrank import bounds
from scrollrank.cli import main
from scrollrank.decouple import embed, synth
from scrollrank.scroll import psi


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_bounds_command(capsys):
    code, out = run(capsys, "bounds", "--m", "3", "--n", "2", "--d", "3")
    data = json.loads(out)
    assert code == 0
    assert (data["ident_bound"], data["mn_cap"], data["dis_bound"]) == (4, 6, 3)

    data = json.loads(run(capsys, "bounds", "--m", "10", "--n", "1", "--d", "4")[1])
    assert data["rgen_d1d"]["exact"] == 85
    assert (data["rmax"]["ours"], data["rmax"]["bbs"]) == (170, 220)

    data = json.loads(run(capsys, "bounds", "--m", "2", "--n", "1", "--d", "2")[1])
    for key in ("r2", "r3", "r4", "r5"):
        assert data[key] is None and data["missing"][key] == "d < 3"


def table(out):
    return list(csv.reader(io.StringIO(out)))


def test_bound_table_matches_formula(capsys):
    code, out = run(capsys, "table", "--kind", "bound", "--d", "3", "--m", "2:8", "--n", "1:8")
    rows = table(out)
    assert code == 0
    assert rows[0] == ["m/n"] + [str(n) for n in range(1, 9)]
    for row in rows[1:]:
        m = int(row[0])
        for n, cell in zip(range(1, 9), row[1:]):
            value = bounds.identifiability_bound((1, 2, 3), m, n)
            assert cell == f"{value}*" if value == m * n else cell == str(value)


def test_dis_table(capsys):
    rows = table(run(capsys, "table", "--kind", "dis", "--m", "2:4", "--n", "1:3")[1])
    assert rows[2][2] == "3"


def test_terracini_table_deterministic(capsys):
    args = ("table", "--kind", "terracini", "--d", "3", "--m", "2:4", "--n", "1:3", "--seed", "5")
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    rows = table(first)
    assert rows[1][1:] == ["2*", "4*", "3"]
    assert rows[3][1:] == ["4*", "8*", "12*"]


def test_probe_command(capsys):
    data = json.loads(run(capsys, "probe", "--profile", "4", "--m", "3", "--r", "5")[1])
    assert data["defect"] == 1
    data = json.loads(run(capsys, "probe", "--profile", "1,2,3", "--m", "2", "--r", "1")[1])
    assert data["measured_dim"] == 4


@pytest.mark.slow
def test_probe_generic_rank_point(capsys):
    data = json.loads(run(capsys, "probe", "--profile", "3,4", "--m", "10", "--r", "85")[1])
    assert data["measured_dim"] == 935


def test_member_command(tmp_path, capsys):
    good = psi((1, 2, -1), (2, 3), (1, 3))
    path = tmp_path / "p.json"
    path.write_text(json.dumps(good.to_json()))
    assert json.loads(run(capsys, "member", str(path))[1]) == {"member": True}

    bad = good + psi((0, 1, 0), (1, 1), (1, 3))
    path.write_text(json.dumps(bad.to_json()))
    assert json.loads(run(capsys, "member", str(path))[1]) == {"member": False}

    path.write_text(json.dumps(psi((1, 2), (1, 1), (0, 2)).to_json()))
    assert run(capsys, "member", str(path))[0] == 2


def test_synth_recover_roundtrip(tmp_path, capsys):
    model_path, point_path, dense_path = (tmp_path / x for x in ("m.json", "p.json", "d.json"))
    code, out = run(capsys, "synth", "--m", "3", "--n", "2", "--d", "3", "--r", "4", "--seed", "7",
                    "--embed", str(point_path), "--dense", str(dense_path))
    assert code == 0
    model_path.write_text(out)
    for source in (point_path, dense_path):
        data = json.loads(run(capsys, "recover", str(source), "--directions", str(model_path))[1])
        assert data["matches_model"] and all(data["unique_per_degree"])

    wrong = tmp_path / "w.json"
    wrong.write_text(json.dumps(synth(3, 2, 3, 4, seed=8).to_json()))
    data = json.loads(run(capsys, "recover", str(point_path), "--directions", str(wrong))[1])
    assert not all(data["consistent_per_degree"]) and not data["matches_model"]


def test_worked_example_roundtrip_through_files(tmp_path, capsys):
    from test_decouple import WORKED

    model_path, point_path = tmp_path / "m.json", tmp_path / "p.json"
    model_path.write_text(json.dumps(WORKED.to_json()))
    point_path.write_text(json.dumps(embed(WORKED).to_json()))
    data = json.loads(run(capsys, "recover", str(point_path), "--directions", str(model_path))[1])
    assert data["unique_per_degree"] == [False, True, True]
    assert data["C"][1:] == [["1/1", "-1/1", "0/1"], ["1/1", "1/1", "-2/1"]]


def test_audit_command(capsys):
    data = json.loads(run(capsys, "audit-ah", "--m-max", "3", "--d-max", "4")[1])
    assert data["probe_defective"] == [[3, 4]]


def test_bad_input_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--kind", "bound", "--m", "5:2"])
    assert exc.value.code == 2
    assert run(capsys, "member", str(tmp_path / "missing.json"))[0] == 2
    with pytest.raises(SystemExit):
        main(["probe", "--m", "3"])
