import json

from stardefect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_sdefect_points_json(capsys):
    code, out = run(capsys, "sdefect", "--points", "random:s=5,seed=1", "--m", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"][0]["total"] == 1
    assert rep["results"][0]["per_degree"] == {"5": 1}
    assert rep["input"]["certificate"]["hf_generic"] is True


def test_sdefect_m_range(capsys):
    code, out = run(capsys, "sdefect", "--points", "random:s=3,seed=1", "--m", "0..2", "--json")
    rep = json.loads(out)
    assert [r["total"] for r in rep["results"]] == [0, 0, 1]


def test_points_file_input(tmp_path, capsys):
    f = tmp_path / "pts.pts"
    f.write_text("1:0:0\n0:1:0\n0:0:1\n1:1:1\n# comment\n")
    code, out = run(capsys, "hilbert", "--points", str(f), "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["hilbert_function"][:3] == [1, 3, 4]


def test_lines_input_star_points(capsys):
    code, out = run(capsys, "sdefect", "--lines", "random:s=4,seed=2", "--m", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"][0]["total"] == 1
    assert len(rep["input"]["points"]) == 6


def test_star_input_uncertified_total(capsys):
    code, out = run(
        capsys, "sdefect", "--star", "random:degrees=[1,1,1,1],seed=3,c=2,vars=3", "--m", "2", "--json"
    )
    assert code == 0
    rep = json.loads(out)
    row = rep["results"][0]
    assert row["total"] is None and row["total_certified"] is False
    assert row["observed_total_up_to_bound"] == 1


def test_star_config_file(tmp_path, capsys):
    cfgf = tmp_path / "star.json"
    cfgf.write_text(json.dumps({"vars": 3, "c": 2, "forms": ["x0", "x1", "x2"]}))
    code, out = run(capsys, "betti", "--star", str(cfgf), "--json")
    assert code == 0
    rep = json.loads(out)
    assert {(e["i"], e["j"]): e["rank"] for e in rep["betti"]} == {(0, 2): 3, (1, 3): 2}


def test_bad_input_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.pts"
    f.write_text("1:2\n")
    code = main(["sdefect", "--points", str(f)])
    assert code == 1
    code = main(["sdefect", "--points", "random:s=3,seed=1", "--field", "15"])
    assert code == 1


def test_verify_paper_tables(capsys):
    code, out = run(capsys, "verify", "paper-tables", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert [a["x"] for a in rep["table2"]["transposed_cells"]] == [12]


def test_verify_monomial_grid_small(capsys):
    code, out = run(capsys, "verify", "monomial-grid", "--n-max", "3", "--m-max", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True


def test_byte_identical_reports(capsys):
    _, out1 = run(capsys, "sdefect", "--points", "random:s=4,seed=7", "--m", "0..2", "--json")
    _, out2 = run(capsys, "sdefect", "--points", "random:s=4,seed=7", "--m", "0..2", "--json")
    assert out1.encode() == out2.encode()


def test_human_output(capsys):
    code, out = run(capsys, "sdefect", "--points", "random:s=5,seed=1", "--m", "2")
    assert code == 0
    assert "sdefect=1" in out
