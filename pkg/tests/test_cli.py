import json

import pytest

from normdiv import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_verify(capsys):
    code, out, _ = run(capsys, "field", "verify")
    assert code == 0 and out.startswith("check,")


def test_split_and_ideals(capsys):
    code, out, _ = run(capsys, "split", "17")
    assert code == 0 and len(out.strip().splitlines()) == 4  # 17 splits completely in the cubic field
    code, out, _ = run(capsys, "--field", "quartic", "ideals", "17")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_density_rationals(capsys):
    code, out, _ = run(capsys, "density", "varrho", "4")
    assert code == 0
    cell = out.strip().splitlines()[1].split(",")
    assert any("/" in c for c in cell)


def test_hyperbola_trivial(capsys):
    code, out, _ = run(capsys, "hyperbola", "1", "10")
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["S0"] == "1" and values["tau"] == "1" and values["holds"] == "true"


def test_sum_exact_small(capsys):
    code, out, _ = run(capsys, "sum-exact", "10")
    assert code == 0 and out.splitlines()[0] == "X,points,M_exact"


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "mu", "6")
    assert code == 0 and json.loads(out)["name"] == "mu"


def test_bad_config_exits_2(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"X": [20, 10]}))
    code, _, err = run(capsys, "--config", str(cfg), "sum-exact", "10")
    assert code == 2 and "config error" in err


def test_unknown_field_exits_2(capsys):
    code, _, _ = run(capsys, "--field", "nope", "split", "7")
    assert code == 2


def test_wolke_rejects_unknown_F():
    with pytest.raises(SystemExit):
        cli.main(["wolke", "8", "--F", "nope"])


def test_theorem_deterministic(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"X": [10, 20], "P0": 100}))
    outs = []
    for run_dir in ("a", "b"):
        code, out, _ = run(capsys, "--config", str(cfg), "--out", str(tmp_path / run_dir), "theorem")
        assert code == 0
        outs.append((tmp_path / run_dir / "theorem.csv").read_bytes())
        assert outs[-1].decode() == out
    assert outs[0] == outs[1]
    assert (tmp_path / "a" / "theorem.manifest.json").exists()
