import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from normdiv.reports import (ConfigError, ExperimentConfig, Report, emit_report, format_value, manifest,
                             parse_value, read_csv)


def test_defaults_validate():
    cfg = ExperimentConfig()
    assert cfg.X == [50, 100, 200, 400]
    assert cfg.budgets.segment == 2**22


@pytest.mark.parametrize("data", [
    {"X": [100, 50]},
    {"X": []},
    {"P0": 10},
    {"delta": 0},
    {"budgets": {"segment": 0}},
    {"budgets": {"bogus": 1}},
    {"box": [[1, 0]]},
    {"colour": "red"},
])
def test_config_rejects(data):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(data)


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"field": "quartic", "X": [10, 20], "P0": 200}))
    cfg = ExperimentConfig.from_file(path)
    assert cfg.field == "quartic" and cfg.X == [10, 20]
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_config_unreadable(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(bad)
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(tmp_path / "missing.json")


def test_digest_ignores_output():
    a = ExperimentConfig(output="a")
    b = ExperimentConfig(output="b")
    assert a.digest() == b.digest()
    assert a.digest() != ExperimentConfig(seed=1).digest()


def test_unknown_field_is_config_error():
    with pytest.raises(ConfigError):
        ExperimentConfig(field="no-such-field").load_field()


def test_rationals_as_num_den():
    assert format_value(Fraction(3, 7)) == "3/7"
    assert format_value(Fraction(-4, 2)) == "-2/1"
    assert parse_value("3/7") == Fraction(3, 7)


@given(st.one_of(
    st.integers(-10**30, 10**30),
    st.fractions(),
    st.floats(allow_nan=False, allow_infinity=False),
    st.booleans(),
    st.none(),
))
def test_value_roundtrip(v):
    back = parse_value(format_value(v))
    if isinstance(v, Fraction) and v.denominator == 1:
        assert back == v
    else:
        assert back == v and type(back) is type(v)


def test_empty_report_is_header_only():
    rep = Report("empty", ["a", "b"])
    assert rep.csv_text() == "a,b\n"
    assert read_csv(rep.csv_text()) == (["a", "b"], [])


def test_report_roundtrip_and_files(tmp_path):
    rep = Report("t", ["n", "rho", "x"], rows=[{"n": 5, "rho": Fraction(1, 3), "x": 0.1}],
                 timings={"total": 1.5}, summary={"c": Fraction(2, 5)})
    cols, rows = read_csv(rep.csv_text())
    assert cols == ["n", "rho", "x"] and rows == [{"n": 5, "rho": Fraction(1, 3), "x": 0.1}]
    assert "1.5" not in rep.csv_text()  # timings never reach the CSV
    paths = emit_report(rep, tmp_path / "out", manifest(ExperimentConfig(), None))
    assert [p.name for p in paths] == ["t.csv", "t.json", "t.manifest.json"]
    data = json.loads(paths[1].read_text())
    assert data["summary"] == {"c": "2/5"} and data["rows"][0]["rho"] == "1/3"
    man = json.loads(paths[2].read_text())
    assert man["config_digest"] == ExperimentConfig().digest()
