import json
import math

import pytest

from parity_radar.config import ConfigError, ScanSettings, config_dict, load_config, parse_config
from parity_radar.io import OutputError, read_table, write_dataset, write_table
from parity_radar.scenario import Scenario


def test_parse_config_types_and_comments():
    scenario, scan = parse_config("""
        # radar
        wavelength = 0.01   # 1 cm
        shots = 20
        use_link_budget = yes
        sweep_photons = 10, 40
        phase_step = 0.01
    """)
    assert scenario.wavelength == 0.01 and scenario.shots == 20 and scenario.use_link_budget
    assert scan.sweep_photons == (10.0, 40.0) and scan.phase_step == 0.01


def test_defaults():
    assert load_config(None) == (Scenario(), ScanSettings())


@pytest.mark.parametrize("text, fragment", [
    ("bogus = 1", "unknown key"),
    ("shots 3", "expected"),
    ("shots = many", "cannot parse"),
    ("use_link_budget = maybe", "cannot parse"),
    ("wavelength = -1", "wavelength"),
])
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_config_dict_is_json_ready():
    d = config_dict(Scenario(), ScanSettings())
    assert d["sweep_photons"] == [25.0, 100.0, 400.0, 1600.0]
    json.dumps(d)


def test_table_round_trip(tmp_path):
    path = write_table(tmp_path / "t.csv", ["a", "b", "c"], [[0.1, True, None], [math.nan, 3, "x,y"]])
    raw = path.read_bytes()
    assert raw.startswith(b"a,b,c\r\n")
    assert b'"x,y"' in raw
    cols, rows = read_table(path)
    assert cols == ["a", "b", "c"]
    assert rows == [["0.1", "1", ""], ["nan", "3", "x,y"]]


def test_dataset_envelope(tmp_path):
    csv_path, json_path = write_dataset(tmp_path / "sub", "x", {"k": 1}, ["a"], [[1.0]], summary={"s": 2})
    doc = json.loads(json_path.read_text())
    assert doc["schema_version"] == 1 and doc["rows_file"] == "x.csv"
    assert doc["columns"] == ["a"] and doc["config"] == {"k": 1} and doc["summary"] == {"s": 2}
    assert csv_path.exists()


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OutputError):
        write_dataset(blocker / "sub", "x", {}, ["a"], [])
