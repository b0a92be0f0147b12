import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sector_dirac.errors import ConfigurationError
from sector_dirac.io import (
    RunConfig,
    dumps,
    eigenvalue_csv,
    parse_report,
    report_document,
    write_atomic,
)


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), max_size=20))
def test_float_round_trip_is_exact(values):
    back = json.loads(dumps({"v": values}))["v"]
    assert back == values
    assert all(isinstance(x, float) for x in back)


def test_numpy_values_and_nonfinite():
    text = dumps({"a": np.float64(0.1), "b": np.arange(3), "c": math.inf, "d": None})
    doc = json.loads(text)
    assert doc == {"a": 0.1, "b": [0, 1, 2], "c": None, "d": None}
    with pytest.raises(TypeError):
        dumps({"x": object()})


def test_report_round_trip():
    cfg = RunConfig("spectrum", omega=math.pi / 3, mass=1.0).validate()
    cfg2, res = parse_report(dumps(report_document(cfg, {"eigs": [1.0000000000000002]})))
    assert cfg2 == cfg
    assert res["eigs"][0] == 1.0000000000000002


def test_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig("spectrum").validate()
    with pytest.raises(ConfigurationError):
        RunConfig("spectrum", omega=4.0).validate()
    with pytest.raises(ConfigurationError):
        RunConfig("fiber", omega=1.0, r_min=2.0, r_max=1.0).validate()
    with pytest.raises(ConfigurationError):
        RunConfig("bessel").validate()
    with pytest.raises(ConfigurationError):
        RunConfig("nonsense").validate()
    with pytest.raises(ConfigurationError):
        RunConfig.from_dict({"command": "classify", "bogus": 1})


def test_csv_format():
    text = eigenvalue_csv([-1.5, 0.1])
    assert text == "index,eigenvalue\n0,-1.5\n1,0.10000000000000001\n"
    assert "\r" not in text


def test_write_atomic(tmp_path):
    path = tmp_path / "sub" / "out.txt"
    write_atomic(str(path), "a\nb\n")
    assert path.read_bytes() == b"a\nb\n"
    assert [p.name for p in path.parent.iterdir()] == ["out.txt"]
