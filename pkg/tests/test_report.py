import json

import pytest

from etapairing.exceptions import ReportError
from etapairing.report import ReportRecord, emit


def record(n, value, experiment="dicke-rho"):
    return ReportRecord(experiment, params={"n": n}, results={"value": value})


def test_csv_header_without_records():
    assert emit([], "csv", ("n", "value")) == "n,value\n"


def test_csv_rows_keep_order():
    text = emit([record(3, 0.5), record(2, 1 / 6)], "csv")
    assert text == "n,value\n3,0.5\n2,0.166666666667\n"


def test_csv_values():
    text = emit([record(4, True), record(5, None), record(6, -0.0)], "csv")
    assert text.splitlines()[1:] == ["4,true", "5,", "6,0"]


def test_json_single_record():
    rows = json.loads(emit([record(2, 1 / 3)], "json"))
    assert rows == [{"experiment": "dicke-rho", "n": 2, "value": 0.333333333333}]


def test_json_keeps_booleans_and_nulls():
    text = emit([record(1, False), record(2, None)], "json")
    assert [row["value"] for row in json.loads(text)] == [False, None]
    assert text.endswith("]\n")
    assert list(json.loads(text)[0]) == ["experiment", "n", "value"]


def test_table():
    text = emit([record(2, 0.25)], "table")
    header, _, row = text.splitlines()
    assert header.split() == ["experiment", "n", "value"]
    assert row.split() == ["dicke-rho", "2", "0.25"]


def test_heterogeneous_keys():
    other = ReportRecord("odlro", params={"n": 2}, results={"other": 1})
    with pytest.raises(ReportError):
        emit([record(2, 1), other])
    with pytest.raises(ReportError):
        emit([record(2, 1)], "csv", ("n", "other"))


@pytest.mark.parametrize("key", ["Value", "two words", "mass-min", "_x", ""])
def test_keys_must_be_snake_case(key):
    with pytest.raises(ReportError):
        ReportRecord("x", results={key: 1})


def test_param_and_result_keys_are_disjoint():
    with pytest.raises(ReportError):
        ReportRecord("x", params={"n": 1}, results={"n": 2})


def test_unknown_format():
    with pytest.raises(ReportError):
        emit([record(2, 1)], "xml")


def test_complex_values():
    text = emit([record(1, complex(0.5, -0.25)), record(2, complex(0.5, 0))])
    assert text.splitlines()[1:] == ["1,0.5-0.25j", "2,0.5"]
