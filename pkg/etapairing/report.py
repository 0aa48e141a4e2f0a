import csv
import io
import json
import math
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from numbers import Integral, Real

from tabulate import tabulate

from etapairing.constants import FLOAT_DIGITS
from etapairing.exceptions import ReportError
from etapairing.utilities import format_float

__all__ = ["FORMATS", "ReportRecord", "emit"]

FORMATS = ("csv", "json", "table")

key_regex = re.compile(r"^[a-z][a-z0-9]*(_[a-z0-9]+)*$")


@dataclass(frozen=True)
class ReportRecord:
    """
    One output row of an experiment: input parameters and results, both flat maps
    with lowercase snake_case keys. Values are numbers, booleans, strings or
    ``None`` (missing).
    """

    experiment: str
    params: Mapping[str, object] = field(default_factory=dict)
    results: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key in (*self.params, *self.results):
            if not key_regex.match(key):
                raise ReportError(f"report key {key!r} is not lowercase snake_case")
        clash = set(self.params) & set(self.results)
        if clash:
            raise ReportError(f"keys used as both param and result: {sorted(clash)}")

    @property
    def columns(self) -> tuple[str, ...]:
        return (*self.params, *self.results)

    def values(self) -> dict[str, object]:
        return {**self.params, **self.results}


def _text(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, complex):
        if value.imag == 0:
            return format_float(value.real)
        sign = "-" if value.imag < 0 else "+"
        return f"{format_float(value.real)}{sign}{format_float(abs(value.imag))}j"
    if isinstance(value, Real):
        return format_float(float(value))
    return str(value)


def _json_value(value: object) -> object:
    if value is None or isinstance(value, bool | str):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return _json_value(value.real)
        return _text(value)
    if isinstance(value, Real):
        value = float(value)
        if not math.isfinite(value):
            return _text(value)
        return float(format(value, f".{FLOAT_DIGITS}g")) if value else 0.0
    return str(value)


def _check_columns(
    records: Sequence[ReportRecord], columns: Sequence[str] | None
) -> tuple[str, ...]:
    expected = tuple(columns) if columns is not None else None
    for record in records:
        if expected is None:
            expected = record.columns
        elif record.columns != expected:
            raise ReportError(
                f"heterogeneous report keys in {record.experiment!r}: "
                f"{record.columns} vs {expected}"
            )
    return expected or ()


def emit(
    records: Iterable[ReportRecord],
    fmt: str = "csv",
    columns: Sequence[str] | None = None,
) -> str:
    """
    Serializes records in input order. Output depends only on the records: no
    timestamps, no locale, ``.`` as decimal separator, LF line endings.

    :param records: rows sharing one set of keys
    :param fmt: ``csv`` (header plus one line per record), ``json`` (array of
                objects, experiment first) or ``table`` (human-readable)
    :param columns: expected keys; supplies the CSV header when there are no records
    :return: the serialized text
    """
    records = list(records)
    header = _check_columns(records, columns)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if header:
            writer.writerow(header)
        for record in records:
            values = record.values()
            writer.writerow([_text(values[key]) for key in header])
        return buffer.getvalue()
    if fmt == "json":
        rows = [
            {
                "experiment": record.experiment,
                **{key: _json_value(value) for key, value in record.values().items()},
            }
            for record in records
        ]
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        table = [["experiment", *header]]
        for record in records:
            values = record.values()
            table.append([record.experiment, *(_text(values[k]) for k in header)])
        return tabulate(table, headers="firstrow", disable_numparse=True) + "\n"
    raise ReportError(f"unknown output format {fmt!r}, expected one of {FORMATS}")
