"""Experiment reports: rows of ``method, param, metric, value``.

Rows are sorted with a natural key before writing so output never depends on
the order in which parallel workers finished.
"""

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

FIELDS = ("method", "param", "metric", "value")


def _natural_key(text):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", text) if t]


def format_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return repr(value)


@dataclass(frozen=True)
class Row:
    method: str
    param: str
    metric: str
    value: object

    def key(self):
        return (_natural_key(self.method), _natural_key(self.param), _natural_key(self.metric))


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)

    def add(self, method, param, metric, value):
        self.rows.append(Row(str(method), str(param), str(metric), value))

    def extend(self, other):
        self.rows.extend(other.rows)

    def sorted_rows(self):
        return sorted(self.rows, key=Row.key)

    def value(self, method, param, metric):
        for r in self.rows:
            if (r.method, r.param, r.metric) == (method, str(param), metric):
                return r.value
        raise KeyError((method, param, metric))

    def select(self, method=None, metric=None):
        return [
            r for r in self.sorted_rows()
            if (method is None or r.method == method) and (metric is None or r.metric == metric)
        ]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in self.sorted_rows():
            w.writerow((r.method, r.param, r.metric, format_value(r.value)))
        return buf.getvalue()

    def to_json(self):
        rows = [
            {"method": r.method, "param": r.param, "metric": r.metric, "value": _json_value(r.value)}
            for r in self.sorted_rows()
        ]
        return json.dumps({"rows": rows}, indent=1) + "\n"

    def render(self, fmt="csv"):
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown report format {fmt!r}")

    def write(self, path, fmt="csv"):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render(fmt))


def _json_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    value = float(value)
    if math.isfinite(value):
        return value
    return format_value(value)
