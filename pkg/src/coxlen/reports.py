"""Deterministic report serialization.

Identical configurations must yield byte-identical files: JSON keys are
sorted, line endings are LF, rationals are rendered exactly, interval
endpoints additionally carry a fixed 15-significant-digit decimal form, and
every report embeds the tool version and the full configuration.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def format_interval(interval):
    lo, hi = interval
    return {
        "exact": [format_rational(lo), format_rational(hi)],
        "decimal": ["%.15g" % float(lo), "%.15g" % float(hi)],
    }


def jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, float):
        return float(repr(x)) if x == x else None
    if isinstance(x, bytes):
        return x.hex()
    return x


def json_report(report: dict, config: dict) -> bytes:
    doc = {
        "tool": "coxlen",
        "version": __version__,
        "config": jsonable(config),
        "report": jsonable(report),
    }
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()


def csv_report(header, rows, config: dict) -> bytes:
    lines = [
        "# coxlen %s" % __version__,
        "# config: %s" % json.dumps(jsonable(config), sort_keys=True),
        header,
    ]
    for row in rows:
        lines.append(",".join(_csv_cell(c) for c in row))
    return ("\n".join(lines) + "\n").encode()


def _csv_cell(c):
    if isinstance(c, float):
        return repr(c)
    if isinstance(c, Fraction):
        return format_rational(c)
    if c is None:
        return "inf"
    return str(c)


def write_report(data: bytes, path=None):
    if path is None:
        import sys

        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)
