"""
Deterministic JSON, CSV and DOT artifacts.
"""

import csv
import json
import logging
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

import mpmath
from django.core.serializers.json import DjangoJSONEncoder
from sympy import Basic

from .utils import sorted_words

logger = logging.getLogger(__name__)

SCHEMA = "subshift-report/1"


def format_value(value):
    """Fractions as ``p/q``, mpmath numbers to 20 digits, anything else unchanged."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 20)
    return value


class SubshiftJSONEncoder(DjangoJSONEncoder):
    def default(self, o):
        if isinstance(o, Fraction | mpmath.mpf):
            return format_value(o)
        if isinstance(o, set | frozenset):
            return sorted_words(o) if all(isinstance(x, str) for x in o) else sorted(o)
        if isinstance(o, Path):
            return str(o)
        if isinstance(o, Basic):
            return int(o) if o.is_Integer else str(o)
        if is_dataclass(o) and not isinstance(o, type):
            return asdict(o)
        return super().default(o)


def result_payload(result):
    """A :class:`~subshift.results.CheckResult` as a JSON-ready dict."""
    return {
        "name": result.name,
        "passed": result.passed,
        "checked": result.checked,
        "witness": list(result.witness) if result.witness is not None else None,
        "detail": result.detail,
    }


def dumps(payload):
    document = {"schema": SCHEMA, **payload}
    return (
        json.dumps(
            document, cls=SubshiftJSONEncoder, sort_keys=True, indent=2, ensure_ascii=False
        )
        + "\n"
    )


class ArtifactWriter:
    """
    Writes artifacts below ``output_dir``, skipping formats that were not
    requested. Every method returns the list of paths written.
    """

    def __init__(self, output_dir, formats):
        self.output_dir = Path(output_dir)
        self.formats = tuple(formats)

    def _path(self, name):
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def json(self, name, payload):
        if "json" not in self.formats:
            return []
        path = self._path(f"{name}.json")
        path.write_text(dumps(payload), encoding="utf-8")
        logger.debug("wrote %s", path)
        return [path]

    def csv(self, name, header, rows):
        if "csv" not in self.formats:
            return []
        path = self._path(f"{name}.csv")
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows([format_value(x) for x in row] for row in rows)
        logger.debug("wrote %s", path)
        return [path]

    def dot(self, name, text):
        if "dot" not in self.formats:
            return []
        path = self._path(f"{name}.dot")
        path.write_text(text, encoding="utf-8")
        logger.debug("wrote %s", path)
        return [path]
