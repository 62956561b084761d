import json
from fractions import Fraction

import mpmath
from sympy import Integer, Rational

from subshift.reports import ArtifactWriter, dumps, format_value
from subshift.results import CheckResult, combine


def test_format_value():
    assert format_value(Fraction(1, 6)) == "1/6"
    assert format_value(Fraction(4, 2)) == "2"
    assert format_value(mpmath.mpf(1) / 4) == "0.25"
    assert format_value(0.5) == 0.5


def test_dumps():
    text = dumps({"words": {"10", "0", "01"}, "value": Fraction(1, 3), "n": Integer(3)})
    assert text.endswith("}\n")
    document = json.loads(text)
    assert document["schema"] == "subshift-report/1"
    assert document["words"] == ["0", "01", "10"]
    assert document["value"] == "1/3"
    assert document["n"] == 3
    assert json.loads(dumps({"r": Rational(1, 2)}))["r"] == "1/2"


def test_dumps_dataclasses():
    document = json.loads(dumps({"result": CheckResult("unit", True, 1)}))
    assert document["result"]["name"] == "unit"
    assert document["result"]["witness"] is None


def test_combine():
    result = combine("all", [CheckResult("a", True, 2), CheckResult("b", False, 3, ("w",))])
    assert not result
    assert result.checked == 5
    assert result.witness == ("b", "w")
    assert result.detail["parts"] == ["a", "b"]


def test_artifact_writer(tmp_path):
    writer = ArtifactWriter(tmp_path / "out", ("json", "csv"))
    assert writer.dot("diagram", "digraph {}") == []
    [path] = writer.csv("rows", ("word", "value"), [("0", Fraction(1, 2))])
    assert path.read_text() == "word,value\n0,1/2\n"
    [path] = writer.json("doc", {"a": 1})
    assert path.name == "doc.json"
