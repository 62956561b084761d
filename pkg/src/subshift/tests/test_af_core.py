import pytest

from subshift.af_core import (
    BratteliError,
    build_bratteli,
    dimension_data,
    export_dot,
    inclusion_matrix,
    measure_compatibility,
    verify_structure,
)
from subshift.language import DepthExceeded, complexity
from subshift.measures import periodic_frequencies, pf_frequencies
from subshift.seqgen import Substitution
from subshift.tests.utils import parse_dot, periodic_table, thue_morse_table

THUE_MORSE = Substitution.from_mapping({"0": "01", "1": "10"})


@pytest.fixture(scope="module")
def diagram():
    return build_bratteli(thue_morse_table(), 4)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_level_sizes(diagram, k):
    assert len(diagram.level(k)) == complexity(thue_morse_table(), 2 * k)


def test_structure(diagram):
    result = verify_structure(diagram, thue_morse_table())
    assert result.passed
    assert result.detail["parts"] == ["incoming", "outgoing", "level-sizes"]


def test_edges(diagram):
    edges = diagram.edges(1)
    assert ("01", "0010") in edges
    assert all(v[1:-1] == u for u, v in edges)
    assert diagram.edge_count() == sum(len(diagram.level(k)) for k in (2, 3, 4))


def test_inclusion_matrix(diagram):
    matrix = inclusion_matrix(diagram, 1)
    assert matrix.shape == (10, 4)
    assert all(sum(row) == 1 for row in matrix.entries)
    with pytest.raises(BratteliError):
        inclusion_matrix(diagram, 4)


def test_measure_compatibility(diagram):
    result = measure_compatibility(diagram, pf_frequencies(THUE_MORSE, 8))
    assert result.passed
    assert result.detail["max_defect"] == 0


def test_measure_compatibility_periodic():
    diagram = build_bratteli(periodic_table(), 3)
    assert measure_compatibility(diagram, periodic_frequencies("01", 6)).passed


def test_measure_depth(diagram):
    with pytest.raises(DepthExceeded):
        measure_compatibility(diagram, pf_frequencies(THUE_MORSE, 4))


def test_dimension_data(diagram):
    data = dimension_data(diagram)
    assert data["truncation"] is True
    assert [entry["level"] for entry in data["composites"]] == [1, 2, 3]
    assert data["composites"][-1]["size"] == 16
    assert data["order_unit"][0] == [1, 1, 1, 1]
    # every level-k vertex sits under exactly one level-1 vertex
    assert all(all(x == 1 for x in unit) for unit in data["order_unit"])
    with pytest.raises(BratteliError):
        dimension_data(build_bratteli(thue_morse_table(), 1))


def test_export_dot(diagram):
    text = export_dot(diagram)
    assert text == export_dot(diagram)
    assert text.startswith("digraph bratteli {")
    nodes, edges = parse_dot(text)
    assert len(nodes) == sum(len(diagram.level(k)) for k in range(1, 5))
    assert len(edges) == diagram.edge_count()
    assert ((1, "01"), (2, "0010")) in edges
    assert text.count("rank=same") == 4


def test_needs_depth():
    with pytest.raises(DepthExceeded):
        build_bratteli(thue_morse_table().truncate(8), 4)
