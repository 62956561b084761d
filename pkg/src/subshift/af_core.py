"""
The Bratteli diagram of the AF core and its dimension-group truncation data.

Level ``k`` has one vertex per word ``u = α'α`` of length ``2k``; an edge
runs from ``u`` to every factor ``aub``. Words are ordered lexicographically
within a level.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import networkx as nx
from django.template import Context, Engine

from .language import DepthExceeded
from .matrices import IntegerMatrix, smith_normal_form
from .results import CheckResult, combine

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"


class BratteliError(ValueError):
    pass


@dataclass(frozen=True)
class BratteliDiagram:
    levels: int
    vertices: tuple
    graph: nx.DiGraph

    def level(self, k):
        if not 1 <= k <= self.levels:
            raise BratteliError(f"Level {k} is outside 1..{self.levels}.")
        return self.vertices[k - 1]

    def edges(self, k):
        """Edges from level ``k`` to level ``k+1`` as ``(u, aub)`` pairs, sorted."""
        return sorted(
            (u, v)
            for u in self.level(k)
            for _, (_, v) in self.graph.out_edges((k, u))
        )

    def edge_count(self):
        return self.graph.number_of_edges()


def build_bratteli(language, levels):
    """
    Vertices ``W_2, W_4, …, W_{2K}`` and the central-extension edges.
    """
    if levels < 0:
        raise BratteliError("The number of levels cannot be negative.")
    if levels:
        language.require_depth(2 * levels + 2)
    graph = nx.DiGraph()
    vertices = []
    for k in range(1, levels + 1):
        words = language.words(2 * k)
        vertices.append(words)
        graph.add_nodes_from(((k, word) for word in words), level=k)
    for k in range(1, levels):
        for u in vertices[k - 1]:
            for a in language.alphabet:
                for b in language.alphabet:
                    extended = a + u + b
                    if extended in language:
                        graph.add_edge((k, u), (k + 1, extended), multiplicity=1)
    logger.debug(
        "Bratteli diagram with %d levels: %d vertices, %d edges",
        levels,
        graph.number_of_nodes(),
        graph.number_of_edges(),
    )
    return BratteliDiagram(levels, tuple(vertices), graph)


def inclusion_matrix(diagram, k):
    """``M_k[aub, u] = 1`` for every edge from level ``k``."""
    if not 1 <= k < diagram.levels:
        raise BratteliError(f"Inclusion matrices exist for levels 1..{diagram.levels - 1}.")
    columns = {u: {} for u in diagram.level(k)}
    for u, v in diagram.edges(k):
        columns[u][v] = 1
    return IntegerMatrix.from_columns(diagram.level(k + 1), diagram.level(k), columns)


def verify_structure(diagram, language=None):
    """
    Unique incoming edges, no dead ends below the top level and, given the
    language, level sizes ``p(2k)``.
    """
    results = []
    checked, witness = 0, None
    for k in range(2, diagram.levels + 1):
        for v in diagram.level(k):
            checked += 1
            incoming = list(diagram.graph.predecessors((k, v)))
            if incoming != [(k - 1, v[1:-1])]:
                witness = (k, v)
                break
        if witness:
            break
    results.append(CheckResult("incoming", witness is None, checked, witness))

    checked, witness = 0, None
    for k in range(1, diagram.levels):
        for u in diagram.level(k):
            checked += 1
            if diagram.graph.out_degree((k, u)) == 0:
                witness = (k, u)
                break
        if witness:
            break
    results.append(CheckResult("outgoing", witness is None, checked, witness))

    if language is not None:
        mismatched = [
            k
            for k in range(1, diagram.levels + 1)
            if set(diagram.level(k)) != language.word_set(2 * k)
        ]
        results.append(
            CheckResult(
                "level-sizes",
                not mismatched,
                diagram.levels,
                tuple(mismatched) or None,
            )
        )
    return combine("bratteli-structure", results)


def measure_compatibility(diagram, measure):
    """``m(u) = Σ_{(a,b)} m(aub)`` along every edge bundle, exactly."""
    if measure.depth < 2 * diagram.levels:
        raise DepthExceeded(
            f"The measure depth {measure.depth} does not reach level {diagram.levels}."
        )
    checked, worst = 0, 0
    for k in range(1, diagram.levels):
        for u in diagram.level(k):
            checked += 1
            total = sum(measure(v) for _, (_, v) in diagram.graph.out_edges((k, u)))
            defect = abs(measure(u) - total)
            if defect > measure.tolerance:
                return CheckResult("measure-compatibility", False, checked, (k, u))
            worst = max(worst, defect)
    return CheckResult("measure-compatibility", True, checked, None, {"max_defect": worst})


def dimension_data(diagram):
    """
    For each level ``k``: rank and elementary divisors of the composite
    ``M_{K-1} ⋯ M_k``, plus the order unit propagated from level 1.
    """
    if diagram.levels < 2:
        raise BratteliError("Dimension data needs at least two levels.")
    top = diagram.levels
    matrices = {k: inclusion_matrix(diagram, k) for k in range(1, top)}
    report = []
    composite = None
    for k in range(top - 1, 0, -1):
        composite = matrices[k] if composite is None else composite @ matrices[k]
        snf = smith_normal_form(composite)
        report.append(
            {
                "level": k,
                "composition_length": top - k,
                "size": len(diagram.level(k)),
                "rank": composite.rank(),
                "divisors": list(snf.divisors),
            }
        )
    report.reverse()
    unit = {u: 1 for u in diagram.level(1)}
    units = [unit]
    for k in range(1, top):
        unit = matrices[k].apply(unit)
        units.append(unit)
    return {
        "levels": top,
        "composites": report,
        "order_unit": [
            [unit.get(u, 0) for u in diagram.level(k + 1)] for k, unit in enumerate(units)
        ],
        "truncation": True,
    }


@lru_cache(maxsize=None)
def _engine():
    return Engine(dirs=[str(TEMPLATE_DIR)], autoescape=False)


def export_dot(diagram):
    """A deterministic DOT digraph; levels become ``rank=same`` groups."""
    levels = [
        {"k": k, "words": diagram.level(k)} for k in range(1, diagram.levels + 1)
    ]
    edges = [
        {"source": f"{k}:{u}", "target": f"{k + 1}:{v}"}
        for k in range(1, diagram.levels)
        for u, v in diagram.edges(k)
    ]
    template = _engine().get_template("subshift/bratteli.dot")
    return template.render(Context({"levels": levels, "edges": edges}))
