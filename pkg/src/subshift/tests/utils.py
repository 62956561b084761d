import re
from functools import lru_cache

from subshift.language import factors
from subshift.seqgen import (
    ExplicitPeriodic,
    Substitution,
    SubstitutionFixedPoint,
    thue_morse,
)

EXAMPLE_SIZE = 2**16
EXAMPLE_DEPTH = 32

DOT_NODE_RE = re.compile(r'^\s*"(?P<level>\d+):(?P<word>[01]+)" \[label=')
DOT_EDGE_RE = re.compile(r'^\s*"(\d+):([01]+)" -> "(\d+):([01]+)";$')


def fibonacci():
    """``0 -> 01, 1 -> 0`` grown from ``1.0`` under its square."""
    return SubstitutionFixedPoint(
        Substitution.from_mapping({"0": "01", "1": "0"}), ("1", "0"), 2
    )


@lru_cache(maxsize=None)
def thue_morse_window(size=EXAMPLE_SIZE):
    return thue_morse().window(size)


@lru_cache(maxsize=None)
def thue_morse_table(size=EXAMPLE_SIZE, depth=EXAMPLE_DEPTH):
    return factors(thue_morse_window(size), depth)


@lru_cache(maxsize=None)
def periodic_table(pattern="01", size=2**10, depth=EXAMPLE_DEPTH):
    return factors(ExplicitPeriodic(pattern).window(size), depth)


@lru_cache(maxsize=None)
def fibonacci_table(size=2**12, depth=12):
    return factors(fibonacci().window(size), depth)


def parse_dot(text):
    """Return ``(nodes, edges)`` of a DOT file written by ``export_dot``."""
    nodes, edges = [], []
    for line in text.splitlines():
        if match := DOT_NODE_RE.match(line):
            nodes.append((int(match["level"]), match["word"]))
        elif match := DOT_EDGE_RE.match(line):
            edges.append(((int(match[1]), match[2]), (int(match[3]), match[4])))
    return nodes, edges


def write_run_file(path, source, **run):
    """Write an INI run file with a ``[source]`` and a ``[run]`` section."""
    lines = ["[source]"]
    lines.extend(f"{key} = {value}" for key, value in source.items())
    lines.append("")
    lines.append("[run]")
    lines.extend(f"{key} = {value}" for key, value in run.items())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


THUE_MORSE_SOURCE = {"kind": "substitution", "rules": "0:01, 1:10", "seed": "1.0", "power": 2}
PERIODIC_SOURCE = {"kind": "periodic", "pattern": "01"}
