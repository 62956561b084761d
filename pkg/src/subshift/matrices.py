"""
Labeled integer matrices and certified Smith normal forms.
"""

import logging
from dataclasses import dataclass, field

from sympy import ZZ, Matrix, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerMatrix:
    """
    An exact integer matrix whose rows and columns are labeled by words.
    """

    row_labels: tuple
    col_labels: tuple
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        object.__setattr__(self, "entries", entries)
        if len(entries) != len(self.row_labels) or any(
            len(row) != len(self.col_labels) for row in entries
        ):
            raise MatrixError(
                f"Entries do not match the declared "
                f"{len(self.row_labels)}x{len(self.col_labels)} shape."
            )

    @classmethod
    def from_columns(cls, row_labels, col_labels, columns):
        """Build from ``{column label: {row label: value}}``."""
        index = {label: i for i, label in enumerate(row_labels)}
        rows = [[0] * len(col_labels) for _ in row_labels]
        for j, label in enumerate(col_labels):
            for row, value in columns.get(label, {}).items():
                rows[index[row]][j] += value
        return cls(row_labels, col_labels, rows)

    @classmethod
    def from_sympy(cls, row_labels, col_labels, matrix):
        return cls(row_labels, col_labels, matrix.tolist())

    @property
    def shape(self):
        return len(self.row_labels), len(self.col_labels)

    def to_sympy(self):
        return Matrix(*self.shape, [x for row in self.entries for x in row])

    def column(self, label):
        j = self.col_labels.index(label)
        return {self.row_labels[i]: row[j] for i, row in enumerate(self.entries) if row[j]}

    def __matmul__(self, other):
        if self.col_labels != other.row_labels:
            raise MatrixError("Inner labels do not match.")
        return IntegerMatrix.from_sympy(
            self.row_labels, other.col_labels, self.to_sympy() * other.to_sympy()
        )

    def apply(self, vector):
        """Multiply by a column vector given as ``{col label: value}``."""
        result = {}
        for i, row in enumerate(self.entries):
            value = sum(x * vector.get(label, 0) for x, label in zip(row, self.col_labels))
            if value:
                result[self.row_labels[i]] = value
        return result

    def rank(self):
        """Rank over the rationals."""
        if 0 in self.shape:
            return 0
        return DomainMatrix.from_Matrix(self.to_sympy()).convert_to(QQ).rank()

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)


@dataclass(frozen=True)
class SNFResult:
    """
    ``U·A·V = D`` with unimodular ``U``, ``V``. ``divisors`` are the nonzero
    diagonal entries of ``D``.
    """

    shape: tuple
    divisors: tuple
    rank: int
    kernel_rank: int
    cokernel_free_rank: int
    left: Matrix = field(repr=False, compare=False)
    right: Matrix = field(repr=False, compare=False)
    diagonal: Matrix = field(repr=False, compare=False)

    @property
    def torsion(self):
        return tuple(d for d in self.divisors if d > 1)

    def verify(self, matrix):
        """Re-check the certificate by multiplication and determinants."""
        rows, cols = self.shape
        if rows == 0 or cols == 0:
            return True
        if self.left * matrix.to_sympy() * self.right != self.diagonal:
            return False
        return abs(_det(self.left)) == 1 and abs(_det(self.right)) == 1


def _det(matrix):
    return DomainMatrix.from_Matrix(matrix).convert_to(ZZ).det()


def smith_normal_form(matrix):
    """
    Certified Smith normal form of an :class:`IntegerMatrix`. Entries are
    Python integers, so there is no overflow to guard against.
    """
    rows, cols = matrix.shape
    if rows == 0 or cols == 0 or matrix.is_zero():
        return SNFResult(
            (rows, cols),
            (),
            0,
            cols,
            rows,
            Matrix.eye(rows),
            Matrix.eye(cols),
            Matrix.zeros(rows, cols),
        )
    exact = DomainMatrix.from_Matrix(matrix.to_sympy()).convert_to(ZZ)
    diagonal, left, right = (part.to_Matrix() for part in smith_normal_decomp(exact))
    divisors = tuple(
        abs(int(diagonal[i, i])) for i in range(min(rows, cols)) if diagonal[i, i] != 0
    )
    rank = len(divisors)
    result = SNFResult(
        (rows, cols), divisors, rank, cols - rank, rows - rank, left, right, diagonal
    )
    if not result.verify(matrix):
        raise MatrixError("Smith normal form certificate failed to verify.")
    logger.debug("SNF %dx%d: rank %d, torsion %s", rows, cols, rank, result.torsion)
    return result


def inverse_unimodular(matrix):
    """Exact inverse of a unimodular sympy matrix, as an integer matrix."""
    inverse = DomainMatrix.from_Matrix(matrix).convert_to(QQ).inv().to_Matrix()
    if any(not entry.is_integer for entry in inverse):
        raise MatrixError("Matrix is not unimodular.")
    return inverse
