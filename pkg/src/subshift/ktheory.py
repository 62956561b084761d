"""
The ``(1 - Φ)`` map on level bases of ``Ē`` and its Smith-normal-form data.

On ``span_Z{χ_w : w ∈ W_l}`` the map sends ``χ_w`` to
``Σ_b χ_{bw} - Σ_a χ_{wa}`` in ``span_Z{χ_u : u ∈ W_{l+1}}``. Every result
here is truncation data: per-level kernels and cokernels, linked by the
refinement maps, never a claimed limit group.
"""

import logging
from dataclasses import dataclass

from sympy import Matrix

from .language import DepthExceeded
from .matrices import IntegerMatrix, inverse_unimodular, smith_normal_form
from .results import CheckResult, combine

logger = logging.getLogger(__name__)


class KTheoryError(ValueError):
    pass


@dataclass(frozen=True)
class PhiLevelMap:
    level: int
    matrix: IntegerMatrix

    @property
    def source_basis(self):
        return self.matrix.col_labels

    @property
    def target_basis(self):
        return self.matrix.row_labels


def phi_map(language, level):
    """The matrix of ``1 - Φ`` from level ``l`` to level ``l+1``."""
    if level < 1:
        raise KTheoryError("Levels start at 1.")
    language.require_depth(level + 1)
    columns = {}
    for word in language.words(level):
        column = {}
        for b in language.left_extensions(word):
            column[b + word] = column.get(b + word, 0) + 1
        for a in language.right_extensions(word):
            column[word + a] = column.get(word + a, 0) - 1
        columns[word] = column
    matrix = IntegerMatrix.from_columns(language.words(level + 1), language.words(level), columns)
    return PhiLevelMap(level, matrix)


def refinement_matrix(language, level):
    """``R_l : χ_w ↦ Σ_b χ_{bw}`` from level ``l`` to level ``l+1``."""
    language.require_depth(level + 1)
    columns = {
        word: {b + word: 1 for b in language.left_extensions(word)}
        for word in language.words(level)
    }
    return IntegerMatrix.from_columns(language.words(level + 1), language.words(level), columns)


def k1_witness(phi):
    """``(1 - Φ)(Σ_w χ_w) = 0``: the class of ``χ_{E⁰}`` lies in the kernel."""
    image = phi.matrix.apply({word: 1 for word in phi.source_basis})
    witness = tuple(sorted(image)) or None
    if witness:
        logger.warning("K1 witness failed at level %d on %s", phi.level, witness)
    return CheckResult(
        "k1-witness", not image, len(phi.target_basis), witness, {"level": phi.level}
    )


def naturality_check(language, level):
    """``R_{l+1} (1 - Φ)_l = (1 - Φ)_{l+1} R_l`` as integer matrices."""
    language.require_depth(level + 2)
    left = refinement_matrix(language, level + 1) @ phi_map(language, level).matrix
    right = phi_map(language, level + 1).matrix @ refinement_matrix(language, level)
    checked = 0
    for word in left.col_labels:
        checked += 1
        if left.column(word) != right.column(word):
            return CheckResult("naturality", False, checked, (word,), {"level": level})
    return CheckResult("naturality", True, checked, None, {"level": level})


def snf_report(phi):
    """Certified SNF of the level map; see :class:`~subshift.matrices.SNFResult`."""
    return smith_normal_form(phi.matrix if isinstance(phi, PhiLevelMap) else phi)


def rank_duality(phi, snf=None):
    """Kernel rank plus rank equals ``|W_l|``, with the kernel found independently."""
    snf = snf or snf_report(phi)
    matrix = phi.matrix.to_sympy()
    nullity = len(matrix.nullspace()) if matrix.cols else 0
    rank = phi.matrix.rank()
    passed = nullity == snf.kernel_rank and rank == snf.rank and nullity + rank == matrix.cols
    return CheckResult(
        "rank-duality",
        passed,
        1,
        None if passed else (phi.level,),
        {"nullity": nullity, "rank": rank},
    )


def level_report(language, level):
    phi = phi_map(language, level)
    snf = snf_report(phi)
    return {
        "level": level,
        "basis_size": len(phi.source_basis),
        "target_size": len(phi.target_basis),
        "divisors": list(snf.divisors),
        "rank": snf.rank,
        "kernel_rank": snf.kernel_rank,
        "cokernel_free_rank": snf.cokernel_free_rank,
        "torsion": list(snf.torsion),
        "certificate": snf.verify(phi.matrix),
        "k1_witness": k1_witness(phi).passed,
    }


###############################################################################
# Cokernel truncations


@dataclass(frozen=True)
class _Cokernel:
    level: int
    snf: object
    inverse_left: Matrix

    @property
    def rows(self):
        return self.snf.shape[0]

    def modulus(self, i):
        """Relation order of coordinate ``i``; 0 for free coordinates."""
        return self.snf.divisors[i] if i < self.snf.rank else 0


def _cokernel(language, level):
    phi = phi_map(language, level)
    snf = snf_report(phi)
    return _Cokernel(level, snf, inverse_unimodular(snf.left))


def _reduce(matrix, target):
    """Reduce rows modulo the relation orders of ``target``."""
    reduced = matrix.copy()
    for i in range(reduced.rows):
        d = target.modulus(i)
        if d:
            for j in range(reduced.cols):
                reduced[i, j] = reduced[i, j] % d
    return reduced


def _induced(language, source, target, refinement):
    """The map ``G_l → G_m`` in Smith coordinates: ``U_m R U_l^{-1}``, reduced."""
    return _reduce(target.snf.left * refinement.to_sympy() * source.inverse_left, target)


def _well_defined(matrix, source, target):
    """Relations of the source land in the relations of the target."""
    for j in range(source.snf.rank):
        d = source.snf.divisors[j]
        column = _reduce(matrix[:, j] * d, target)
        if any(column[i, 0] != 0 for i in range(column.rows)):
            return False
    return True


def k0_stabilization(language, first, last):
    """
    Cokernels ``G_l = Z^{W_{l+1}} / Im(1 - Φ)_l`` for ``first ≤ l ≤ last``
    with the connecting maps induced by refinement.

    Two computations are cross-checked: the free rank read off the Smith
    form against an independent rational rank, and each two-step connecting
    map against the composite of two one-step maps.
    """
    if first < 1 or last < first:
        raise KTheoryError(f"Invalid level range {first}..{last}.")
    if last > language.max_len - 1:
        raise DepthExceeded(f"Level {last} needs depth {last + 1}, have {language.max_len}.")
    cokernels = {level: _cokernel(language, level) for level in range(first, last + 1)}
    refinements = {
        level: refinement_matrix(language, level + 1) for level in range(first, last)
    }
    checks, levels, maps = [], [], []

    for level, cokernel in cokernels.items():
        phi = phi_map(language, level)
        independent = cokernel.rows - phi.matrix.rank()
        checks.append(
            CheckResult(
                f"free-rank-{level}",
                independent == cokernel.snf.cokernel_free_rank,
                1,
                None if independent == cokernel.snf.cokernel_free_rank else (level,),
            )
        )
        levels.append(
            {
                "level": level,
                "torsion": list(cokernel.snf.torsion),
                "free_rank": cokernel.snf.cokernel_free_rank,
                "kernel_rank": cokernel.snf.kernel_rank,
            }
        )

    induced = {}
    for level in range(first, last):
        source, target = cokernels[level], cokernels[level + 1]
        matrix = _induced(language, source, target, refinements[level])
        induced[level] = matrix
        defined = _well_defined(matrix, source, target)
        checks.append(
            CheckResult(f"well-defined-{level}", defined, 1, None if defined else (level,))
        )
        free = matrix[target.snf.rank :, source.snf.rank :]
        free_block = IntegerMatrix(
            tuple(range(free.rows)), tuple(range(free.cols)), free.tolist()
        )
        maps.append(
            {
                "source": level,
                "target": level + 1,
                "free_block": free.tolist(),
                "free_block_divisors": list(smith_normal_form(free_block).divisors),
                "torsion_block": matrix[: target.snf.rank, :].tolist(),
            }
        )

    for level in range(first, last - 1):
        source, target = cokernels[level], cokernels[level + 2]
        direct = _induced(
            language,
            source,
            target,
            refinements[level + 1] @ refinements[level],
        )
        composed = _reduce(induced[level + 1] * induced[level], target)
        agree = direct == composed
        checks.append(
            CheckResult(f"composition-{level}", agree, 1, None if agree else (level,))
        )

    signatures = {(tuple(entry["torsion"]), entry["free_rank"]) for entry in levels}
    result = combine(
        "k0-truncation",
        checks,
        levels=levels,
        connecting_maps=maps,
        stable=len(signatures) == 1,
        truncation=True,
    )
    logger.info(
        "K0 truncation %d..%d: %s, stable=%s",
        first,
        last,
        "consistent" if result.passed else "inconsistent",
        len(signatures) == 1,
    )
    return result


def verify_levels(language, first, last, naturality_last=None):
    """Witness, naturality, certificate and rank duality across a level range."""
    naturality_last = last - 2 if naturality_last is None else naturality_last
    results = []
    for level in range(first, last + 1):
        phi = phi_map(language, level)
        snf = snf_report(phi)
        results.append(k1_witness(phi))
        results.append(rank_duality(phi, snf))
        certified = snf.verify(phi.matrix)
        results.append(
            CheckResult("snf-certificate", certified, 1, None if certified else (level,))
        )
    for level in range(first, naturality_last + 1):
        results.append(naturality_check(language, level))
    return combine("k-theory", results)
