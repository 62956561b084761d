"""
Invariant measures on cylinders and the trace they induce.

A :class:`FrequencyMeasure` assigns to every word up to its depth the
measure of the cylinder it names. Exact measures come from Perron-Frobenius
data of a primitive substitution (through the substitutions induced on
``n``-blocks) or from a periodic pattern; empirical measures come from
occurrence counts in a window.
"""

import logging
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from sympy import QQ, Matrix, eye, re
from sympy.polys.matrices import DomainMatrix

from .clopen import ClopenSet, CylinderCalculus
from .conf import get_setting
from .labeled_space import EbarSet, LabeledSpace
from .language import DepthExceeded, FiniteLanguage, InsufficientWindow
from .reports import format_value
from .results import CheckResult, combine
from .seqgen import (
    ExplicitPeriodic,
    MorseProduct,
    SubstitutionFixedPoint,
    primitivity_witness,
)

logger = logging.getLogger(__name__)

EXACT = "exact"
EMPIRICAL = "empirical"
NUMERIC = "numeric"


class MeasureError(ValueError):
    pass


class NotUniquelyCertified(MeasureError):
    pass


class MeasureInconsistent(MeasureError):
    pass


class FrequencyPrecisionWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class FrequencyMeasure:
    """
    Word frequencies up to ``depth``.

    ``values`` holds Fractions in exact mode, floats in empirical mode and
    mpmath numbers in numeric mode. Words missing from ``values`` have
    measure zero.
    """

    depth: int
    values: dict = field(repr=False)
    mode: str = EXACT
    scan_length: int | None = None
    tolerance: object = 0
    alphabet: tuple = ("0", "1")

    def __call__(self, word):
        if word == "":
            return 1
        if len(word) > self.depth:
            raise DepthExceeded(f"Word {word!r} is longer than the measure depth {self.depth}.")
        return self.values.get(word, 0)

    @property
    def exact(self):
        return self.mode == EXACT

    def of(self, item):
        """Measure of a word, an :class:`EbarSet` or a :class:`ClopenSet`."""
        if isinstance(item, str):
            return self(item)
        if isinstance(item, EbarSet | ClopenSet):
            return sum((self(word) for word in item.words), 0)
        raise MeasureError(f"Cannot measure {item!r}.")

    def words(self, length):
        return sorted(word for word in self.values if len(word) == length)

    def support(self):
        """The words of positive measure, as a language."""
        return FiniteLanguage(
            {
                n: {word for word in self.words(n) if self.values[word] > 0}
                for n in range(1, self.depth + 1)
            }
        )

    def with_override(self, word, value):
        """A copy with ``m(word)`` replaced; used to inject faults."""
        values = dict(self.values)
        values[word] = value
        return FrequencyMeasure(
            self.depth, values, self.mode, self.scan_length, self.tolerance, self.alphabet
        )

    def normalization(self, length):
        """``Σ_{w ∈ W_n} m(w)``."""
        return sum((self(word) for word in self.words(length)), 0)

    def kolmogorov_defect(self, length=None):
        """
        Largest ``|m(w) - Σ_a m(wa)|`` or ``|m(w) - Σ_b m(bw)|`` for
        ``|w| < length``.
        """
        length = self.depth if length is None else min(length, self.depth)
        worst = 0
        for n in range(length):
            words = self.words(n) if n else [""]
            for word in words:
                right = sum((self(word + a) for a in self.alphabet), 0)
                left = sum((self(b + word) for b in self.alphabet), 0)
                worst = max(worst, abs(self(word) - right), abs(self(word) - left))
        return worst

    def rows(self, other=None):
        """CSV rows: word, value, and the comparison value and defect when given."""
        for n in range(1, self.depth + 1):
            for word in self.words(n):
                value = self(word)
                if other is None:
                    yield (word, format_value(value))
                else:
                    compared = other(word) if n <= other.depth else ""
                    defect = abs(float(value) - float(compared)) if compared != "" else ""
                    yield (word, format_value(value), format_value(compared), defect)


###############################################################################
# Exact measures


def _induced_matrix(substitution, words):
    """
    Transition matrix of the substitution induced on ``n``-blocks:
    ``w ↦ (σ(w)[i:i+n])_{i < |σ(w_0)|}``.
    """
    n = len(words[0])
    index = {word: i for i, word in enumerate(words)}
    matrix = [[0] * len(words) for _ in words]
    for j, word in enumerate(words):
        image = substitution.apply(word)
        for i in range(len(substitution[word[0]])):
            block = image[i : i + n]
            if block not in index:
                raise MeasureInconsistent(f"Induced block {block!r} is not in the language.")
            matrix[index[block]][j] += 1
    return Matrix(matrix)


def _perron_root(substitution):
    eigenvalues = substitution.incidence_matrix().eigenvals()
    return max(eigenvalues, key=lambda value: re(value.evalf()))


def pf_frequencies(substitution, depth, kmax=None):
    """
    The unique invariant measure of a primitive substitution, computed on
    ``W_1 … W_depth``.

    Exact rationals are produced whenever the Perron root is rational.
    Otherwise the eigenvectors are solved numerically with mpmath at
    ``NUMERIC_PRECISION`` digits and a :class:`FrequencyPrecisionWarning`
    is emitted.
    """
    size = substitution.alphabet.size
    kmax = kmax or (size - 1) ** 2 + 1
    if primitivity_witness(substitution, kmax) is None:
        raise NotUniquelyCertified(
            f"{substitution} is not primitive within {kmax} iterations."
        )
    root = _perron_root(substitution)
    precision = get_setting("NUMERIC_PRECISION")
    values, numeric = {}, not root.is_rational
    if numeric:
        warnings.warn(
            f"Perron root {root} of {substitution} is irrational; frequencies are "
            f"numeric with {precision} digits.",
            FrequencyPrecisionWarning,
            stacklevel=2,
        )
    for n in range(1, depth + 1):
        words = sorted(substitution.language(n))
        matrix = _induced_matrix(substitution, words)
        if numeric:
            vector = _numeric_vector(matrix, precision)
        else:
            vector = _exact_vector(matrix, root, substitution, n)
        values.update(zip(words, vector))
    # later arithmetic runs at the working precision, not the solve precision
    tolerance = mpmath.mpf(10) ** (5 - min(precision, mpmath.mp.dps)) if numeric else 0
    measure = FrequencyMeasure(
        depth,
        values,
        NUMERIC if numeric else EXACT,
        None,
        tolerance,
        substitution.alphabet.symbols,
    )
    defect = measure.kolmogorov_defect()
    if defect > tolerance:
        raise MeasureInconsistent(f"Frequencies of {substitution} are inconsistent by {defect}.")
    logger.debug("PF frequencies of %s to depth %d (%s)", substitution, depth, measure.mode)
    return measure


def _exact_vector(matrix, root, substitution, n):
    shifted = matrix - root * eye(matrix.rows)
    basis = DomainMatrix.from_Matrix(shifted).convert_to(QQ).nullspace().to_Matrix()
    if basis.rows != 1:
        raise NotUniquelyCertified(
            f"The {n}-block eigenspace of {substitution} has dimension {basis.rows}."
        )
    row = [Fraction(int(x.p), int(x.q)) for x in basis.row(0)]
    total = sum(row)
    vector = [x / total for x in row]
    if any(x < 0 for x in vector):
        raise MeasureInconsistent(f"The {n}-block eigenvector of {substitution} is not positive.")
    return vector


def _numeric_vector(matrix, precision):
    with mpmath.workdps(precision):
        rows = [[int(x) for x in row] for row in matrix.tolist()]
        eigenvalues, vectors = mpmath.eig(mpmath.matrix(rows))
        top = max(range(len(eigenvalues)), key=lambda i: mpmath.re(eigenvalues[i]))
        column = [mpmath.re(vectors[i, top]) for i in range(len(rows))]
        total = mpmath.fsum(column)
        return [abs(x / total) for x in column]


def periodic_frequencies(pattern, depth):
    """Exact frequencies of the periodic point ``pattern^∞``."""
    period = len(pattern)
    cyclic = pattern * (depth // period + 2)
    values = {}
    for n in range(1, depth + 1):
        counts = Counter(cyclic[i : i + n] for i in range(period))
        values.update({word: Fraction(count, period) for word, count in counts.items()})
    return FrequencyMeasure(
        depth, values, EXACT, None, 0, ExplicitPeriodic(pattern).alphabet.symbols
    )


def exact_measure(source, depth, window_size=None):
    """
    The invariant measure of a source, when it is certified unique.

    A Morse window must first pass its language certificate at
    ``window_size`` (default ``CERTIFICATE_WINDOW``); otherwise the
    defining substitution describes a different subshift.
    """
    if isinstance(source, ExplicitPeriodic):
        return periodic_frequencies(source.pattern, depth)
    substitution = None
    if isinstance(source, SubstitutionFixedPoint | MorseProduct):
        substitution = source.invariant_substitution()
    if substitution is not None and isinstance(source, MorseProduct):
        certificate = source.language_certificate(
            window_size or get_setting("CERTIFICATE_WINDOW"),
            get_setting("CERTIFICATE_LENGTH"),
        )
        if not certificate.passed:
            raise NotUniquelyCertified(
                f"The window of {source.describe()} leaves the language of its "
                f"one-sided point: {certificate.witness}."
            )
    if substitution is not None:
        return pf_frequencies(substitution, depth)
    raise NotUniquelyCertified(
        f"No unique invariant measure is certified for {source.describe()}."
    )


###############################################################################
# Empirical measures


def empirical_frequencies(window, depth, min_window=None):
    """
    Occurrence counts over the whole window text divided by the number of
    positions, with tolerance ``2·depth / scan length``.
    """
    min_window = min_window or get_setting("MIN_EMPIRICAL_WINDOW")
    text = window.text
    if len(text) < min_window:
        raise InsufficientWindow(
            f"An empirical scan needs {min_window} symbols, the window has {len(text)}."
        )
    values = {}
    for n in range(1, depth + 1):
        positions = len(text) - n + 1
        counts = Counter(text[i : i + n] for i in range(positions))
        values.update({word: count / positions for word, count in counts.items()})
    symbols = tuple(sorted(word for word in values if len(word) == 1))
    logger.debug("empirical frequencies over %d symbols to depth %d", len(text), depth)
    return FrequencyMeasure(
        depth,
        values,
        EMPIRICAL,
        len(text),
        2 * depth / len(text),
        symbols,
    )


###############################################################################
# Shift invariance


def shift_invariance_check(measure, length):
    """
    ``m(T C) = m(C) = m(T⁻¹ C)`` for every cylinder ``[β.α]`` with
    ``|β| + |α| ≤ length``, and ``m(_t[b]) = m([.b])`` for every positioned
    cylinder that fits.
    """
    if measure.depth < length + 1:
        raise DepthExceeded(
            f"Shift invariance to length {length} needs measure depth {length + 1}."
        )
    calculus = CylinderCalculus(measure.support())
    worst, checked = 0, 0
    for n in range(1, length + 1):
        for word in calculus.language.words(n):
            for cut in range(n + 1):
                checked += 1
                cylinder = calculus.cylinder(word[:cut], word[cut:])
                value = measure.of(cylinder)
                for moved in (calculus.shift(cylinder), calculus.unshift(cylinder)):
                    defect = abs(measure.of(moved) - value)
                    if defect > measure.tolerance:
                        return _shift_failure(checked, f"{word[:cut]}.{word[cut:]}", defect)
                    worst = max(worst, defect)
    for n in range(1, length + 1):
        for block in calculus.language.words(n):
            for position in range(-length, length - n + 1):
                checked += 1
                defect = abs(measure.of(calculus.cylinder_at(position, block)) - measure(block))
                if defect > measure.tolerance:
                    return _shift_failure(checked, f"{position}:{block}", defect)
                worst = max(worst, defect)
    logger.info("shift invariance to length %d: max defect %s", length, worst)
    return CheckResult("shift-invariance", True, checked, None, {"max_defect": worst})


def _shift_failure(checked, witness, defect):
    logger.warning("shift invariance failed on %s with defect %s", witness, defect)
    return CheckResult("shift-invariance", False, checked, (witness,), {"max_defect": defect})


###############################################################################
# Trace


@dataclass(frozen=True)
class GeneratorSymbol:
    """``s_α p_{r(να)} s_β*``."""

    alpha: str = ""
    nu: str = ""
    beta: str = ""

    def __str__(self):
        return f"s[{self.alpha}] p[r({self.nu}{self.alpha})] s[{self.beta}]*"


def trace_eval(generator, measure):
    """``τ(s_α p_{r(να)} s_β*) = δ_{α,β} m(να)``."""
    value = measure(generator.nu + generator.alpha)
    return value if generator.alpha == generator.beta else 0


@dataclass(frozen=True)
class _Monomial:
    alpha: str
    vertices: EbarSet
    beta: str

    def __str__(self):
        return f"s[{self.alpha}] p{self.vertices} s[{self.beta}]*"


def _monomials(space, length):
    found = []
    for n in range(length + 1):
        for word in space.language.words(n):
            vertices = space.gen_vertex(word)
            suffixes = [word[i:] for i in range(n + 1)]
            found.extend(_Monomial(a, vertices, b) for a in suffixes for b in suffixes)
    return found


def _multiply(space, x, y):
    """The product of two monomials, or ``None`` when it vanishes."""
    if y.alpha.startswith(x.beta):
        rest = y.alpha[len(x.beta) :]
        left = space.intersection(x.vertices, space.gen_vertex(x.beta))
        vertices = space.intersection(space.relative_range(left, rest), y.vertices)
        return _Monomial(x.alpha + rest, vertices, y.beta)
    if x.beta.startswith(y.alpha):
        rest = x.beta[len(y.alpha) :]
        right = space.intersection(space.gen_vertex(y.alpha), y.vertices)
        vertices = space.intersection(x.vertices, space.relative_range(right, rest))
        return _Monomial(x.alpha, vertices, y.beta + rest)
    return None


def _trace(space, measure, monomial):
    if monomial is None or monomial.alpha != monomial.beta:
        return 0
    return measure.of(space.intersection(monomial.vertices, space.gen_vertex(monomial.alpha)))


def tracial_property_check(measure, length):
    """
    ``τ(XY) = τ(YX)`` for every pair of monomials ``s_α p_{r(γ)} s_β*``
    with ``|γ| ≤ length`` and ``α``, ``β`` suffixes of ``γ``.
    """
    if measure.depth < 2 * length:
        raise DepthExceeded(f"The trace check to length {length} needs depth {2 * length}.")
    space = LabeledSpace(measure.support())
    monomials = _monomials(space, length)
    checked, worst = 0, 0
    for x in monomials:
        for y in monomials:
            checked += 1
            forward = _trace(space, measure, _multiply(space, x, y))
            backward = _trace(space, measure, _multiply(space, y, x))
            defect = abs(forward - backward)
            if defect > measure.tolerance:
                logger.warning("trace property failed on %s, %s", x, y)
                return CheckResult(
                    "tracial", False, checked, (str(x), str(y)), {"max_defect": defect}
                )
            worst = max(worst, defect)
    logger.info("tracial property on %d monomials: max defect %s", len(monomials), worst)
    return CheckResult(
        "tracial", True, checked, None, {"monomials": len(monomials), "max_defect": worst}
    )


def trace_report(measure, length):
    """Trace values on the diagonal generators up to ``length``, plus the checks."""
    space = LabeledSpace(measure.support())
    values = {"1": measure("")}
    for n in range(1, length + 1):
        for word in space.language.words(n):
            values[str(GeneratorSymbol(word, "", word))] = trace_eval(
                GeneratorSymbol(word, "", word), measure
            )
    off_diagonal = all(
        trace_eval(GeneratorSymbol(a, "", b), measure) == 0
        for a in space.language.words(1)
        for b in space.language.words(1)
        if a != b
    )
    result = combine(
        "trace",
        [
            CheckResult("unit", measure("") == 1, 1, None if measure("") == 1 else ("1",)),
            CheckResult("off-diagonal", off_diagonal, 1, None if off_diagonal else ("s_a s_b*",)),
            tracial_property_check(measure, length),
        ],
        mode=measure.mode,
        values=values,
    )
    return result
