"""
The labeled space of a two-sided point: generalized vertices encoded by
their past words, relative ranges, Boolean operations on the normal
accommodating family, the representation axioms and strong cofinality.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from .language import DepthExceeded, InsufficientLanguage, LanguageError, UnknownWord
from .utils import sorted_words

logger = logging.getLogger(__name__)


class LabeledSpaceError(ValueError):
    pass


class CertificateFailure(LabeledSpaceError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class EbarSet:
    """
    A finite union of generalized vertices at ``level``, one past word each.
    ``EbarSet(0, {""})`` is the full vertex set ``E⁰``.
    """

    level: int
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "words", frozenset(self.words))
        for word in self.words:
            if len(word) != self.level:
                raise LabeledSpaceError(f"Word {word!r} does not have level {self.level}.")

    def __str__(self):
        if self.level == 0:
            return "E0" if self.words else "{}@0"
        return "{" + ",".join(sorted(self.words)) + "}@" + str(self.level)

    def __iter__(self):
        return iter(sorted(self.words))

    def __len__(self):
        return len(self.words)

    @property
    def is_empty(self):
        return not self.words


FULL_SPACE = EbarSet(0, frozenset({""}))


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    level: int
    passed: bool
    checked: int = 0
    counterexample: tuple = ()


@dataclass(frozen=True)
class CofinalityCertificate:
    word: str
    length: int
    passed: bool
    paths: tuple
    entries: tuple = field(repr=False, default=())
    witness: str | None = None
    window_relative: bool = True


class LabeledSpace:
    """
    ``(E_Z, L_ω, Ē_Z)`` truncated at the depth of ``language``.
    """

    def __init__(self, language):
        self.language = language
        self._refined = {}

    @property
    def depth(self):
        return self.language.max_len

    def full(self, level):
        """All of ``E⁰``, written at ``level``."""
        if level == 0:
            return FULL_SPACE
        return EbarSet(level, self.language.word_set(level))

    def empty(self, level=0):
        return EbarSet(level)

    def gen_vertex(self, word):
        """
        ``r(α)`` as a level-``|α|`` set; empty when ``α`` is not a factor.
        """
        if word == "":
            return FULL_SPACE
        self.language.require_depth(len(word))
        if word not in self.language:
            return EbarSet(len(word))
        return EbarSet(len(word), frozenset({word}))

    def relative_range(self, vertices, path):
        """``r(A, α) = {wα : w ∈ A}`` restricted to the language."""
        if not path:
            return vertices
        level = vertices.level + len(path)
        self.language.require_depth(level)
        return EbarSet(
            level,
            frozenset(w + path for w in vertices.words if w + path in self.language),
        )

    def refine(self, vertices, level):
        """
        Rewrite ``A`` at a finer ``level`` through left extensions:
        ``[v]_l = ∪_b [v']_{l+1}``.
        """
        if level < vertices.level:
            raise LabeledSpaceError(f"Cannot refine level {vertices.level} down to {level}.")
        if level == vertices.level:
            return vertices
        key = (vertices, level)
        if key not in self._refined:
            self.language.require_depth(level)
            cut = level - vertices.level
            self._refined[key] = EbarSet(
                level,
                frozenset(
                    v for v in self.language.word_set(level) if v[cut:] in vertices.words
                ),
            )
        return self._refined[key]

    def _common(self, first, second):
        level = max(first.level, second.level)
        return self.refine(first, level), self.refine(second, level)

    def union(self, first, second):
        first, second = self._common(first, second)
        return EbarSet(first.level, first.words | second.words)

    def intersection(self, first, second):
        first, second = self._common(first, second)
        return EbarSet(first.level, first.words & second.words)

    def difference(self, first, second):
        first, second = self._common(first, second)
        return EbarSet(first.level, first.words - second.words)

    def same(self, first, second):
        first, second = self._common(first, second)
        return first.words == second.words

    def complement(self, vertices):
        return self.difference(self.full(vertices.level), vertices)

    ###########################################################################
    # Representation axioms

    def verify_axioms(self, level):
        """
        Check the four representation axioms as word identities at every
        level up to ``level``. Failures are returned, never raised.
        """
        if self.depth < level + 1:
            raise InsufficientLanguage(
                f"Axioms at level {level} need depth {level + 1}, have {self.depth}."
            )
        reports = []
        for current in range(1, level + 1):
            reports.append(self._boolean_axiom(current))
            reports.append(self._range_axiom(current))
            reports.append(self._orthogonality_axiom(current))
            reports.append(self._partition_axiom(current))
        from .clopen import CylinderCalculus

        partition = CylinderCalculus(self.language).verify_partition_axiom(level)
        reports.append(
            AxiomReport(
                "iv-cylinder",
                level,
                partition.passed,
                partition.checked,
                tuple(partition.witness or ()),
            )
        )
        for report in reports:
            if not report.passed:
                logger.warning(
                    "axiom %s failed at level %d: %s",
                    report.axiom,
                    report.level,
                    report.counterexample,
                )
        return reports

    def _singletons(self, level):
        singletons = [self.gen_vertex(word) for word in self.language.words(level)]
        if level > 1:
            singletons.extend(self.gen_vertex(word) for word in self.language.words(level - 1))
        return singletons

    def _boolean_axiom(self, level):
        checked = 0
        full = self.full(level)
        sets = self._singletons(level)
        for a in sets:
            checked += 1
            complement = self.complement(a)
            if not self.same(self.union(a, complement), full) or not self.intersection(
                a, complement
            ).is_empty:
                return AxiomReport("i", level, False, checked, (str(a),))
            for b in sets:
                checked += 1
                union, meet = self.union(a, b), self.intersection(a, b)
                a_, b_ = self._common(a, b)
                indicator = Counter(a_.words) + Counter(b_.words)
                indicator.subtract(Counter(meet.words))
                if indicator != Counter(union.words):
                    return AxiomReport("i", level, False, checked, (str(a), str(b)))
        return AxiomReport("i", level, True, checked)

    def _range_axiom(self, level):
        checked = 0
        sets = self._singletons(level)
        sets.append(self.full(level))
        for a in sets:
            for b in sets:
                for letter in self.language.alphabet:
                    checked += 1
                    meet = self.relative_range(self.intersection(a, b), letter)
                    a_, b_ = self._common(a, b)
                    ra, rb = self.relative_range(a_, letter), self.relative_range(b_, letter)
                    join = self.relative_range(self.union(a, b), letter)
                    if not self.same(meet, self.intersection(ra, rb)) or not self.same(
                        join, self.union(ra, rb)
                    ):
                        return AxiomReport("ii", level, False, checked, (str(a), str(b), letter))
            if a.level + 2 <= self.depth:
                for letter in self.language.alphabet:
                    checked += 1
                    finer = self.relative_range(self.refine(a, a.level + 1), letter)
                    coarse = self.refine(self.relative_range(a, letter), a.level + 2)
                    if not self.same(finer, coarse):
                        return AxiomReport("ii", level, False, checked, (str(a), letter))
        return AxiomReport("ii", level, True, checked)

    def _orthogonality_axiom(self, level):
        checked = 0
        for letter in self.language.alphabet:
            checked += 1
            if self.relative_range(FULL_SPACE, letter) != self.gen_vertex(letter):
                return AxiomReport("iii", level, False, checked, (letter,))
        for word in self.language.words(level):
            vertex = self.gen_vertex(word)
            for a in self.language.alphabet:
                for b in self.language.alphabet:
                    if a == b:
                        continue
                    checked += 1
                    if not self.intersection(
                        self.relative_range(vertex, a), self.relative_range(vertex, b)
                    ).is_empty:
                        return AxiomReport("iii", level, False, checked, (word, a, b))
        return AxiomReport("iii", level, True, checked)

    def _partition_axiom(self, level):
        checked = 0
        for word in self.language.words(level):
            checked += 1
            vertex = self.gen_vertex(word)
            pieces = [self.gen_vertex(b + word) for b in self.language.alphabet]
            joined = self.empty(level + 1)
            for piece in pieces:
                if not self.intersection(joined, piece).is_empty:
                    return AxiomReport("iv", level, False, checked, (word,))
                joined = self.union(joined, piece)
            if joined.is_empty or not self.same(joined, vertex):
                return AxiomReport("iv", level, False, checked, (word, "no left extension"))
            if not self.language.right_extensions(word):
                return AxiomReport("iv", level, False, checked, (word, "no right extension"))
        for word in self.language.words(level + 1):
            checked += 1
            for part in (word[1:], word[:-1]):
                if part not in self.language:
                    return AxiomReport("iv", level, False, checked, (word, part))
        return AxiomReport("iv", level, True, checked)

    ###########################################################################
    # Strong cofinality

    def strong_cofinality_certificate(self, word, length, gap=None):
        """
        Cover every ``u ∈ W_length`` by ``r(ws) ⊇ r(u)`` for a path ``s``
        read off an occurrence of ``word`` in ``u``.

        :param gap: the recurrence gap of ``word``; taken from the language's
            occurrence data when omitted.
        """
        if not word or word not in self.language:
            raise UnknownWord(f"{word!r} is not in the language.")
        self.language.require_depth(length)
        if gap is None:
            try:
                gap = self.language.recurrence(word).max_gap
            except AttributeError:
                raise LanguageError(
                    "Occurrence data is needed to bound the certificate length."
                ) from None
        if length < gap + len(word):
            raise InsufficientLanguage(
                f"Length {length} is below the recurrence bound {gap + len(word)}."
            )

        paths, entries = set(), []
        for u in self.language.words(length):
            start = u.rfind(word, 0, len(u) - 1)
            if start != -1:
                suffix = u[start + len(word) :]
                vertex, covering = self.gen_vertex(u), self.gen_vertex(word + suffix)
                if not self.same(self.intersection(vertex, covering), vertex):
                    return CofinalityCertificate(word, length, False, (), tuple(entries), u)
                paths.add(suffix)
                entries.append((u, suffix))
            elif u.endswith(word):
                # w is only a suffix of u: substitute the one-letter paths wa
                if not self.same(
                    self.intersection(self.gen_vertex(u), self.gen_vertex(word)),
                    self.gen_vertex(u),
                ):
                    return CofinalityCertificate(word, length, False, (), tuple(entries), u)
                for a in self.language.right_extensions(word):
                    paths.add(a)
                    entries.append((u, a))
            else:
                raise CertificateFailure(f"{u!r} does not contain {word!r}.", witness=u)
        certificate = CofinalityCertificate(
            word, length, True, tuple(sorted_words(paths)), tuple(entries)
        )
        logger.info("strong cofinality for %r at length %d: %d paths", word, length, len(paths))
        return certificate


__all__ = [
    "AxiomReport",
    "CertificateFailure",
    "CofinalityCertificate",
    "DepthExceeded",
    "EbarSet",
    "FULL_SPACE",
    "LabeledSpace",
    "LabeledSpaceError",
]
