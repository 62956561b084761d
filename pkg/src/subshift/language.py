"""
Factor languages of windows: word sets, occurrence data, recurrence gaps,
repetition powers and the disagreeability certificate.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from .seqgen import Alphabet
from .utils import sorted_words

logger = logging.getLogger(__name__)


class LanguageError(ValueError):
    pass


class InsufficientWindow(LanguageError):
    pass


class InsufficientOccurrences(LanguageError):
    pass


class InsufficientLanguage(LanguageError):
    pass


class LevelOutOfRange(LanguageError):
    pass


class DepthExceeded(LanguageError):
    pass


class UnknownWord(LanguageError, LookupError):
    pass


class FiniteLanguage:
    """
    The words of a language up to ``max_len``, stored per length.
    """

    def __init__(self, words_by_length, alphabet=None):
        self._words = {n: frozenset(words) for n, words in words_by_length.items() if n >= 1}
        if not self._words or not self._words.get(1):
            raise InsufficientLanguage("A language needs at least one letter.")
        self.max_len = max(self._words)
        if sorted(self._words) != list(range(1, self.max_len + 1)):
            raise InsufficientLanguage("Word sets must be given for every length 1..L.")
        if alphabet is None:
            symbols = tuple(sorted(self._words[1]))
            if len(symbols) < 2:
                symbols = tuple(sorted(set(symbols) | {"0", "1"}))
            alphabet = Alphabet(symbols)
        self.alphabet = alphabet
        self._sorted = {}

    def __repr__(self):
        return f"<{type(self).__name__} L={self.max_len} p(1)={len(self._words[1])}>"

    def __contains__(self, word):
        if word == "":
            return True
        words = self._words.get(len(word))
        return words is not None and word in words

    def require_depth(self, length):
        if length > self.max_len:
            raise DepthExceeded(
                f"Length {length} exceeds the language depth {self.max_len}."
            )

    def words(self, length):
        """``W_length`` in lexicographic order; ``W_0 = (ε,)``."""
        if length == 0:
            return ("",)
        if not 1 <= length <= self.max_len:
            raise LevelOutOfRange(f"Length {length} is outside 0..{self.max_len}.")
        if length not in self._sorted:
            self._sorted[length] = tuple(sorted(self._words[length]))
        return self._sorted[length]

    def word_set(self, length):
        if length == 0:
            return frozenset({""})
        self.words(length)
        return self._words[length]

    def right_extensions(self, word):
        return tuple(a for a in self.alphabet if word + a in self)

    def left_extensions(self, word):
        return tuple(b for b in self.alphabet if b + word in self)

    def is_factor_closed(self):
        for n in range(2, self.max_len + 1):
            shorter = self._words[n - 1]
            for word in self._words[n]:
                if word[1:] not in shorter or word[:-1] not in shorter:
                    return False
        return True

    def without(self, word):
        """
        A copy missing exactly ``word``. Factor closure is broken on purpose;
        this is how faults are injected into the verifiers.
        """
        if word not in self or not word:
            raise UnknownWord(f"{word!r} is not in the language.")
        words = dict(self._words)
        words[len(word)] = words[len(word)] - {word}
        return FiniteLanguage(words, self.alphabet)

    def truncate(self, max_len):
        self.require_depth(max_len)
        return FiniteLanguage(
            {n: self._words[n] for n in range(1, max_len + 1)}, self.alphabet
        )


class LanguageTable(FiniteLanguage):
    """
    The factor language of a window, scanned over the region trimmed by
    ``max_len`` at both ends. Positions are window indices.
    """

    def __init__(self, window, max_len):
        self.window = window
        self.region = window.text[max_len : len(window) - max_len]
        self.region_start = max_len - window.size
        counts = {}
        for n in range(1, max_len + 1):
            counts[n] = Counter(self.region[i : i + n] for i in range(len(self.region) - n + 1))
        self._counts = counts
        self._positions = {}
        super().__init__({n: counts[n].keys() for n in counts})
        logger.debug(
            "scanned %d positions up to length %d: p(L)=%d",
            len(self.region),
            max_len,
            len(counts[max_len]),
        )

    def count(self, word):
        if word not in self:
            return 0
        return self._counts[len(word)][word]

    def positions(self, word):
        """Sorted window indices at which ``word`` starts inside the scan region."""
        if word not in self._positions:
            found = []
            start = self.region.find(word)
            while start != -1:
                found.append(start + self.region_start)
                start = self.region.find(word, start + 1)
            self._positions[word] = tuple(found)
        return self._positions[word]

    def recurrence(self, word):
        return _recurrence_report(word, self.positions(word))

    def rows(self):
        """CSV rows: word, length, count, first, last, max gap."""
        for n in range(1, self.max_len + 1):
            for word in self.words(n):
                found = self.positions(word)
                gaps = [b - a for a, b in zip(found, found[1:])]
                yield (
                    word,
                    n,
                    self.count(word),
                    found[0],
                    found[-1],
                    max(gaps) if gaps else "",
                )


@dataclass(frozen=True)
class RecurrenceReport:
    word: str
    max_gap: int
    occurrences: int


@dataclass(frozen=True)
class DisagreeabilityReport:
    length_bound: int
    power_ceiling: int
    powers: dict = field(repr=False)
    capped: tuple
    passed: bool
    witness: str | None = None
    window_relative: bool = True


def factors(window, max_len):
    """
    Enumerate ``W_1 … W_L`` of the window. The window must leave at least
    one length-``L`` factor after trimming ``L`` symbols at each end.
    """
    if max_len < 1:
        raise LevelOutOfRange("The language depth must be at least 1.")
    if len(window) < 3 * max_len:
        raise InsufficientWindow(
            f"A window of {len(window)} symbols is too short for depth {max_len}."
        )
    return LanguageTable(window, max_len)


def _recurrence_report(word, found):
    if len(found) < 2:
        raise InsufficientOccurrences(
            f"{word!r} occurs {len(found)} time(s); a gap needs two occurrences."
        )
    gap = max(b - a for a, b in zip(found, found[1:]))
    return RecurrenceReport(word, gap, len(found))


def max_gap(window, word, max_len=None):
    """
    Largest distance between consecutive occurrences of ``word`` in the
    scan region, i.e. the window with ``max_len`` symbols trimmed at each
    end (``len(word)`` by default). With the depth of a table this agrees
    with :meth:`LanguageTable.recurrence`.
    """
    trim = len(word) if max_len is None else max_len
    region = window.text[trim : len(window) - trim]
    found = []
    start = region.find(word)
    while start != -1:
        found.append(start + trim - window.size)
        start = region.find(word, start + 1)
    return _recurrence_report(word, found)


def power_cap(language, word):
    return language.max_len // len(word)


def max_power(language, word):
    """
    Largest ``k`` with ``word^k`` in the language, capped at
    :func:`power_cap`.
    """
    if not word:
        raise UnknownWord("The empty word has no powers.")
    if word not in language:
        raise UnknownWord(f"{word!r} is not in the language.")
    cap = power_cap(language, word)
    k = 1
    while k < cap and word * (k + 1) in language:
        k += 1
    return k


def disagreeability_certificate(language, length_bound, power_ceiling):
    """
    Pass iff every word up to ``length_bound`` has max power below
    ``power_ceiling``. The witness is the first failing word in shortlex order.
    """
    if language.max_len < length_bound * power_ceiling:
        raise InsufficientLanguage(
            f"Depth {language.max_len} does not cover {length_bound} x {power_ceiling}."
        )
    powers, capped, failures = {}, [], []
    for n in range(1, length_bound + 1):
        for word in language.words(n):
            k = max_power(language, word)
            powers[word] = k
            if k == power_cap(language, word):
                capped.append(word)
            if k >= power_ceiling:
                failures.append(word)
    witness = sorted_words(failures)[0] if failures else None
    report = DisagreeabilityReport(
        length_bound, power_ceiling, powers, tuple(capped), not failures, witness
    )
    logger.info(
        "disagreeability up to length %d: %s",
        length_bound,
        "pass" if report.passed else f"fail ({witness})",
    )
    return report


def complexity(language, length):
    """``p(n) = |W_n|``."""
    if length == 0:
        return 1
    return len(language.words(length))


def overlap_witness(language, max_block):
    """
    The first block ``b`` (shortlex) with ``b b b_0`` in the language, or
    ``None`` when no such overlap exists up to ``|b| ≤ max_block``.
    """
    language.require_depth(2 * max_block + 1)
    for n in range(1, max_block + 1):
        for block in language.words(n):
            if block + block + block[0] in language:
                return block
    return None


def complexity_witness(language):
    """
    The first ``n`` with ``p(n) ≤ n``, or ``None``. A witness means the
    scanned language is that of an eventually periodic point.
    """
    for n in range(1, language.max_len + 1):
        if complexity(language, n) <= n:
            return n
    return None
