"""
Cylinder-set calculus on the orbit closure.

A :class:`ClopenSet` is a union of cylinders ``[β.α]`` sharing the shape
``(|β|, |α|)``. Equality is decided at the common refinement, so
``[1.] == [01.] ∪ [11.]``. Only the commutative image of the core and the
shift are modelled: the gauge action and its conditional expectation are
implicit, since just the balanced generators ``s_α p s_α*`` are represented.
"""

import logging
from dataclasses import dataclass, field

from .language import LanguageError
from .results import CheckResult, combine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClopenSet:
    past: int
    future: int
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "words", frozenset(self.words))
        if self.past < 0 or self.future < 0:
            raise LanguageError("Cylinder shapes are non-negative.")
        for word in self.words:
            if len(word) != self.past + self.future:
                raise LanguageError(
                    f"Word {word!r} does not fit the shape ({self.past}, {self.future})."
                )

    def cylinders(self):
        """The cylinders as ``"β.α"`` strings."""
        return [f"{word[: self.past]}.{word[self.past :]}" for word in sorted(self.words)]

    def __str__(self):
        return "{" + ", ".join(self.cylinders()) + "}"

    @property
    def is_empty(self):
        return not self.words


@dataclass(frozen=True)
class CoreGenerator:
    """``s_α p_{r(βα)} s_α*``; ``rho`` sends it to ``[β.α]``."""

    alpha: str
    beta: str = ""

    def __str__(self):
        return f"s[{self.alpha}] p[r({self.beta}{self.alpha})] s[{self.alpha}]*"


class CylinderCalculus:
    def __init__(self, language):
        self.language = language

    def cylinder(self, beta, alpha):
        """``[β.α]``; the empty set when ``βα`` is not a factor."""
        word = beta + alpha
        self.language.require_depth(len(word))
        words = frozenset({word}) if word in self.language else frozenset()
        return ClopenSet(len(beta), len(alpha), words)

    def full(self):
        return ClopenSet(0, 0, frozenset({""}))

    def refine(self, clopen, past, future):
        if past < clopen.past or future < clopen.future:
            raise LanguageError(
                f"Cannot refine shape ({clopen.past}, {clopen.future}) to ({past}, {future})."
            )
        if (past, future) == (clopen.past, clopen.future):
            return clopen
        length = past + future
        self.language.require_depth(length)
        start = past - clopen.past
        stop = start + clopen.past + clopen.future
        return ClopenSet(
            past,
            future,
            frozenset(
                v for v in self.language.word_set(length) if v[start:stop] in clopen.words
            ),
        )

    def _common(self, first, second):
        past = max(first.past, second.past)
        future = max(first.future, second.future)
        return self.refine(first, past, future), self.refine(second, past, future)

    def same(self, first, second):
        first, second = self._common(first, second)
        return first.words == second.words

    def union(self, *clopens):
        result = ClopenSet(0, 0)
        for clopen in clopens:
            result, clopen = self._common(result, clopen)
            result = ClopenSet(result.past, result.future, result.words | clopen.words)
        return result

    def intersection(self, first, second):
        first, second = self._common(first, second)
        return ClopenSet(first.past, first.future, first.words & second.words)

    def difference(self, first, second):
        first, second = self._common(first, second)
        return ClopenSet(first.past, first.future, first.words - second.words)

    def rho(self, generator):
        return self.cylinder(generator.beta, generator.alpha)

    def decompose(self, clopen):
        """Core generators whose images under ``rho`` union to ``clopen``."""
        return [
            CoreGenerator(word[clopen.past :], word[: clopen.past])
            for word in sorted(clopen.words)
        ]

    def cylinder_at(self, position, block):
        """
        The positioned cylinder ``{x : x_{[t, t+|b|)} = b}`` with ``t = position``.
        """
        past = max(0, -position)
        future = max(0, position + len(block))
        length = past + future
        self.language.require_depth(length)
        start = position + past
        return ClopenSet(
            past,
            future,
            frozenset(
                v for v in self.language.word_set(length) if v[start : start + len(block)] == block
            ),
        )

    def shift(self, clopen):
        """``T[β.α₁α₂…] = [βα₁.α₂…]``, refining one future letter when needed."""
        if clopen.future == 0:
            clopen = self.refine(clopen, clopen.past, 1)
        return ClopenSet(clopen.past + 1, clopen.future - 1, clopen.words)

    def unshift(self, clopen):
        """The inverse of :meth:`shift`: ``[β'b.α] ↦ [β'.bα]``."""
        if clopen.past == 0:
            clopen = self.refine(clopen, 1, clopen.future)
        return ClopenSet(clopen.past - 1, clopen.future + 1, clopen.words)

    ###########################################################################
    # Verifiers

    def _pairs(self, max_len):
        for length in range(2, 2 * max_len + 1):
            for word in self.language.words(length):
                for cut in range(max(1, length - max_len), min(max_len, length - 1) + 1):
                    yield word[:cut], word[cut:]

    def verify_tprime(self, max_len, shift=None):
        """
        ``T[β.α] = [βα₁.α₂…α_n]`` for ``1 ≤ |α|, |β| ≤ max_len``.

        :param shift: replacement for :meth:`shift`, used to inject faults.
        """
        self.language.require_depth(2 * max_len)
        shift = shift or self.shift
        checked = 0
        for beta, alpha in self._pairs(max_len):
            checked += 1
            moved = shift(self.rho(CoreGenerator(alpha, beta)))
            expected = self.rho(CoreGenerator(alpha[1:], beta + alpha[0]))
            if not self.same(moved, expected):
                logger.warning("T' identity failed on [%s.%s]", beta, alpha)
                return CheckResult("tprime", False, checked, (f"{beta}.{alpha}",))
        return CheckResult("tprime", True, checked)

    def verify_conjugation_law(self, max_len):
        """``T[β.] = ∪_a [βa.]`` for ``|β| ≤ max_len``."""
        self.language.require_depth(max_len + 1)
        checked = 0
        for length in range(max_len + 1):
            for beta in self.language.words(length):
                checked += 1
                pieces = [self.cylinder(beta + a, "") for a in self.language.alphabet]
                if not self.same(self.shift(self.cylinder(beta, "")), self.union(*pieces)):
                    return CheckResult("conjugation", False, checked, (f"{beta}.",))
        return CheckResult("conjugation", True, checked)

    def verify_partition_axiom(self, max_len):
        """
        ``[β.α] = ⊔_{a,b} [aβ.αb]`` together with the one-sided splits
        ``[β.] = ⊔_a [β.a]`` and ``[.α] = ⊔_b [b.α]``.
        """
        self.language.require_depth(max_len + 1)
        checked = 0
        alphabet = self.language.alphabet
        for length in range(max_len + 1):
            for word in self.language.words(length):
                for cut in range(length + 1):
                    beta, alpha = word[:cut], word[cut:]
                    whole = self.cylinder(beta, alpha)
                    splits = [
                        [self.cylinder(beta, alpha + a) for a in alphabet],
                        [self.cylinder(b + beta, alpha) for b in alphabet],
                    ]
                    if length + 2 <= self.language.max_len:
                        splits.append(
                            [
                                self.cylinder(b + beta, alpha + a)
                                for b in alphabet
                                for a in alphabet
                            ]
                        )
                    for pieces in splits:
                        checked += 1
                        if not self._is_partition(whole, pieces):
                            return CheckResult("partition", False, checked, (f"{beta}.{alpha}",))
        for length in range(1, max_len + 2):
            for word in self.language.words(length):
                checked += 1
                if word[1:] not in self.language or word[:-1] not in self.language:
                    return CheckResult("partition", False, checked, (word,))
        return CheckResult("partition", True, checked)

    def _is_partition(self, whole, pieces):
        joined = ClopenSet(0, 0)
        for piece in pieces:
            if not self.intersection(joined, piece).is_empty:
                return False
            joined = self.union(joined, piece)
        return not joined.is_empty and self.same(joined, whole)

    def t_generator(self, symbol, max_len=3):
        """
        The identities of ``t_a = u* p_{r(a)}`` in cylinder form: the source
        projection, the range ``[.a]``, orthogonality, ``Σ_a t_a = u*`` and
        ``p_{r(β)} t_a = t_a p_{r(βa)}`` for ``|β| ≤ max_len``.
        """
        if symbol not in self.language:
            raise LanguageError(f"Symbol {symbol!r} does not occur in the language.")
        self.language.require_depth(max_len + 1)
        source = self.cylinder(symbol, "")
        returns = self.same(self.unshift(self.shift(source)), source) and self.same(
            self.shift(self.unshift(source)), source
        )
        lands = self.same(self.unshift(source), self.cylinder("", symbol))
        results = [
            CheckResult("source", returns, 1, None if returns else (f"{symbol}.",)),
            CheckResult("range", lands, 1, None if lands else (f".{symbol}",)),
        ]

        checked, witness = 0, None
        for other in self.language.alphabet:
            if other == symbol:
                continue
            checked += 1
            other_source = self.cylinder(other, "")
            if not self.intersection(source, other_source).is_empty or not self.intersection(
                self.unshift(source), self.unshift(other_source)
            ).is_empty:
                witness = (symbol, other)
                break
        results.append(CheckResult("orthogonality", witness is None, checked, witness))

        ranges = [self.unshift(self.cylinder(a, "")) for a in self.language.alphabet]
        covers = self._is_partition(self.full(), ranges)
        results.append(CheckResult("sum", covers, 1, None if covers else (symbol,)))

        checked, witness = 0, None
        for length in range(max_len + 1):
            for beta in self.language.words(length):
                checked += 1
                moved = self.unshift(self.cylinder(beta + symbol, ""))
                expected = self.intersection(self.cylinder(beta, ""), self.cylinder("", symbol))
                if not self.same(moved, expected):
                    witness = (beta, symbol)
                    break
            if witness:
                break
        results.append(CheckResult("intertwining", witness is None, checked, witness))

        for result in results:
            if not result.passed:
                logger.warning("t_%s identity %s failed: %s", symbol, result.name, result.witness)
        return combine(f"t_{symbol}", results)
