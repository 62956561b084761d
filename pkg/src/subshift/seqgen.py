"""
Two-sided windows of subshift points.

A window of size ``N`` covers the indices ``[-N, N)``; the dot sits before
index 0, so ``str(window)`` reads ``ω_{-N} … ω_{-1} . ω_0 … ω_{N-1}``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from sympy import Matrix

from .utils import common_factors, sorted_words, substitution_power_image

logger = logging.getLogger(__name__)

BINARY = ("0", "1")


class SequenceError(ValueError):
    pass


class UnsupportedAlphabet(SequenceError):
    pass


class InvalidWord(SequenceError):
    pass


class NeedsMoreBlocks(SequenceError):
    pass


class InvalidSeed(SequenceError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """
    An ordered set of single-character symbols, at least two of them.
    """

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise UnsupportedAlphabet(f"Duplicate symbols in alphabet {symbols!r}.")
        if len(symbols) < 2:
            raise UnsupportedAlphabet("An alphabet needs at least two symbols.")
        for symbol in symbols:
            if not isinstance(symbol, str) or len(symbol) != 1:
                raise UnsupportedAlphabet(f"Symbol {symbol!r} is not a single character.")

    @classmethod
    def binary(cls):
        return cls(BINARY)

    @property
    def size(self):
        return len(self.symbols)

    @property
    def is_binary(self):
        return self.symbols == BINARY

    def __contains__(self, symbol):
        return symbol in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def validate(self, word):
        """Return ``word`` unchanged, or raise :class:`InvalidWord`."""
        stray = set(word) - set(self.symbols)
        if stray:
            raise InvalidWord(f"Word {word!r} uses symbols {sorted(stray)} outside the alphabet.")
        return word


def _require_binary(*words):
    for word in words:
        if set(word) - set(BINARY):
            raise UnsupportedAlphabet(f"Word {word!r} is not over the binary alphabet.")


_MIRROR = str.maketrans("01", "10")


def mirror(block):
    """
    Bitwise complement of a binary word: ``0110 -> 1001``.
    """
    _require_binary(block)
    return block.translate(_MIRROR)


def keane_product(b, c):
    """
    The product block ``b × c``: one copy of ``b`` for each letter of ``c``,
    mirrored where that letter is 1. ``keane_product("01", "011") == "011010"``.
    """
    _require_binary(b, c)
    if not b or not c:
        raise SequenceError("Both factors of a product block must be nonempty.")
    flipped = mirror(b)
    return "".join(b if letter == "0" else flipped for letter in c)


def relative_frequency(block, symbol):
    """Share of ``symbol`` among the letters of ``block``, as a fraction."""
    if not block:
        raise InvalidWord("The empty block has no letter frequencies.")
    return Fraction(block.count(symbol), len(block))


@dataclass(frozen=True)
class Window:
    """
    The finite restriction ``ω_{[-N, N)}``. ``left`` holds indices ``-N..-1``
    in reading order and ``right`` holds ``0..N-1``.
    """

    left: str
    right: str

    def __post_init__(self):
        if len(self.left) != len(self.right):
            raise SequenceError("Both halves of a window must have the same length.")

    def __str__(self):
        return f"{self.left}.{self.right}"

    def __len__(self):
        return len(self.left) + len(self.right)

    @property
    def size(self):
        """The half-width ``N``."""
        return len(self.right)

    @property
    def text(self):
        return self.left + self.right

    def symbol(self, index):
        if not -self.size <= index < self.size:
            raise IndexError(f"Index {index} is outside [-{self.size}, {self.size}).")
        return self.right[index] if index >= 0 else self.left[self.size + index]

    def restrict(self, size):
        """The sub-window on ``[-size, size)``."""
        if size > self.size:
            raise SequenceError(f"Cannot restrict a window of size {self.size} to {size}.")
        return Window(self.left[len(self.left) - size :], self.right[:size])


def window_period(window):
    """
    Smallest ``p`` such that the window text satisfies ``text[i] == text[i + p]``
    throughout, or ``None`` when no period shorter than half the window exists.
    """
    text = window.text
    # longest proper border of each prefix
    border = [0] * len(text)
    k = 0
    for i in range(1, len(text)):
        while k and text[i] != text[k]:
            k = border[k - 1]
        if text[i] == text[k]:
            k += 1
        border[i] = k
    period = len(text) - border[-1]
    return period if period <= len(text) // 2 else None


###############################################################################
# Substitutions


@dataclass(frozen=True)
class Substitution:
    """
    A substitution ``σ`` given as ``(symbol, image)`` pairs. Use
    :meth:`from_mapping` to build one from a dict.
    """

    rules: tuple
    alphabet: Alphabet

    def __post_init__(self):
        images = dict(self.rules)
        if set(images) != set(self.alphabet.symbols):
            raise SequenceError("A substitution must assign an image to every symbol.")
        for symbol, image in self.rules:
            if not image:
                raise SequenceError(f"The image of {symbol!r} is empty.")
            self.alphabet.validate(image)

    @classmethod
    def from_mapping(cls, mapping, alphabet=None):
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(mapping)))
        return cls(tuple((symbol, mapping[symbol]) for symbol in alphabet), alphabet)

    def __getitem__(self, symbol):
        return dict(self.rules)[symbol]

    def __str__(self):
        return ", ".join(f"{symbol}->{image}" for symbol, image in self.rules)

    def apply(self, word):
        images = dict(self.rules)
        return "".join(images[letter] for letter in word)

    def iterate(self, symbol, k):
        return substitution_iterate(self, symbol, k)

    def power(self, k):
        """The substitution ``σ^k`` as a substitution in its own right."""
        return Substitution(
            tuple((symbol, substitution_iterate(self, symbol, k)) for symbol in self.alphabet),
            self.alphabet,
        )

    def incidence_matrix(self):
        """``M[b, a]`` = number of occurrences of ``b`` in ``σ(a)``."""
        return Matrix(
            [[self[a].count(b) for a in self.alphabet] for b in self.alphabet]
        )

    def language(self, length):
        """
        The length-``length`` words of the substitution language, i.e. the
        factors of the iterates ``σ^k(a)``.
        """
        if length < 1:
            raise SequenceError("Language lengths start at 1.")
        # 2-letter words are closed under σ; n-words sit inside σ^k of a 2-word
        # once every σ^k(a) is at least n long.
        pairs = common_factors((self[a] for a in self.alphabet), 2)
        frontier = set(pairs)
        while frontier:
            fresh = common_factors((self.apply(word) for word in frontier), 2) - pairs
            pairs |= fresh
            frontier = fresh
        k = 0
        while min(len(substitution_iterate(self, a, k)) for a in self.alphabet) < length:
            k += 1
            if k > 64:
                raise SequenceError(f"Substitution {self} does not grow.")
        images = [
            substitution_iterate(self, pair[0], k) + substitution_iterate(self, pair[1], k)
            for pair in pairs
        ]
        images.extend(substitution_iterate(self, a, k) for a in self.alphabet)
        return frozenset(common_factors(images, length))


def substitution_iterate(substitution, symbol, k):
    """
    ``σ^k(symbol)``: ``σ⁰(a) = a`` and ``σ^k(a)`` is ``σ^{k-1}`` applied
    letterwise to ``σ(a)``.
    """
    if k < 0:
        raise SequenceError("Iteration counts are natural numbers.")
    if symbol not in substitution.alphabet:
        raise InvalidWord(f"Symbol {symbol!r} is not in the alphabet.")
    return substitution_power_image(substitution, symbol, k)


def primitivity_witness(substitution, kmax):
    """
    Smallest ``k ≤ kmax`` such that every symbol occurs in every ``σ^k(a)``,
    or ``None`` if there is none.
    """
    if kmax < 1:
        raise SequenceError("kmax must be at least 1.")
    incidence = substitution.incidence_matrix()
    current = incidence
    for k in range(1, kmax + 1):
        if all(entry > 0 for entry in current):
            return k
        current = current * incidence
    return None


def fixed_point_window(substitution, seed, power, size):
    """
    The window of the two-sided fixed point of ``σ^power`` grown from the
    seed pair ``b.a``.

    :param seed: the pair ``(b, a)`` sitting at indices ``-1`` and ``0``.
    :raises InvalidSeed: if ``σ^power(a)`` does not start with ``a``, or
        ``σ^power(b)`` does not end with ``b``, or either image fails to grow.
    """
    if size < 1:
        raise SequenceError("Window size must be positive.")
    b, a = seed
    if power < 1:
        raise InvalidSeed("The seed power must be at least 1.")
    image_a = substitution_iterate(substitution, a, power)
    image_b = substitution_iterate(substitution, b, power)
    if not image_a.startswith(a):
        raise InvalidSeed(f"σ^{power}({a}) = {image_a} does not start with {a}.")
    if not image_b.endswith(b):
        raise InvalidSeed(f"σ^{power}({b}) = {image_b} does not end with {b}.")
    if len(image_a) < 2 or len(image_b) < 2:
        raise InvalidSeed(f"Seed {b}.{a} does not grow under σ^{power}.")

    step = substitution.power(power)
    right, left = a, b
    while len(right) < size:
        right = step.apply(right)
    while len(left) < size:
        left = step.apply(left)
    logger.debug("fixed point window %s seed %s.%s size %d", substitution, b, a, size)
    return Window(left[len(left) - size :], right[:size])


def periodic_window(pattern, size):
    """``ω_i = pattern[i mod |pattern|]`` on ``[-size, size)``."""
    if not pattern:
        raise InvalidWord("A periodic pattern must be nonempty.")
    period = len(pattern)
    left = "".join(pattern[i % period] for i in range(-size, 0))
    right = "".join(pattern[i % period] for i in range(size))
    return Window(left, right)


###############################################################################
# Generalized Morse sequences


@dataclass(frozen=True)
class MorseSpec:
    """
    Blocks ``b⁰, b¹, …``; with ``cycle`` the listed blocks repeat forever.
    """

    blocks: tuple
    cycle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise NeedsMoreBlocks("A Morse product needs at least one block.")
        for block in self.blocks:
            _require_binary(block)
            if len(block) < 2 or block[0] != "0":
                raise SequenceError(
                    f"Block {block!r} must have length at least 2 and start with 0."
                )

    def block(self, index):
        if self.cycle:
            return self.blocks[index % len(self.blocks)]
        try:
            return self.blocks[index]
        except IndexError:
            raise NeedsMoreBlocks(f"Block b^{index} was requested but not supplied.") from None


def morse_prefix(spec, size):
    """The one-sided product ``x = b⁰ × b¹ × …`` up to at least ``size`` letters."""
    x = spec.block(0)
    index = 1
    while len(x) < size:
        x = keane_product(x, spec.block(index))
        index += 1
    return x


def morse_window(spec, size):
    """
    The two-sided point ``x⁻¹.x``: the right half is ``x_{[0,N)}`` and
    ``ω_{-1-i} = x_i`` on the left.
    """
    if size < 1:
        raise SequenceError("Window size must be positive.")
    x = morse_prefix(spec, size)[:size]
    return Window(x[::-1], x)


@dataclass(frozen=True)
class MorseLanguageCertificate:
    """
    Factors of ``x⁻¹.x`` up to ``length`` compared with those of the prefix
    ``x_{[0, reference_size)}``. ``extra`` holds window words the prefix never
    shows, ``missing`` the prefix words the window never shows.
    """

    size: int
    length: int
    reference_size: int
    extra: tuple
    missing: tuple
    passed: bool
    witness: tuple | None = None
    window_relative: bool = True


def _full_product(spec):
    x = spec.block(0)
    for block in spec.blocks[1:]:
        x = keane_product(x, block)
    return x


def morse_language_certificate(spec, size, length):
    """
    Check ``L_ω = L_x`` for the window :func:`morse_window` of ``size``,
    on words of length at most ``length``. The reference prefix is four
    times the half-width, or the whole product of a finite block list.
    """
    if length < 1:
        raise SequenceError("Certificate lengths start at 1.")
    window = morse_window(spec, size)
    if len(window) < 2 * length:
        raise SequenceError(f"A window of size {size} is too short for length {length}.")
    try:
        reference = morse_prefix(spec, 4 * size)[: 4 * size]
    except NeedsMoreBlocks:
        # a finite block list only reaches as far as its full product
        reference = _full_product(spec)
    reference_size = len(reference)
    extra, missing = [], []
    for n in range(1, length + 1):
        seen = common_factors([window.text], n)
        expected = common_factors([reference], n)
        extra.extend(sorted_words(seen - expected))
        missing.extend(sorted_words(expected - seen))
    if extra:
        witness = ("extra", extra[0])
    elif missing:
        witness = ("missing", missing[0])
    else:
        witness = None
    certificate = MorseLanguageCertificate(
        size, length, reference_size, tuple(extra), tuple(missing), witness is None, witness
    )
    if not certificate.passed:
        logger.info(
            "Morse window %s fails the language check: %s", spec.blocks, certificate.witness
        )
    return certificate


def morse_condition_sum(spec, count):
    """
    Partial sum ``Σ_{i<count} min(r_0(bⁱ), r_1(bⁱ))``. Divergence of the
    full series separates the non-periodic Morse sequences.
    """
    return sum(
        (
            min(relative_frequency(spec.block(i), "0"), relative_frequency(spec.block(i), "1"))
            for i in range(count)
        ),
        Fraction(0),
    )


###############################################################################
# Sources


def _parse_rules(text):
    mapping = {}
    for item in text.split(","):
        symbol, sep, image = item.partition(":")
        if not sep or len(symbol.strip()) != 1:
            raise SequenceError(f"Rule {item.strip()!r} must look like 'a:image'.")
        mapping[symbol.strip()] = image.strip()
    return mapping


def _parse_bool(text):
    value = str(text).strip().lower()
    if value in ("1", "yes", "true", "on"):
        return True
    if value in ("0", "no", "false", "off"):
        return False
    raise SequenceError(f"{text!r} is not a boolean.")


class SequenceSource:
    """
    Base class of the window generators. Subclasses register themselves by
    ``kind`` so configuration files can name them.
    """

    kind: ClassVar[str] = ""
    registry: ClassVar[dict] = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.kind:
            SequenceSource.registry[cls.kind] = cls

    @classmethod
    def from_options(cls, options):
        kind = options.get("kind", "").strip()
        try:
            source_class = SequenceSource.registry[kind]
        except KeyError:
            raise SequenceError(
                f"Unknown source kind {kind!r}; expected one of {sorted(SequenceSource.registry)}."
            ) from None
        return source_class.parse(options)

    @classmethod
    def parse(cls, options):
        raise NotImplementedError

    @property
    def alphabet(self):
        raise NotImplementedError

    def window(self, size):
        raise NotImplementedError

    def invariant_substitution(self):
        """A primitive substitution generating the same subshift, if one is known."""
        return None

    def describe(self):
        raise NotImplementedError


@dataclass(frozen=True)
class SubstitutionFixedPoint(SequenceSource):
    kind: ClassVar[str] = "substitution"

    substitution: Substitution
    seed: tuple
    power: int = 1

    @classmethod
    def parse(cls, options):
        substitution = Substitution.from_mapping(_parse_rules(options.get("rules", "")))
        b, dot, a = options.get("seed", "").strip().partition(".")
        if not dot or len(a) != 1 or len(b) != 1:
            raise SequenceError("A seed must look like 'b.a'.")
        return cls(substitution, (b, a), int(options.get("power", 1)))

    @property
    def alphabet(self):
        return self.substitution.alphabet

    def window(self, size):
        return fixed_point_window(self.substitution, self.seed, self.power, size)

    def invariant_substitution(self):
        return self.substitution

    def describe(self):
        return {
            "kind": self.kind,
            "rules": str(self.substitution),
            "seed": ".".join(self.seed),
            "power": self.power,
        }


@dataclass(frozen=True)
class MorseProduct(SequenceSource):
    kind: ClassVar[str] = "morse"

    spec: MorseSpec

    @classmethod
    def parse(cls, options):
        blocks = tuple(block.strip() for block in options.get("blocks", "").split(","))
        cycle = _parse_bool(options.get("cycle", "no"))
        return cls(MorseSpec(tuple(b for b in blocks if b), cycle))

    @property
    def alphabet(self):
        return Alphabet.binary()

    def window(self, size):
        return morse_window(self.spec, size)

    def language_certificate(self, size, length):
        return morse_language_certificate(self.spec, size, length)

    def condition_sum(self, count):
        return morse_condition_sum(self.spec, count)

    def invariant_substitution(self):
        # b × b × … is the fixed point of 0 -> b, 1 -> mirror(b); the
        # two-sided window shares its language only if language_certificate passes
        if self.spec.cycle and len(set(self.spec.blocks)) == 1:
            block = self.spec.blocks[0]
            return Substitution.from_mapping({"0": block, "1": mirror(block)})
        return None

    def describe(self):
        return {"kind": self.kind, "blocks": list(self.spec.blocks), "cycle": self.spec.cycle}


@dataclass(frozen=True)
class ExplicitPeriodic(SequenceSource):
    kind: ClassVar[str] = "periodic"

    pattern: str

    def __post_init__(self):
        if not self.pattern:
            raise InvalidWord("A periodic pattern must be nonempty.")

    @classmethod
    def parse(cls, options):
        return cls(options.get("pattern", "").strip())

    @property
    def alphabet(self):
        symbols = sorted(set(self.pattern))
        if len(symbols) < 2:
            symbols = sorted(set(symbols) | set(BINARY))
        return Alphabet(tuple(symbols))

    def window(self, size):
        return periodic_window(self.pattern, size)

    def describe(self):
        return {"kind": self.kind, "pattern": self.pattern}


def thue_morse():
    """The Thue-Morse fixed point ``…1001.0110…`` of ``0 -> 01, 1 -> 10``."""
    return SubstitutionFixedPoint(Substitution.from_mapping({"0": "01", "1": "10"}), ("1", "0"), 2)
