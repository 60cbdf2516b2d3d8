"""Words over a signed alphabet: parsing, sampling, reduction, conjugation.

A word is a finite sequence of letters drawn from an alphabet of ``2k``
symbols: the generators ``1..k`` and their inverses.  Letters are encoded
as nonzero signed integers, ``+g`` for the generator ``g`` and ``-g`` for
its inverse; this is also the wire encoding used in JSON output.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Letter",
    "Word",
    "Rng",
    "parse_word",
    "format_word",
    "sample_word",
    "sample_letters",
    "free_reduce",
    "conjugate",
]


@dataclass(frozen=True)
class Letter:
    """A single alphabet symbol: generator index plus inversion flag."""

    generator: int
    inverted: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.generator, int) or self.generator < 1:
            raise ValueError(f"generator index must be a positive integer, got {self.generator!r}")

    def inverse(self) -> "Letter":
        return Letter(self.generator, not self.inverted)

    @property
    def signed(self) -> int:
        return -self.generator if self.inverted else self.generator

    @classmethod
    def from_signed(cls, value: int) -> "Letter":
        if value == 0:
            raise ValueError("0 is not a valid letter encoding")
        return cls(abs(value), value < 0)


@dataclass(frozen=True)
class Word:
    """An ordered sequence of letters over the alphabet of size ``2k``.

    ``letters`` holds the signed-integer encoding; use :meth:`as_letters`
    for :class:`Letter` objects.
    """

    k: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"alphabet size k must be a positive integer, got {self.k!r}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.k:
                raise ValueError(f"letter {x!r} outside alphabet of size k={self.k}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.k != self.k:
            raise ValueError(f"cannot concatenate words over different alphabets (k={self.k} vs k={other.k})")
        return Word(self.k, self.letters + other.letters)

    def inverse(self) -> "Word":
        """The group inverse: reversed order, each letter inverted."""
        return Word(self.k, tuple(-x for x in reversed(self.letters)))

    def as_letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_signed(x) for x in self.letters)

    def to_array(self) -> np.ndarray:
        return np.array(self.letters, dtype=np.int16)


class Rng:
    """Deterministic random stream: Philox counter-based generator.

    The stream is fully determined by ``(seed, stream)``; identical values
    give bit-identical output on any platform.  Parallel work derives
    independent substreams with :meth:`spawn`, so results do not depend on
    scheduling or worker count.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        self.seed = int(seed)
        self.stream = int(stream)
        self.generator = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=(self.seed, self.stream)))
        )

    def spawn(self, index: int) -> "Rng":
        """Independent substream for chunk ``index`` of the same seed."""
        return Rng(self.seed, self.stream * 1_000_003 + 1 + index)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, stream={self.stream})"


_COMPACT_ALPHABET = string.ascii_lowercase


def parse_word(text: str, k: int) -> Word:
    """Parse a word from compact letters (``abAB``) or signed integers (``1 -2``).

    Compact format: lowercase ``a..z`` are generators 1..26, uppercase their
    inverses; whitespace is ignored; requires ``k <= 26``.  Integer format:
    whitespace-separated nonzero signed integers.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"alphabet size k must be >= 1, got {k!r}")
    stripped = "".join(text.split())
    if not stripped:
        return Word(k)
    if all(c.isalpha() for c in stripped):
        letters = []
        for c in stripped:
            g = _COMPACT_ALPHABET.index(c.lower()) + 1
            if g > k:
                raise ValueError(f"letter {c!r} needs generator {g} > k={k}")
            letters.append(-g if c.isupper() else g)
        return Word(k, tuple(letters))
    letters = []
    for token in text.split():
        try:
            v = int(token)
        except ValueError:
            raise ValueError(f"malformed token {token!r}: expected a signed integer or letters") from None
        if v == 0 or abs(v) > k:
            raise ValueError(f"letter {v} outside alphabet of size k={k}")
        letters.append(v)
    return Word(k, tuple(letters))


def format_word(word: Word, style: str = "compact") -> str:
    """Inverse of :func:`parse_word` for the chosen style (``compact``/``ints``)."""
    if style == "compact":
        if word.k > 26:
            raise ValueError("compact format supports k <= 26 only")
        return "".join(
            _COMPACT_ALPHABET[abs(x) - 1].upper() if x < 0 else _COMPACT_ALPHABET[x - 1]
            for x in word.letters
        )
    if style == "ints":
        return " ".join(str(x) for x in word.letters)
    raise ValueError(f"unknown format style {style!r}")


def sample_letters(n: int, k: int, rng: Rng) -> np.ndarray:
    """Uniform i.i.d. letters as a signed int16 array of length ``n``."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    raw = rng.generator.integers(0, 2 * k, size=n)
    return np.where(raw % 2 == 0, raw // 2 + 1, -(raw // 2 + 1)).astype(np.int16)


def sample_word(n: int, k: int, rng: Rng) -> Word:
    """A uniform random word: each of the ``2k`` letters has probability 1/(2k)."""
    return Word(k, tuple(int(x) for x in sample_letters(n, k, rng)))


def free_reduce(word: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain (single stack pass).

    The result is the unique reduced form, so the map is idempotent.
    """
    stack: list[int] = []
    for x in word.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(word.k, tuple(stack))


def conjugate(word: Word, by: Word) -> Word:
    """The conjugate ``h w h^-1`` of ``word`` by ``by``; length grows by ``2 len(h)``."""
    if word.k != by.k:
        raise ValueError(f"conjugation needs matching alphabets (k={word.k} vs k={by.k})")
    return by + word + by.inverse()
