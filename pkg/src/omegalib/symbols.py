"""Alphabets, finite words and cylinders.

Symbols are short strings at the boundary and dense integer indices
everywhere else.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, Tuple

from .errors import RangeError, SpecError, SymbolError


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]

    def __init__(self, symbols: Iterable):
        syms = tuple(str(s) for s in symbols)
        if not syms:
            raise SpecError("alphabet must contain at least one symbol")
        if len(set(syms)) != len(syms):
            raise SpecError(f"duplicate symbols in alphabet {syms}")
        for s in syms:
            if not s or any(c.isspace() for c in s):
                raise SpecError(f"invalid symbol name {s!r}")
        object.__setattr__(self, "symbols", syms)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    @property
    def size(self):
        return len(self.symbols)

    @property
    def compact(self):
        """True when every symbol is one character, so words print without separators."""
        return all(len(s) == 1 for s in self.symbols)

    def index(self, symbol) -> int:
        if isinstance(symbol, (int,)) and not isinstance(symbol, bool):
            if 0 <= symbol < len(self.symbols):
                return int(symbol)
            raise SymbolError(f"symbol index {symbol} out of range for {self}")
        try:
            return self.symbols.index(str(symbol))
        except ValueError:
            raise SymbolError(f"unknown symbol {symbol!r}; alphabet is {{{','.join(self.symbols)}}}") from None

    def name(self, i: int) -> str:
        return self.symbols[i]

    def word(self, text) -> "Word":
        """Parse a word.

        Accepts a string (split on whitespace, or per character when the
        alphabet is compact and the text has no spaces), or a sequence of
        symbols/indices.
        """
        if isinstance(text, Word):
            if text.alphabet != self:
                raise SpecError("word over a different alphabet")
            return text
        if isinstance(text, str):
            if text in ("", "ε"):
                return Word(self, ())
            parts = text.split() if (" " in text or not self.compact) else list(text)
            return Word(self, tuple(self.index(p) for p in parts))
        return Word(self, tuple(self.index(p) for p in text))

    def __str__(self):
        return "{" + ",".join(self.symbols) + "}"


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: Tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        q = len(self.alphabet)
        for a in letters:
            if not 0 <= a < q:
                raise SymbolError(f"letter index {a} invalid for alphabet {self.alphabet}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.letters[i])
        return self.letters[i]

    def __add__(self, other: "Word"):
        if other.alphabet != self.alphabet:
            raise SpecError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __lt__(self, other: "Word"):
        return (len(self), self.letters) < (len(other), other.letters)

    def __str__(self):
        if not self.letters:
            return "ε"
        sep = "" if self.alphabet.compact else " "
        return sep.join(self.alphabet.symbols[a] for a in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


@dataclass(frozen=True)
class CylinderSpec:
    word: Word
    position: int

    def contains(self, cell_value) -> bool:
        """``cell_value(i)`` gives the symbol index at cell i."""
        return all(cell_value(self.position + j) == a for j, a in enumerate(self.word.letters))


def all_words(alphabet: Alphabet, n: int) -> list:
    if n < 0:
        raise RangeError(f"negative length {n}")
    return [Word(alphabet, t) for t in product(range(len(alphabet)), repeat=n)]


def window(word: Word, i: int, k: int) -> Word:
    if not 0 <= i <= k <= len(word):
        raise RangeError(f"window [{i},{k}) outside word of length {len(word)}")
    return Word(word.alphabet, word.letters[i:k])


def words_from(alphabet: Alphabet, items: Sequence) -> list:
    return [alphabet.word(x) for x in items]
