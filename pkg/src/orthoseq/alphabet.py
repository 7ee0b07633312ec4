"""Alphabets, words, and finite word languages.

Symbols are plain integers 0..sigma-1 everywhere inside the package; an
:class:`Alphabet` only supplies the printable token for each symbol and the
optional "weighted" subset W used by the fixed-weight families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ParameterOutOfRange

_DIGITS36 = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Alphabet:
    """An ordered alphabet with an optional weighted symbol subset."""

    tokens: tuple[str, ...]
    weighted: frozenset[int] = frozenset()

    def __post_init__(self):
        if len(set(self.tokens)) != len(self.tokens):
            raise ParameterOutOfRange("alphabet tokens must be distinct")
        if not self.tokens:
            raise ParameterOutOfRange("alphabet must be nonempty")
        for i in self.weighted:
            if not 0 <= i < len(self.tokens):
                raise ParameterOutOfRange(f"weighted symbol {i} out of range")

    @property
    def sigma(self) -> int:
        return len(self.tokens)

    @property
    def unweighted(self) -> frozenset[int]:
        return frozenset(range(self.sigma)) - self.weighted

    def render(self, entries: Iterable[int]) -> str:
        entries = tuple(entries)
        toks = [self.tokens[s] for s in entries]
        if all(len(t) == 1 for t in toks):
            return "".join(toks) if toks else "-"
        return " ".join(toks) if toks else "-"

    def parse(self, text: str) -> tuple[int, ...]:
        """Inverse of :meth:`render` (single-character tokens only)."""
        index = {t: i for i, t in enumerate(self.tokens)}
        if any(len(t) != 1 for t in self.tokens):
            parts = text.split()
        else:
            parts = list(text.strip())
        try:
            return tuple(index[p] for p in parts)
        except KeyError as exc:
            raise ParameterOutOfRange(f"symbol {exc.args[0]!r} not in alphabet") from None


def default_alphabet(sigma: int, weighted: Iterable[int] = ()) -> Alphabet:
    """Digits 0-9 then a-z; supports sigma <= 36."""
    if not 1 <= sigma <= 36:
        raise ParameterOutOfRange(f"default alphabet supports 1..36 symbols, got {sigma}")
    return Alphabet(tuple(_DIGITS36[:sigma]), frozenset(weighted))


def dna_alphabet(weighted: Iterable[int] = (2, 3)) -> Alphabet:
    """A,T,C,G with W = {C,G} unless overridden."""
    return Alphabet(("A", "T", "C", "G"), frozenset(weighted))


@dataclass(frozen=True)
class Word:
    """A word over integer symbols, linear or circular.

    Circular words are rotation-equivalent; :meth:`canonical` picks the least
    rotation so sets of circular words compare deterministically.
    """

    entries: tuple[int, ...]
    circular: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def rotate(self, offset: int) -> "Word":
        if not self.circular or not self.entries:
            raise ParameterOutOfRange("only nonempty circular words rotate")
        off = offset % len(self.entries)
        return Word(self.entries[off:] + self.entries[:off], circular=True)

    def canonical(self) -> "Word":
        if not self.circular:
            return self
        n = len(self.entries)
        doubled = self.entries + self.entries
        best = min(doubled[i : i + n] for i in range(n))
        return Word(best, circular=True)

    def render(self, alphabet: Alphabet) -> str:
        return alphabet.render(self.entries)


def as_entries(word) -> tuple[int, ...]:
    """Accept a Word or any symbol sequence and return a plain tuple."""
    if isinstance(word, Word):
        return word.entries
    return tuple(word)


def weight_representation(word, alphabet: Alphabet) -> tuple[int, ...]:
    """Characteristic 0/1 vector of membership in the weighted subset W."""
    w = alphabet.weighted
    return tuple(1 if s in w else 0 for s in as_entries(word))


def word_weight(entries: Sequence[int], weighted: frozenset[int]) -> int:
    return sum(1 for s in entries if s in weighted)


@dataclass(frozen=True)
class LanguageSpec:
    """Description of a finite language of fixed-length words.

    kind: "full" (all words), "kautz" (no two adjacent equal symbols), or
    either combined with a weight band [min_weight, max_weight] counted over
    the alphabet's weighted subset.
    """

    kind: str
    length: int
    min_weight: Optional[int] = None
    max_weight: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("full", "kautz"):
            raise ParameterOutOfRange(f"unknown language kind {self.kind!r}")
        if self.length < 1:
            raise ParameterOutOfRange("language word length must be >= 1")
        if (self.min_weight is None) != (self.max_weight is None):
            raise ParameterOutOfRange("weight band needs both endpoints")
        if self.min_weight is not None and not 0 <= self.min_weight <= self.max_weight:
            raise ParameterOutOfRange("weight band must satisfy 0 <= min <= max")

    @property
    def banded(self) -> bool:
        return self.min_weight is not None


def expand_language(spec: LanguageSpec, alphabet: Alphabet) -> list[Word]:
    """Materialize the language as a lexicographically sorted list of words."""
    sigma = alphabet.sigma
    if spec.banded and spec.min_weight > spec.length:
        return []
    out: list[Word] = []
    for entries in itertools.product(range(sigma), repeat=spec.length):
        if spec.kind == "kautz" and any(
            entries[i] == entries[i + 1] for i in range(len(entries) - 1)
        ):
            continue
        if spec.banded:
            w = word_weight(entries, alphabet.weighted)
            if not spec.min_weight <= w <= spec.max_weight:
                continue
        out.append(Word(entries))
    return out
