"""Dictionary maximum-matching segmentation for unspaced Chinese text.

Runs of Han characters are split against a user lexicon; runs of other
letters and of digits pass through as whole tokens. Whitespace,
punctuation and symbols only delimit and never appear in the output.
"""
from __future__ import annotations

import enum
import itertools
import unicodedata
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from ._text import DELIM, DIGIT, HAN, char_kind, read_source
from .errors import LexiconError


class TokenClass(str, enum.Enum):
    LEXICON = "lexicon-word"
    FALLBACK = "han-fallback"
    LATIN = "latin-word"
    NUMERIC = "numeric"


class Strategy(str, enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BIDIRECTIONAL = "bidirectional"


class Token(NamedTuple):
    surface: str
    kind: TokenClass

    @property
    def key(self) -> str:
        """Word identity used for counting (Latin words are lower-cased)."""
        if self.kind is TokenClass.LATIN:
            return self.surface.lower()
        return self.surface


class LexiconEntry(NamedTuple):
    surface: str
    weight: int = 1


@dataclass(frozen=True)
class Lexicon:
    """Immutable surface -> weight mapping; ``max_len`` is derived."""

    weights: Mapping = field(default_factory=dict)
    max_len: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", MappingProxyType(dict(self.weights)))
        object.__setattr__(self, "max_len", max(map(len, self.weights), default=0))

    @classmethod
    def from_entries(cls, entries: Iterable) -> "Lexicon":
        weights = {}
        for entry in entries:
            entry = LexiconEntry(entry) if isinstance(entry, str) else LexiconEntry(*entry)
            surface = unicodedata.normalize("NFC", entry.surface)
            if not surface or any(ch.isspace() for ch in surface):
                raise LexiconError(f"invalid lexicon surface {surface!r}")
            if surface in weights:
                raise LexiconError(f"duplicate lexicon surface {surface!r}")
            if entry.weight < 0:
                raise LexiconError(f"negative weight for {surface!r}")
            weights[surface] = int(entry.weight)
        return cls(weights)

    @property
    def entries(self) -> frozenset:
        return frozenset(LexiconEntry(s, w) for s, w in self.weights.items())

    def __contains__(self, surface) -> bool:
        return surface in self.weights

    def __len__(self) -> int:
        return len(self.weights)

    def weight(self, surface: str) -> int:
        return self.weights.get(surface, 0)


def load_lexicon(source) -> Lexicon:
    """Parse a lexicon file.

    Each non-blank line not starting with ``#`` holds ``surface`` or
    ``surface<TAB>weight``. ``source`` may be a path, bytes, text or a
    binary file object.
    """
    text = read_source(source, "lexicon", LexiconError)
    weights = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        surface, sep, weight_field = line.partition("\t")
        surface = surface.strip()
        if not surface or any(ch.isspace() for ch in surface):
            raise LexiconError(f"line {lineno}: malformed surface {surface!r}")
        weight = 1
        if sep:
            weight_field = weight_field.strip()
            try:
                weight = int(weight_field)
            except ValueError:
                raise LexiconError(
                    f"line {lineno}: weight {weight_field!r} is not an integer"
                ) from None
            if weight < 0:
                raise LexiconError(f"line {lineno}: negative weight {weight}")
        if surface in weights:
            raise LexiconError(f"line {lineno}: duplicate surface {surface!r}")
        weights[surface] = weight
    return Lexicon(weights)


def _han_token(word: str, lex: Lexicon) -> Token:
    if word in lex:
        return Token(word, TokenClass.LEXICON)
    return Token(word, TokenClass.FALLBACK)


def _forward(run: str, lex: Lexicon) -> list:
    out = []
    i, n = 0, len(run)
    while i < n:
        for size in range(min(lex.max_len, n - i), 1, -1):
            if run[i:i + size] in lex:
                break
        else:
            size = 1
        out.append(_han_token(run[i:i + size], lex))
        i += size
    return out


def _backward(run: str, lex: Lexicon) -> list:
    out = []
    j = len(run)
    while j > 0:
        for size in range(min(lex.max_len, j), 1, -1):
            if run[j - size:j] in lex:
                break
        else:
            size = 1
        out.append(_han_token(run[j - size:j], lex))
        j -= size
    out.reverse()
    return out


def _preference(tokens: list, lex: Lexicon) -> tuple:
    fallbacks = sum(t.kind is TokenClass.FALLBACK for t in tokens)
    weight = sum(lex.weight(t.surface) for t in tokens if t.kind is TokenClass.LEXICON)
    return (len(tokens), fallbacks, -weight)


def _segment_han(run: str, lex: Lexicon, strategy: Strategy) -> list:
    if strategy is Strategy.FORWARD:
        return _forward(run, lex)
    if strategy is Strategy.BACKWARD:
        return _backward(run, lex)
    fwd = _forward(run, lex)
    bwd = _backward(run, lex)
    # strict comparison keeps the forward result on a full tie
    if _preference(bwd, lex) < _preference(fwd, lex):
        return bwd
    return fwd


def segment(text: str, lex: Lexicon, strategy="forward") -> list:
    """Split ``text`` into tokens.

    Parameters
    ----------
    text : str
        Raw text; NFC-normalized before scanning.
    lex : Lexicon
    strategy : {"forward", "backward", "bidirectional"}
        Maximum-matching direction applied to each Han run.

    Returns
    -------
    list of Token
        In text order. Delimiters are dropped, so joining the surfaces gives
        the input with whitespace, punctuation and symbols removed.
    """
    strategy = Strategy(strategy)
    text = unicodedata.normalize("NFC", text)
    tokens = []
    for kind, chars in itertools.groupby(text, key=char_kind):
        if kind == DELIM:
            continue
        run = "".join(chars)
        if kind == HAN:
            tokens.extend(_segment_han(run, lex, strategy))
        elif kind == DIGIT:
            tokens.append(Token(run, TokenClass.NUMERIC))
        else:
            tokens.append(Token(run, TokenClass.LATIN))
    return tokens
