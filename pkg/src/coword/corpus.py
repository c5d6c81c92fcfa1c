"""Documents, corpus-level word counts and vocabulary selection."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._text import read_source
from .errors import EmptyVocabularyError, InputError, UsageError
from .segmenter import Lexicon, Token, TokenClass, segment


@dataclass
class Document:
    id: str
    raw: str
    tokens: list | None = None

    @property
    def words(self) -> list:
        """Counting keys of the tokens, in order."""
        if self.tokens is None:
            raise UsageError(f"document {self.id!r} has not been tokenized")
        return [t.key for t in self.tokens]


def read_documents(source, format: str = "lines") -> list:
    """Read a corpus, one document per line.

    ``format="lines"`` numbers documents by their 1-based physical line;
    ``format="tsv"`` expects ``id<TAB>text`` and rejects duplicate ids.
    Blank lines are skipped in both modes.
    """
    if format not in ("lines", "tsv"):
        raise UsageError(f"unknown corpus format {format!r}")
    text = read_source(source, "corpus")
    docs = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if format == "lines":
            docs.append(Document(str(lineno), line))
            continue
        doc_id, sep, body = line.partition("\t")
        doc_id = doc_id.strip()
        if not sep or not doc_id:
            raise InputError(f"corpus line {lineno}: expected 'id<TAB>text'")
        if doc_id in seen:
            raise InputError(f"corpus line {lineno}: duplicate document id {doc_id!r}")
        seen.add(doc_id)
        docs.append(Document(doc_id, body))
    return docs


def read_stopwords(source) -> frozenset:
    text = read_source(source, "stopwords")
    return frozenset(
        w.strip().lower() for w in text.splitlines()
        if w.strip() and not w.startswith("#")
    )


def tokenize_corpus(docs: Iterable, lex: Lexicon, strategy="forward",
                    stopwords: Iterable | None = None) -> list:
    """Segment every document; returns new Document objects in input order.

    Tokens whose counting key is in ``stopwords`` are removed.
    """
    stop = frozenset(stopwords or ())
    out = []
    for doc in docs:
        tokens = segment(doc.raw, lex, strategy)
        if stop:
            tokens = [t for t in tokens if t.key not in stop]
        out.append(Document(doc.id, doc.raw, tokens))
    return out


@dataclass(frozen=True)
class FrequencyTable:
    """Token-occurrence counts per word.

    ``display`` maps each counting key to the surface form it was first
    seen with, so "Chinese" and "CHINESE" share one entry labelled by
    whichever came first.
    """

    counts: Mapping
    display: Mapping = field(default_factory=dict)

    @property
    def distinct(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def hapax(self) -> int:
        return sum(1 for c in self.counts.values() if c == 1)

    def label(self, word: str) -> str:
        return self.display.get(word, word)

    def ranked(self) -> list:
        """(word, count) pairs, count descending then codepoint order."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def build_frequency_table(docs: Iterable) -> FrequencyTable:
    counts = Counter()
    display = {}
    for doc in docs:
        if doc.tokens is None:
            raise UsageError(f"document {doc.id!r} has not been tokenized")
        for tok in doc.tokens:
            counts[tok.key] += 1
            display.setdefault(tok.key, tok.surface)
    return FrequencyTable(dict(counts), display)


@dataclass(frozen=True)
class Vocabulary:
    words: tuple
    min_count: int
    index: Mapping = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.words))
        index = {w: i for i, w in enumerate(self.words)}
        if len(index) != len(self.words):
            raise UsageError("vocabulary contains duplicate words")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def select_vocabulary(table: FrequencyTable, min_count: int = 10) -> Vocabulary:
    """Keep words occurring ``min_count`` or more times."""
    if min_count < 1:
        raise UsageError(f"min_count must be >= 1, got {min_count}")
    words = [w for w, c in table.ranked() if c >= min_count]
    if not words:
        best = max(table.counts.values(), default=0)
        raise EmptyVocabularyError(
            f"no word occurs {min_count} or more times "
            f"(most frequent word occurs {best} times); lower --min-count"
        )
    return Vocabulary(words, min_count)


def write_tokens(docs: Iterable, fh) -> None:
    """Write tokenized documents as JSON lines (one document per line)."""
    for doc in docs:
        if doc.tokens is None:
            raise UsageError(f"document {doc.id!r} has not been tokenized")
        record = {
            "id": doc.id,
            "raw": doc.raw,
            "tokens": [[t.surface, t.kind.value] for t in doc.tokens],
        }
        fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_tokens(source) -> list:
    text = read_source(source, "tokens")
    docs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            tokens = [Token(s, TokenClass(k)) for s, k in rec["tokens"]]
            docs.append(Document(str(rec["id"]), rec["raw"], tokens))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"tokens line {lineno}: {exc}") from None
    return docs
