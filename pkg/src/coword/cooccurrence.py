"""Word-by-document occurrence matrices and cosine similarity networks."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UsageError

COUNT = "count"
BINARY = "binary"


@dataclass(frozen=True)
class OccurrenceMatrix:
    """Rows are vocabulary words, columns are documents."""

    values: np.ndarray
    words: tuple
    doc_ids: tuple
    mode: str = COUNT

    @property
    def row_totals(self) -> np.ndarray:
        return self.values.sum(axis=1)

    @property
    def shape(self):
        return self.values.shape


def build_occurrence_matrix(docs, vocab, mode: str = COUNT) -> OccurrenceMatrix:
    if mode not in (COUNT, BINARY):
        raise UsageError(f"unknown matrix mode {mode!r}")
    docs = list(docs)
    if not docs:
        raise InputError("empty corpus: no documents to tabulate")
    if not len(vocab):
        raise UsageError("empty vocabulary")
    values = np.zeros((len(vocab), len(docs)), dtype=np.int64)
    for j, doc in enumerate(docs):
        for word in doc.words:
            i = vocab.index.get(word)
            if i is not None:
                values[i, j] += 1
    if mode == BINARY:
        values = (values > 0).astype(np.int64)
    empty = [w for w, total in zip(vocab.words, values.sum(axis=1)) if total == 0]
    if empty:
        raise InputError("vocabulary word(s) absent from every document: " + ", ".join(empty))
    return OccurrenceMatrix(values, tuple(vocab.words), tuple(d.id for d in docs), mode)


def cosine(u, v) -> float:
    """Cosine of the angle between two nonnegative vectors, clamped to [0, 1]."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise UsageError("vectors differ in length")
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        raise UsageError("cosine undefined for an all-zero vector")
    return min(1.0, max(0.0, float(u @ v) / (nu * nv)))


@dataclass(frozen=True)
class SimilarityMatrix:
    values: np.ndarray
    words: tuple

    def __len__(self) -> int:
        return len(self.words)


def _mirror_upper(a: np.ndarray, diagonal: float) -> np.ndarray:
    out = np.triu(a, 1)
    out = out + out.T
    np.fill_diagonal(out, diagonal)
    return out


def cosine_matrix(occ: OccurrenceMatrix) -> SimilarityMatrix:
    x = np.asarray(occ.values, dtype=float)
    norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    if np.any(norms == 0):
        bad = [w for w, n in zip(occ.words, norms) if n == 0]
        raise UsageError("cosine undefined for all-zero row(s): " + ", ".join(bad))
    sim = (x @ x.T) / np.outer(norms, norms)
    sim = _mirror_upper(np.clip(sim, 0.0, 1.0), 1.0)
    return SimilarityMatrix(sim, tuple(occ.words))


@dataclass(frozen=True)
class ThresholdStats:
    mean_nonzero: float
    mean_all: float
    nonzero_count: int
    pair_count: int


def threshold_stats(sim: SimilarityMatrix) -> ThresholdStats:
    """Mean cosine over distinct word pairs, with and without zero cells.

    A cell is zero only if it is exactly 0.0. With no nonzero cell the
    nonzero mean is reported as 0.
    """
    n = len(sim.values)
    if n < 2:
        raise UsageError("threshold statistics need at least two words")
    cells = sim.values[np.triu_indices(n, 1)]
    nonzero = cells[cells > 0]
    mean_all = math.fsum(cells) / len(cells)
    mean_nonzero = math.fsum(nonzero) / len(nonzero) if len(nonzero) else 0.0
    return ThresholdStats(mean_nonzero, mean_all, int(len(nonzero)), int(len(cells)))


@dataclass(frozen=True)
class EdgeList:
    """Undirected weighted edges ``(i, j, weight)`` with ``i < j``, sorted."""

    edges: tuple
    threshold_used: float
    words: tuple = ()

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


def threshold_edges(sim: SimilarityMatrix, t="auto") -> EdgeList:
    """Keep the pairs whose cosine is strictly greater than ``t``.

    ``t="auto"`` uses the mean of the nonzero off-diagonal cosines.
    """
    if isinstance(t, str):
        if t != "auto":
            raise UsageError(f"threshold must be a number or 'auto', got {t!r}")
        t = threshold_stats(sim).mean_nonzero
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise UsageError(f"threshold must lie in [0, 1], got {t}")
    n = len(sim.values)
    rows, cols = np.triu_indices(n, 1)
    weights = sim.values[rows, cols]
    keep = weights > t
    edges = tuple(
        (int(i), int(j), float(w))
        for i, j, w in zip(rows[keep], cols[keep], weights[keep])
    )
    return EdgeList(edges, t, tuple(sim.words))
