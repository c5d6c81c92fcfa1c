"""Semantic graph assembly and Pajek / CSV serialization.

Output files (all UTF-8, LF line endings):

``<base>.net``
    ``*Vertices n``, one ``id "label"`` line per word (1-based), then
    ``*Edges`` with ``i j weight`` lines, weight to 6 decimals.
``<base>.clu``
    ``*Vertices n`` then one cluster id per line (0 = no positive loading).
``<base>.vec``
    ``*Vertices n`` then one node size, ln(count), per line to 6 decimals.

CSV tables written by :func:`write_csv_outputs` use full round-trip float
precision; see ``CSV_FILES`` for the file names.
"""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CowordError, UsageError
from .factors import UNASSIGNED, kaiser_count

CSV_FILES = {
    "cosine": "cosine.csv",
    "occurrence": "occurrence.csv",
    "frequency": "frequency.csv",
    "scree": "scree.csv",
    "factors": "factors.csv",
}


@dataclass(frozen=True)
class Node:
    label: str
    count: int
    size: float
    cluster: int


@dataclass(frozen=True)
class SemanticGraph:
    nodes: tuple
    edges: tuple

    def degree(self) -> list:
        deg = [0] * len(self.nodes)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg


def build_semantic_graph(vocab, table, edges, report) -> SemanticGraph:
    """One node per vocabulary word, sized ln(count) and colored by factor."""
    words = tuple(vocab.words)
    if edges.words and tuple(edges.words) != words:
        raise UsageError("edge list was built on a different vocabulary")
    if set(report.words) | set(report.dropped) != set(words):
        raise UsageError("factor report was built on a different vocabulary")
    n = len(words)
    nodes = []
    for word in words:
        count = int(table.counts.get(word, 0))
        if count < 1:
            raise UsageError(f"word {word!r} has no occurrences in the frequency table")
        nodes.append(Node(table.label(word), count, math.log(count), report.cluster_of(word)))
    for i, j, _ in edges.edges:
        if not (0 <= i < j < n):
            raise UsageError(f"edge ({i}, {j}) out of range for {n} nodes")
    return SemanticGraph(tuple(nodes), tuple(edges.edges))


def _write_text(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CowordError(f"cannot write {path}: {exc.strerror}") from None


def pajek_texts(graph: SemanticGraph) -> dict:
    n = len(graph.nodes)
    net = [f"*Vertices {n}"]
    net += [f'{i} "{node.label}"' for i, node in enumerate(graph.nodes, start=1)]
    net.append("*Edges")
    net += [f"{i + 1} {j + 1} {w:.6f}" for i, j, w in graph.edges]
    clu = [f"*Vertices {n}"] + [str(node.cluster) for node in graph.nodes]
    vec = [f"*Vertices {n}"] + [f"{node.size:.6f}" for node in graph.nodes]
    return {
        ".net": "\n".join(net) + "\n",
        ".clu": "\n".join(clu) + "\n",
        ".vec": "\n".join(vec) + "\n",
    }


def write_pajek(graph: SemanticGraph, basename) -> list:
    """Write ``basename.net``, ``.clu`` and ``.vec``; returns the paths."""
    base = os.fspath(basename)
    paths = []
    for suffix, text in pajek_texts(graph).items():
        path = Path(base + suffix)
        _write_text(path, text)
        paths.append(path)
    return paths


def fmt(x) -> str:
    """Shortest repr that round-trips the float exactly."""
    return repr(float(x))


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def cosine_rows(sim, labels):
    yield [""] + list(labels)
    for label, row in zip(labels, sim.values):
        yield [label] + [fmt(x) for x in row]


def occurrence_rows(occ, labels):
    yield ["word"] + list(occ.doc_ids)
    for label, row in zip(labels, occ.values):
        yield [label] + [str(int(x)) for x in row]


def frequency_rows(table, min_count=None):
    header = ["word", "count"]
    if min_count is not None:
        header.append("selected")
    yield header
    for word, count in table.ranked():
        row = [table.label(word), str(count)]
        if min_count is not None:
            row.append("1" if count >= min_count else "0")
        yield row


def scree_rows(report):
    yield ["factor", "eigenvalue", "percent"]
    for j, (lam, pct) in enumerate(zip(report.eigen.eigenvalues, report.percent_unrotated), 1):
        yield [str(j), fmt(lam), fmt(pct)]


def factor_rows(report, counts, labels):
    """Per-word loadings, then a blank line and the summary block."""
    k = report.k
    yield ["word", "count"] + [f"loading_{j}" for j in range(1, k + 1)] + [
        "communality", "assigned_factor"]
    comm = report.loadings.communalities
    for i, word in enumerate(report.words):
        yield ([labels.get(word, word), str(counts[word])]
               + [fmt(x) for x in report.loadings.loadings[i]]
               + [fmt(comm[i]), str(int(report.assignment[i]))])
    for word in report.dropped:
        yield ([labels.get(word, word), str(counts[word])] + [""] * k
               + ["", str(UNASSIGNED)])
    yield []
    yield ["eigenvalues"] + [fmt(x) for x in report.eigen.eigenvalues]
    yield ["kaiser_count", str(kaiser_count(report.eigen.eigenvalues))]
    yield ["percent_per_factor"] + [fmt(x) for x in report.percent_per_factor]
    yield ["percent_total", fmt(report.percent_total)]


def write_csv(path, rows) -> Path:
    path = Path(path)
    _write_text(path, _csv_text(rows))
    return path


def write_csv_outputs(sim, occ, report, directory, table=None, min_count=None) -> dict:
    """Write the cosine, occurrence, frequency, scree and factor tables.

    Rows and columns are labelled with each word's display form. Returns a
    mapping from table name to path. ``frequency.csv`` is written only when
    ``table`` is given.
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CowordError(f"cannot create {directory}: {exc.strerror}") from None
    labels = {w: (table.label(w) if table is not None else w) for w in occ.words}
    ordered = [labels[w] for w in occ.words]
    counts = table.counts if table is not None else dict(zip(occ.words, map(int, occ.row_totals)))
    out = {
        "cosine": write_csv(directory / CSV_FILES["cosine"], cosine_rows(sim, ordered)),
        "occurrence": write_csv(directory / CSV_FILES["occurrence"], occurrence_rows(occ, ordered)),
        "scree": write_csv(directory / CSV_FILES["scree"], scree_rows(report)),
        "factors": write_csv(directory / CSV_FILES["factors"], factor_rows(report, counts, labels)),
    }
    if table is not None:
        out["frequency"] = write_csv(directory / CSV_FILES["frequency"],
                                     frequency_rows(table, min_count))
    return out


def read_matrix_csv(source) -> tuple:
    """Parse a labelled square or rectangular CSV matrix.

    Returns ``(row_labels, column_labels, values)``.
    """
    text = source.read() if hasattr(source, "read") else Path(source).read_text(encoding="utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise CowordError("empty matrix file")
    header = rows[0][1:]
    labels = [r[0] for r in rows[1:] if r]
    values = np.array([[float(x) for x in r[1:]] for r in rows[1:] if r], dtype=float)
    return labels, header, values.reshape(len(labels), len(header))
