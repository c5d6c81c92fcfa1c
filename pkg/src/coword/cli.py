"""Command-line entry point: ``coword <subcommand>``.

Subcommands ``segment``, ``freq``, ``matrix``, ``cosine`` and ``factors``
each run one stage and exchange plain files; ``map`` runs the whole
pipeline. Exit status is 0 on success, 1 when a stage fails, 2 for bad
arguments and 3 when no word reaches ``--min-count``.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import corpus, cooccurrence, factors, graphio
from .errors import CowordError, EmptyVocabularyError, InputError
from .segmenter import Strategy, load_lexicon

EXIT_OK = 0
EXIT_STAGE_ERROR = 1
EXIT_USAGE = 2
EXIT_EMPTY_VOCABULARY = 3

log = logging.getLogger("coword")


class StageError(Exception):
    def __init__(self, stage, error):
        self.stage = stage
        self.error = error
        super().__init__(f"{stage}: {error}")


@contextlib.contextmanager
def stage(name):
    try:
        yield
    except CowordError as exc:
        raise StageError(name, exc) from exc


@dataclass
class PipelineConfig:
    input: Path
    lexicon: Path
    out_dir: Path
    format: str = "lines"
    strategy: str = "forward"
    stopwords: Path | None = None
    min_count: int = 10
    mode: str = cooccurrence.COUNT
    threshold: object = "auto"
    k: int = 4
    drop_degenerate: bool = False
    name: str = "map"
    emit_intermediate: bool = False

    def __post_init__(self):
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.threshold != "auto" and not 0.0 <= float(self.threshold) <= 1.0:
            raise ValueError("threshold must be 'auto' or lie in [0, 1]")


def _tokenized(input_path, fmt, lexicon_path, strategy, stopwords_path):
    with stage("read"):
        docs = corpus.read_documents(Path(input_path), fmt)
        lex = load_lexicon(Path(lexicon_path))
        stop = corpus.read_stopwords(Path(stopwords_path)) if stopwords_path else None
    with stage("segment"):
        return corpus.tokenize_corpus(docs, lex, strategy, stop)


def _write_tokens(docs, path):
    buf = io.StringIO()
    corpus.write_tokens(docs, buf)
    graphio._write_text(Path(path), buf.getvalue())


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage and write the outputs; returns the run summary."""
    out = Path(config.out_dir)
    docs = _tokenized(config.input, config.format, config.lexicon, config.strategy,
                      config.stopwords)
    with stage("frequency"):
        table = corpus.build_frequency_table(docs)
    with stage("vocabulary"):
        vocab = corpus.select_vocabulary(table, config.min_count)
    with stage("occurrence"):
        occ = cooccurrence.build_occurrence_matrix(docs, vocab, config.mode)
    with stage("cosine"):
        sim = cooccurrence.cosine_matrix(occ)
    with stage("threshold"):
        stats = cooccurrence.threshold_stats(sim)
        edges = cooccurrence.threshold_edges(sim, config.threshold)
    with stage("factors"):
        report = factors.factor_analysis(occ, config.k, config.drop_degenerate)
    with stage("graph"):
        graph = graphio.build_semantic_graph(vocab, table, edges, report)
    with stage("export"):
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CowordError(f"cannot create {out}: {exc.strerror}") from None
        graphio.write_pajek(graph, out / config.name)
        labels = {w: table.label(w) for w in vocab.words}
        graphio.write_csv(out / graphio.CSV_FILES["factors"],
                          graphio.factor_rows(report, table.counts, labels))
        graphio.write_csv(out / graphio.CSV_FILES["scree"], graphio.scree_rows(report))
        if config.emit_intermediate:
            _write_tokens(docs, out / "tokens.jsonl")
            graphio.write_csv_outputs(sim, occ, report, out, table, config.min_count)
        summary = {
            "documents": len(docs),
            "distinct_words": table.distinct,
            "total_words": table.total,
            "hapax": table.hapax,
            "min_count": config.min_count,
            "vocabulary_size": len(vocab),
            "matrix_mode": config.mode,
            "mean_nonzero_cosine": stats.mean_nonzero,
            "mean_all_cosine": stats.mean_all,
            "threshold": edges.threshold_used,
            "edges": len(edges),
            "kaiser_count": report.kaiser_count,
            "k": report.k,
            "percent_per_factor": [float(x) for x in report.percent_per_factor],
            "percent_total": report.percent_total,
            "dropped": list(report.dropped),
        }
        graphio._write_text(out / "summary.json",
                            json.dumps(summary, ensure_ascii=False, indent=2) + "\n")
    return summary


def format_summary(summary: dict) -> str:
    lines = []
    for key, value in summary.items():
        if isinstance(value, float):
            value = f"{value:.6f}"
        elif isinstance(value, list):
            value = ", ".join(f"{v:.3f}" if isinstance(v, float) else str(v) for v in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _threshold(text):
    if text == "auto":
        return text
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number, got {text!r}") from None
    if not 0.0 <= t <= 1.0:
        raise argparse.ArgumentTypeError("threshold must lie in [0, 1]")
    return t


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _read_occurrence(path) -> cooccurrence.OccurrenceMatrix:
    with stage("read"):
        try:
            labels, doc_ids, values = graphio.read_matrix_csv(path)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot parse occurrence matrix {path}: {exc}") from None
    return cooccurrence.OccurrenceMatrix(values.astype(np.int64), tuple(labels), tuple(doc_ids))


def _read_counts(path) -> dict:
    with stage("read"):
        try:
            with open(path, encoding="utf-8", newline="") as fh:
                return {row["word"]: int(row["count"]) for row in csv.DictReader(fh)}
        except (OSError, KeyError, ValueError) as exc:
            raise InputError(f"cannot parse frequency table {path}: {exc}") from None


def cmd_segment(args):
    docs = _tokenized(args.input, args.format, args.lexicon, args.strategy, args.stopwords)
    with stage("export"):
        if args.output:
            _write_tokens(docs, args.output)
        else:
            corpus.write_tokens(docs, sys.stdout)


def cmd_freq(args):
    with stage("read"):
        docs = corpus.read_tokens(Path(args.tokens))
    with stage("frequency"):
        table = corpus.build_frequency_table(docs)
    with stage("export"):
        graphio.write_csv(args.output, graphio.frequency_rows(table, args.min_count))
    print(f"distinct_words: {table.distinct}\ntotal_words: {table.total}\nhapax: {table.hapax}")


def cmd_matrix(args):
    with stage("read"):
        docs = corpus.read_tokens(Path(args.tokens))
    with stage("frequency"):
        table = corpus.build_frequency_table(docs)
    with stage("vocabulary"):
        vocab = corpus.select_vocabulary(table, args.min_count)
    with stage("occurrence"):
        occ = cooccurrence.build_occurrence_matrix(docs, vocab, args.mode)
    with stage("export"):
        labels = [table.label(w) for w in vocab.words]
        graphio.write_csv(args.output, graphio.occurrence_rows(occ, labels))
    print(f"vocabulary_size: {len(vocab)}\ndocuments: {len(docs)}")


def cmd_cosine(args):
    occ = _read_occurrence(args.occurrence)
    with stage("cosine"):
        sim = cooccurrence.cosine_matrix(occ)
    with stage("threshold"):
        stats = cooccurrence.threshold_stats(sim)
        edges = cooccurrence.threshold_edges(sim, args.threshold)
    with stage("export"):
        graphio.write_csv(args.output, graphio.cosine_rows(sim, occ.words))
    print(f"mean_nonzero_cosine: {stats.mean_nonzero:.6f}\n"
          f"mean_all_cosine: {stats.mean_all:.6f}\n"
          f"threshold: {edges.threshold_used:.6f}\nedges: {len(edges)}")


def cmd_factors(args):
    occ = _read_occurrence(args.occurrence)
    counts = _read_counts(args.freq) if args.freq else dict(
        zip(occ.words, map(int, occ.row_totals)))
    with stage("factors"):
        report = factors.factor_analysis(occ, args.k, args.drop_degenerate)
    with stage("export"):
        out = Path(args.out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CowordError(f"cannot create {out}: {exc.strerror}") from None
        graphio.write_csv(out / graphio.CSV_FILES["factors"],
                          graphio.factor_rows(report, counts, {}))
        graphio.write_csv(out / graphio.CSV_FILES["scree"], graphio.scree_rows(report))
    pct = ", ".join(f"{p:.3f}" for p in report.percent_per_factor)
    print(f"kaiser_count: {report.kaiser_count}\nk: {report.k}\n"
          f"percent_per_factor: {pct}\npercent_total: {report.percent_total:.6f}")


def cmd_map(args):
    config = PipelineConfig(
        input=Path(args.input), lexicon=Path(args.lexicon), out_dir=Path(args.out_dir),
        format=args.format, strategy=args.strategy, stopwords=args.stopwords,
        min_count=args.min_count, mode=args.mode, threshold=args.threshold, k=args.k,
        drop_degenerate=args.drop_degenerate, name=args.name,
        emit_intermediate=args.emit_intermediate,
    )
    print(format_summary(run_pipeline(config)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coword", description="Build co-word semantic maps from a title corpus.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_args(p):
        p.add_argument("input", help="corpus file, one document per line")
        p.add_argument("-l", "--lexicon", required=True)
        p.add_argument("--format", choices=["lines", "tsv"], default="lines")
        p.add_argument("--strategy", choices=[s.value for s in Strategy], default="forward")
        p.add_argument("--stopwords", help="file with one word per line to drop")

    p = sub.add_parser("segment", help="segment a corpus into tokens (JSON lines)")
    corpus_args(p)
    p.add_argument("-o", "--output", help="tokens file (default: stdout)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("freq", help="word frequency table from a tokens file")
    p.add_argument("tokens")
    p.add_argument("--min-count", type=_positive_int, default=10)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("matrix", help="word-by-document occurrence matrix")
    p.add_argument("tokens")
    p.add_argument("--min-count", type=_positive_int, default=10)
    p.add_argument("--mode", choices=[cooccurrence.COUNT, cooccurrence.BINARY],
                   default=cooccurrence.COUNT)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("cosine", help="cosine matrix and threshold statistics")
    p.add_argument("occurrence")
    p.add_argument("--threshold", type=_threshold, default="auto")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cosine)

    p = sub.add_parser("factors", help="principal components with varimax rotation")
    p.add_argument("occurrence")
    p.add_argument("--freq", help="frequency.csv supplying the count column")
    p.add_argument("-k", type=_positive_int, default=4)
    p.add_argument("--drop-degenerate", action="store_true")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("map", help="run the full pipeline")
    corpus_args(p)
    p.add_argument("--min-count", type=_positive_int, default=10)
    p.add_argument("--mode", choices=[cooccurrence.COUNT, cooccurrence.BINARY],
                   default=cooccurrence.COUNT)
    p.add_argument("--threshold", type=_threshold, default="auto")
    p.add_argument("-k", type=_positive_int, default=4)
    p.add_argument("--drop-degenerate", action="store_true")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--name", default="map", help="basename of the Pajek files")
    p.add_argument("--emit-intermediate", action="store_true")
    p.set_defaults(func=cmd_map)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except StageError as exc:
        print(f"error in stage {exc.stage}: {exc.error}", file=sys.stderr)
        if isinstance(exc.error, EmptyVocabularyError):
            return EXIT_EMPTY_VOCABULARY
        return EXIT_STAGE_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
