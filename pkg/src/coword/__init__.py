"""Co-word semantic maps for Chinese and mixed-script title corpora."""
from .cooccurrence import (
    EdgeList,
    OccurrenceMatrix,
    SimilarityMatrix,
    ThresholdStats,
    build_occurrence_matrix,
    cosine,
    cosine_matrix,
    threshold_edges,
    threshold_stats,
)
from .corpus import (
    Document,
    FrequencyTable,
    Vocabulary,
    build_frequency_table,
    read_documents,
    select_vocabulary,
    tokenize_corpus,
)
from .errors import (
    ConvergenceError,
    CowordError,
    DegenerateVariableError,
    EmptyVocabularyError,
    InputError,
    LexiconError,
    UsageError,
)
from .factors import (
    UNASSIGNED,
    FactorReport,
    LoadingMatrix,
    assign_clusters,
    correlation_matrix,
    eigendecompose,
    factor_analysis,
    kaiser_count,
    principal_loadings,
    variance_explained,
    varimax,
)
from .graphio import SemanticGraph, build_semantic_graph, write_csv_outputs, write_pajek
from .segmenter import Lexicon, Strategy, Token, TokenClass, load_lexicon, segment

__version__ = "0.1.0"
