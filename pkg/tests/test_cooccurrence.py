import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from coword.cooccurrence import (
    OccurrenceMatrix,
    SimilarityMatrix,
    build_occurrence_matrix,
    cosine,
    cosine_matrix,
    threshold_edges,
    threshold_stats,
)
from coword.corpus import Document, Vocabulary
from coword.errors import InputError, UsageError
from coword.segmenter import Token, TokenClass

from oracles import naive_cosine, naive_cosine_matrix


def docs_of(*word_lists):
    return [Document(str(i), "", [Token(w, TokenClass.LEXICON) for w in ws])
            for i, ws in enumerate(word_lists, 1)]


def occ_of(rows):
    rows = np.asarray(rows, dtype=np.int64)
    words = tuple(f"w{i}" for i in range(len(rows)))
    return OccurrenceMatrix(rows, words, tuple(str(j) for j in range(rows.shape[1])))


def sim_of(offdiag_upper, n):
    a = np.eye(n)
    iu = np.triu_indices(n, 1)
    a[iu] = offdiag_upper
    a.T[iu] = offdiag_upper
    return SimilarityMatrix(a, tuple(f"w{i}" for i in range(n)))


class TestOccurrenceMatrix:
    def test_count_mode(self):
        occ = build_occurrence_matrix(docs_of(["学报", "大学"], ["学报"]),
                                      Vocabulary(["学报", "大学"], 1))
        assert occ.values.tolist() == [[1, 1], [1, 0]]
        assert occ.row_totals.tolist() == [2, 1]
        assert occ.doc_ids == ("1", "2")

    def test_binary_mode(self):
        occ = build_occurrence_matrix(docs_of(["学报", "学报"]), Vocabulary(["学报"], 1), "binary")
        assert occ.values.tolist() == [[1]]
        count = build_occurrence_matrix(docs_of(["学报", "学报"]), Vocabulary(["学报"], 1))
        assert count.values.tolist() == [[2]]

    def test_out_of_vocabulary_ignored(self):
        occ = build_occurrence_matrix(docs_of(["a", "zz"]), Vocabulary(["a"], 1))
        assert occ.values.tolist() == [[1]]

    def test_empty_corpus(self):
        with pytest.raises(InputError):
            build_occurrence_matrix([], Vocabulary(["a"], 1))

    def test_absent_word_rejected(self):
        with pytest.raises(InputError, match="b"):
            build_occurrence_matrix(docs_of(["a"]), Vocabulary(["a", "b"], 1))

    def test_bad_mode(self):
        with pytest.raises(UsageError):
            build_occurrence_matrix(docs_of(["a"]), Vocabulary(["a"], 1), "tfidf")


class TestCosine:
    def test_identity(self):
        assert cosine([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0, abs=1e-15)

    def test_orthogonal(self):
        assert cosine([1, 0], [0, 1]) == 0.0

    def test_derived_half_root_two(self):
        expected = naive_cosine([1, 1, 0], [1, 0, 0])
        assert expected == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        assert cosine([1, 1, 0], [1, 0, 0]) == pytest.approx(expected, abs=1e-15)

    def test_zero_vector(self):
        with pytest.raises(UsageError):
            cosine([0, 0], [1, 0])

    def test_clamped(self):
        assert cosine([3, 3, 3], [7, 7, 7]) <= 1.0


class TestCosineMatrix:
    def test_two_rows(self):
        sim = cosine_matrix(occ_of([[1, 1], [1, 0]]))
        assert sim.values[0, 1] == pytest.approx(naive_cosine([1, 1], [1, 0]), abs=1e-15)
        assert sim.values[0, 0] == sim.values[1, 1] == 1.0

    def test_single_word(self):
        assert cosine_matrix(occ_of([[2, 0, 1]])).values.tolist() == [[1.0]]

    def test_identical_rows(self):
        sim = cosine_matrix(occ_of([[1, 2, 0], [1, 2, 0]]))
        assert sim.values[0, 1] == pytest.approx(1.0, abs=1e-15)

    def test_zero_row(self):
        with pytest.raises(UsageError, match="w1"):
            cosine_matrix(occ_of([[1, 0], [0, 0]]))

    @settings(max_examples=150, deadline=None)
    @given(arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 8)),
                  elements=st.integers(0, 9)))
    def test_oracle_symmetry_range(self, rows):
        rows[:, 0] += 1  # no all-zero rows
        sim = cosine_matrix(occ_of(rows)).values
        ref = naive_cosine_matrix(rows.tolist())
        n = len(rows)
        for i in range(n):
            for j in range(n):
                if i != j:
                    assert abs(sim[i, j] - ref[i][j]) <= 1e-12
        assert np.array_equal(sim, sim.T)
        assert np.all((sim >= 0) & (sim <= 1))

    @settings(max_examples=100, deadline=None)
    @given(arrays(np.int64, (4, 6), elements=st.integers(0, 9)), st.integers(0, 3),
           st.integers(2, 50))
    def test_scale_invariance(self, rows, r, factor):
        rows[:, 0] += 1
        scaled = rows.copy()
        scaled[r] *= factor
        a = cosine_matrix(occ_of(rows)).values
        b = cosine_matrix(occ_of(scaled)).values
        assert np.max(np.abs(a - b)) <= 1e-12


class TestThreshold:
    def test_stats_arithmetic(self):
        stats = threshold_stats(sim_of([0.2, 0.4, 0.0], 3))
        assert stats.mean_nonzero == pytest.approx(0.3, abs=1e-15)
        assert stats.mean_all == pytest.approx(0.2, abs=1e-15)
        assert stats.nonzero_count == 2

    def test_stats_exact_on_dyadic_values(self):
        stats = threshold_stats(sim_of([0.25, 0.5, 0.0, 0.75, 0.0, 0.0], 4))
        assert stats.mean_nonzero == 0.5
        assert stats.mean_all == 0.25
        assert stats.pair_count == 6

    def test_all_zero_offdiagonal(self):
        stats = threshold_stats(sim_of([0.0, 0.0, 0.0], 3))
        assert (stats.mean_nonzero, stats.mean_all, stats.nonzero_count) == (0.0, 0.0, 0)

    def test_needs_two_words(self):
        with pytest.raises(UsageError):
            threshold_stats(sim_of([], 1))

    def test_strict_boundary(self):
        edges = threshold_edges(sim_of([0.07, 0.08, 0.0], 3), 0.07)
        assert [(i, j) for i, j, _ in edges] == [(0, 2)]
        assert edges.threshold_used == 0.07

    def test_upper_bound(self):
        assert len(threshold_edges(sim_of([1.0, 0.5, 0.9], 3), 1.0)) == 0

    def test_zero_threshold_complete(self):
        n = 5
        edges = threshold_edges(sim_of(np.full(n * (n - 1) // 2, 0.3), n), 0.0)
        assert len(edges) == n * (n - 1) // 2
        assert all(i < j for i, j, _ in edges)

    def test_auto_uses_mean_nonzero(self):
        sim = sim_of([0.25, 0.5, 0.0, 0.75, 0.0, 0.0], 4)
        edges = threshold_edges(sim, "auto")
        assert edges.threshold_used == 0.5
        assert [w for _, _, w in edges] == [0.75]

    @pytest.mark.parametrize("t", [-0.1, 1.5, "median"])
    def test_invalid_threshold(self, t):
        with pytest.raises(UsageError):
            threshold_edges(sim_of([0.1], 2), t)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 7).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.floats(0, 1), min_size=n * (n - 1) // 2,
                                                 max_size=n * (n - 1) // 2))),
        st.floats(0, 1), st.floats(0, 1))
    def test_edge_monotonicity(self, case, t1, t2):
        n, cells = case
        sim = sim_of(cells, n)
        lo, hi = sorted((t1, t2))
        lo_edges = {(i, j) for i, j, _ in threshold_edges(sim, lo)}
        hi_edges = {(i, j) for i, j, _ in threshold_edges(sim, hi)}
        assert hi_edges <= lo_edges
        for i, j, w in threshold_edges(sim, hi):
            assert w > hi
