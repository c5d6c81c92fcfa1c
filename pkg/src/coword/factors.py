"""Principal-component factor analysis of an occurrence matrix.

Words are the variables and documents the cases. Extraction works on the
Pearson correlation matrix, eigenpairs come from a cyclic Jacobi solver,
and the retained loadings are rotated with Kaiser-normalized varimax.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConvergenceError, DegenerateVariableError, UsageError

log = logging.getLogger(__name__)

UNASSIGNED = 0


@dataclass(frozen=True)
class CorrelationMatrix:
    values: np.ndarray
    words: tuple = ()


def correlation_matrix(occ) -> CorrelationMatrix:
    """Pearson correlation between word rows across documents."""
    x = np.asarray(occ.values, dtype=float)
    flat = [w for w, row in zip(occ.words, x) if np.ptp(row) == 0]
    if flat:
        raise DegenerateVariableError(flat)
    centered = x - x.mean(axis=1, keepdims=True)
    ss = np.einsum("ij,ij->i", centered, centered)
    corr = (centered @ centered.T) / np.sqrt(np.outer(ss, ss))
    corr = np.triu(np.clip(corr, -1.0, 1.0), 1)
    corr = corr + corr.T
    np.fill_diagonal(corr, 1.0)
    return CorrelationMatrix(corr, tuple(occ.words))


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.where(vectors[idx, np.arange(vectors.shape[1])] < 0, -1.0, 1.0)
    return vectors * signs


@dataclass(frozen=True)
class EigenSolution:
    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0
    residual: float = 0.0


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.dot(off, off)))


def jacobi_eigh(matrix, tol: float = 1e-12, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps visit every (p, q) pair with p < q in row order and annihilate
    a[p, q] with one plane rotation. Iteration stops once the off-diagonal
    Frobenius norm drops below ``tol * max(1, ||A||_F)``.

    Returns
    -------
    eigenvalues : ndarray
        Diagonal of the converged matrix, in the original (unsorted) order.
    vectors : ndarray
        Accumulated rotations; column i pairs with eigenvalue i.
    sweeps : int
    residual : float
        Off-diagonal norm at exit.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise UsageError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.linalg.norm(a)))
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * scale):
        raise UsageError("matrix is not symmetric")
    a = (a + a.T) / 2.0
    v = np.eye(n)
    limit = tol * scale
    sweeps = 0
    off = _off_norm(a)
    while off >= limit:
        if sweeps == max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < abs(diff) * 1e-36:
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = _off_norm(a)
    return np.diag(a).copy(), v, sweeps, off


def eigendecompose(corr, tol: float = 1e-12, max_sweeps: int = 100) -> EigenSolution:
    """Eigenpairs sorted by descending eigenvalue (ties keep original order)."""
    values = corr.values if isinstance(corr, CorrelationMatrix) else corr
    vals, vecs, sweeps, residual = jacobi_eigh(values, tol, max_sweeps)
    order = np.argsort(-vals, kind="stable")
    return EigenSolution(vals[order], _fix_signs(vecs[:, order]), sweeps, residual)


def kaiser_count(eigenvalues) -> int:
    """Number of eigenvalues of one or more."""
    return int(np.sum(np.asarray(eigenvalues) >= 1.0))


@dataclass(frozen=True)
class LoadingMatrix:
    loadings: np.ndarray
    words: tuple = ()
    rotated: bool = False
    criterion_history: tuple = field(default=(), compare=False)

    @property
    def communalities(self) -> np.ndarray:
        return np.sum(self.loadings ** 2, axis=1)

    @property
    def k(self) -> int:
        return self.loadings.shape[1]


def principal_loadings(eig: EigenSolution, k: int, words=()) -> LoadingMatrix:
    n = len(eig.eigenvalues)
    if not 1 <= k <= n:
        raise UsageError(f"number of factors must be in 1..{n}, got {k}")
    lam = eig.eigenvalues[:k]
    if lam[-1] <= 0:
        raise UsageError(
            f"eigenvalue {k} is {lam[-1]:.3g}; cannot extract a factor with nonpositive variance"
        )
    return LoadingMatrix(eig.vectors[:, :k] * np.sqrt(lam), tuple(words), False)


def varimax_criterion(loadings) -> float:
    """Sum over factors of the variance of the squared loadings."""
    sq = np.asarray(loadings) ** 2
    return float(np.sum(np.mean(sq ** 2, axis=0) - np.mean(sq, axis=0) ** 2))


def _rotate_pair(b: np.ndarray, j: int, l: int) -> None:
    x = b[:, j]
    y = b[:, l]
    n = b.shape[0]
    u = x * x - y * y
    v = 2.0 * x * y
    su, sv = u.sum(), v.sum()
    num = 2.0 * np.dot(u, v) - 2.0 * su * sv / n
    den = np.dot(u, u) - np.dot(v, v) - (su * su - sv * sv) / n
    phi = math.atan2(num, den) / 4.0
    c, s = math.cos(phi), math.sin(phi)
    bx = x.copy()
    b[:, j] = c * bx + s * y
    b[:, l] = -s * bx + c * y


def _canonical_frame(b: np.ndarray) -> np.ndarray:
    """Rotate ``b`` onto its principal axes.

    Every orthogonal rotation of ``b`` maps to the same frame (up to
    rounding), so a varimax search started here does not depend on how
    the input loadings happened to be oriented.
    """
    _, _, wt = np.linalg.svd(b, full_matrices=False)
    return _fix_signs(b @ wt.T)


def _varimax_sweeps(b: np.ndarray, tol: float, max_sweeps: int):
    k = b.shape[1]
    history = [varimax_criterion(b)]
    for _ in range(max_sweeps):
        for j in range(k - 1):
            for l in range(j + 1, k):
                _rotate_pair(b, j, l)
        history.append(varimax_criterion(b))
        prev, cur = history[-2], history[-1]
        if abs(cur - prev) <= tol * max(abs(prev), np.finfo(float).tiny):
            break
    return b, history


def varimax(load: LoadingMatrix, tol: float = 1e-8, max_sweeps: int = 1000) -> LoadingMatrix:
    """Kaiser-normalized varimax rotation.

    Rows are scaled to unit length, every factor pair is rotated to its
    planar varimax optimum once per sweep, and sweeping stops when the
    criterion's relative gain falls below ``tol``.

    The pairwise search can stall in a local optimum that depends on the
    starting orientation. It is therefore started from the principal axes
    of the normalized loadings and from that frame turned by 45 degrees in
    each factor plane; the start reaching the highest criterion wins
    (earliest start on ties). The result depends only on the column space
    of the input.

    Columns come back sorted by explained variance with the
    largest-magnitude loading positive. ``criterion_history`` records the
    normalized criterion of the winning start before the first sweep and
    after each sweep.
    """
    loadings = np.array(load.loadings, dtype=float)
    n, k = loadings.shape
    if k == 1:
        return replace(load, loadings=loadings, rotated=True)
    h = np.sqrt(np.sum(loadings ** 2, axis=1))
    if np.any(h == 0):
        names = [str(load.words[i]) if load.words else str(i) for i in np.flatnonzero(h == 0)]
        raise UsageError("zero communality, cannot normalize: " + ", ".join(names))
    frame = _canonical_frame(loadings / h[:, None])
    starts = [frame]
    c = s = math.sqrt(0.5)
    for j in range(k - 1):
        for l in range(j + 1, k):
            turned = frame.copy()
            turned[:, j] = c * frame[:, j] + s * frame[:, l]
            turned[:, l] = -s * frame[:, j] + c * frame[:, l]
            starts.append(turned)
    best, history = None, None
    for start in starts:
        b, hist = _varimax_sweeps(start, tol, max_sweeps)
        if best is None or hist[-1] > history[-1]:
            best, history = b, hist
    rotated = best * h[:, None]
    order = np.argsort(-np.sum(rotated ** 2, axis=0), kind="stable")
    rotated = _fix_signs(rotated[:, order])
    return LoadingMatrix(rotated, load.words, True, tuple(history))


def variance_explained(load: LoadingMatrix, n_variables: int) -> np.ndarray:
    """Percent of total variance carried by each factor."""
    return 100.0 * np.sum(np.asarray(load.loadings) ** 2, axis=0) / n_variables


def assign_clusters(load: LoadingMatrix) -> np.ndarray:
    """Factor (1-based) with each word's highest loading; 0 if none is positive."""
    l = np.asarray(load.loadings)
    best = np.argmax(l, axis=1)
    top = l[np.arange(len(l)), best]
    return np.where(top > 0, best + 1, UNASSIGNED).astype(int)


@dataclass(frozen=True)
class FactorReport:
    words: tuple
    k: int
    eigen: EigenSolution
    loadings: LoadingMatrix
    kaiser_count: int
    percent_unrotated: np.ndarray
    percent_per_factor: np.ndarray
    assignment: np.ndarray
    dropped: tuple = ()

    @property
    def percent_total(self) -> float:
        return float(math.fsum(self.percent_per_factor))

    def cluster_of(self, word) -> int:
        """Cluster id for any vocabulary word; dropped words are unassigned."""
        try:
            return int(self.assignment[self.words.index(word)])
        except ValueError:
            if word in self.dropped:
                return UNASSIGNED
            raise KeyError(word) from None


def factor_analysis(occ, k: int = 4, drop_degenerate: bool = False) -> FactorReport:
    """Run correlation, extraction, rotation and assignment on ``occ``."""
    dropped = ()
    try:
        corr = correlation_matrix(occ)
    except DegenerateVariableError as exc:
        if not drop_degenerate:
            raise
        dropped = tuple(exc.words)
        log.warning("dropping zero-variance words: %s", ", ".join(dropped))
        keep = [i for i, w in enumerate(occ.words) if w not in exc.words]
        if not keep:
            raise
        occ = replace(occ, values=occ.values[keep], words=tuple(occ.words[i] for i in keep))
        corr = correlation_matrix(occ)
    n = len(corr.words)
    eig = eigendecompose(corr)
    unrotated = principal_loadings(eig, k, corr.words)
    rotated = varimax(unrotated)
    percents = variance_explained(rotated, n)
    return FactorReport(
        words=corr.words,
        k=k,
        eigen=eig,
        loadings=rotated,
        kaiser_count=kaiser_count(eig.eigenvalues),
        percent_unrotated=100.0 * eig.eigenvalues / n,
        percent_per_factor=percents,
        assignment=assign_clusters(rotated),
        dropped=dropped,
    )
