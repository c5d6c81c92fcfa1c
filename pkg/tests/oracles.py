"""Independent reference computations used by the tests.

Pure Python loops with math.fsum, deliberately sharing no code with the
package under test.
"""
import math


def naive_cosine(u, v):
    dot = math.fsum(a * b for a, b in zip(u, v))
    return dot / (math.sqrt(math.fsum(a * a for a in u)) * math.sqrt(math.fsum(b * b for b in v)))


def naive_cosine_matrix(rows):
    n = len(rows)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            dot = 0.0
            for a, b in zip(rows[i], rows[j]):
                dot += a * b
            ni = math.sqrt(sum(a * a for a in rows[i]))
            nj = math.sqrt(sum(b * b for b in rows[j]))
            out[i][j] = dot / (ni * nj)
    return out


def naive_pearson(x, y):
    m = len(x)
    mx = math.fsum(x) / m
    my = math.fsum(y) / m
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)


def count_below(a, lam):
    """Eigenvalues of symmetric ``a`` below ``lam``: negative pivots of LDL^T(a - lam I).

    By Sylvester's law of inertia this counts the sign changes a Sturm
    sequence of the characteristic polynomial would report.
    """
    n = len(a)
    m = [[a[i][j] - (lam if i == j else 0.0) for j in range(n)] for i in range(n)]
    negatives = 0
    for k in range(n):
        d = m[k][k]
        if d == 0.0:
            d = -1e-300
        if d < 0:
            negatives += 1
        for i in range(k + 1, n):
            f = m[i][k] / d
            for j in range(k + 1, n):
                m[i][j] -= f * m[k][j]
    return negatives


def bisection_eigenvalues(a, tol=1e-12):
    """All eigenvalues of a small symmetric matrix, ascending, by bisection."""
    n = len(a)
    radius = max(sum(abs(x) for x in row) for row in a) + 1.0
    out = []
    for k in range(n):
        lo, hi = -radius, radius
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if count_below(a, mid) > k:
                hi = mid
            else:
                lo = mid
        out.append((lo + hi) / 2)
    return out
