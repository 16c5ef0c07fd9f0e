"""Small dense linear algebra helpers for pointwise subspace work.

Everything here operates on numpy arrays whose *rows* span a subspace.  The
residual conventions follow one rule used everywhere in the checkers: a vector
``v`` counts as lying in a span when the least-squares residual is below
``tol * (1 + |v|)``.
"""

from __future__ import annotations

import numpy as np


class RankError(ValueError):
    pass


def orthonormal_rows(rows: np.ndarray, tol: float = 1e-11) -> np.ndarray:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else 0))
    u, s, vt = np.linalg.svd(rows, full_matrices=False)
    cut = s > tol * max(1.0, s[0] if len(s) else 1.0)
    return vt[cut]

def rank(rows: np.ndarray, tol: float = 1e-9) -> int:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return 0
    s = np.linalg.svd(rows, compute_uv=False)
    if len(s) == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def in_span_residual(rows: np.ndarray, v: np.ndarray) -> float:
    """Distance of v from the row span, normalized by 1 + |v|."""
    q = orthonormal_rows(rows)
    v = np.asarray(v, dtype=float)
    if q.shape[0] == 0:
        return float(np.linalg.norm(v)) / (1.0 + float(np.linalg.norm(v)))
    proj = q.T @ (q @ v)
    return float(np.linalg.norm(v - proj)) / (1.0 + float(np.linalg.norm(v)))


def span_residual(container_rows: np.ndarray, content_rows: np.ndarray) -> float:
    """Max residual of content rows against the container span."""
    content = np.atleast_2d(np.asarray(content_rows, dtype=float))
    if content.size == 0:
        return 0.0
    return max(in_span_residual(container_rows, v) for v in content)


def spans_match(a_rows: np.ndarray, b_rows: np.ndarray) -> float:
    """Symmetric span comparison; 0 means the spans agree."""
    return max(span_residual(a_rows, b_rows), span_residual(b_rows, a_rows))


def kernel(matrix: np.ndarray, tol: float = 1e-11) -> np.ndarray:
    """Rows spanning the right null space of `matrix`."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    m, n = matrix.shape
    if m == 0:
        return np.eye(n)
    u, s, vt = np.linalg.svd(matrix)
    cut = tol * max(1.0, s[0] if len(s) else 1.0)
    nullity = int(np.sum(s <= cut)) + max(0, n - len(s))
    if nullity == 0:
        return np.zeros((0, n))
    return vt[n - nullity:]


def least_norm_solution(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Minimum-norm x with Ax ~ b; returns (x, relative residual)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    x = np.linalg.pinv(A, rcond=1e-12) @ b
    res = float(np.linalg.norm(A @ x - b)) / (1.0 + float(np.linalg.norm(b)))
    return x, res


def solve_exact(A: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    x, res = least_norm_solution(A, b)
    if res > tol:
        raise RankError(f"inconsistent linear system, residual {res:.3e}")
    return x


def intersection_dim_with_line(rows: np.ndarray, v: np.ndarray, tol: float = 1e-8) -> int:
    """Dimension (0 or 1) of span(rows) intersected with the line through v."""
    nv = np.linalg.norm(v)
    if nv == 0.0:
        return 0
    return 1 if in_span_residual(rows, np.asarray(v) / nv) <= tol else 0
