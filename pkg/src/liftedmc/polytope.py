"""Exact affine geometry of 01-vector sets and the brute-force facet oracle.

No floating point is used. Ranks come from Gaussian elimination over
:class:`fractions.Fraction`; bulk membership tests multiply integer
matrices (numpy ``int64`` when the coefficients are provably small enough,
Python ints otherwise), which is exact either way.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .graph import LiftedPair
from .inequality import LinearInequality, canonical_inequalities  # noqa: F401  (re-export)
from .lifting import lifted_vertex_array

_CHUNK = 65536
_CHUNK_MIN = 64


class InvalidInequality(ValueError):
    def __init__(self, witness: tuple[int, ...], violation: Fraction):
        self.witness = witness
        self.violation = violation
        super().__init__(f"inequality violated by vertex {''.join(map(str, witness))} (by {violation})")


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with partial pivoting on the largest |entry|."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        best = max(range(r, len(m)), key=lambda i: abs(m[i][c]))
        if m[best][c] == 0:
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def affine_rank_direct(points: Sequence[Sequence[int]]) -> int:
    """Affine dimension as the rank of differences to the first point."""
    pts = [tuple(p) for p in points]
    if not pts:
        return -1
    x0 = pts[0]
    return rational_rank([[a - b for a, b in zip(p, x0)] for p in pts[1:]]) if len(pts) > 1 else 0


def _as_matrix(A: list[list[int]], d: int):
    bound = max((sum(abs(v) for v in row) for row in A), default=0)
    if bound < 2 ** 60:
        return np.array(A, dtype=np.int64).reshape(len(A), d)
    return np.array(A, dtype=object).reshape(len(A), d)


def _eliminate(A: list[list[int]], b: list[int], r: list[int]) -> tuple[list[list[int]], list[int]]:
    """Keep the integer combinations of ``A x = b`` that the new point (residual ``r``) satisfies."""
    k = min((i for i, v in enumerate(r) if v), key=lambda i: (abs(r[i]), i))
    rk, ak, bk = r[k], A[k], b[k]
    A2, b2 = [], []
    for i, (row, bi, ri) in enumerate(zip(A, b, r)):
        if i == k:
            continue
        if ri:
            row = [rk * p - ri * q for p, q in zip(row, ak)]
            bi = rk * bi - ri * bk
        g = gcd(*row, bi)
        if g > 1:
            row = [v // g for v in row]
            bi //= g
        A2.append(row)
        b2.append(bi)
    return A2, b2


def affine_hull(vs) -> tuple[list[tuple[int, ...]], list[list[int]], list[int]]:
    """Grow an affinely independent basis of ``vs`` and the equations of its hull.

    Returns ``(basis, A, b)`` where every input vector satisfies ``A x = b``
    and ``len(basis) - 1`` is the affine dimension. Equations start as
    ``x = x0`` and lose one row per new basis point by integer elimination.
    """
    arr = np.asarray(vs)
    if arr.size == 0 and (arr.ndim < 2 or arr.shape[0] == 0):
        return [], [], []
    arr = arr.reshape(arr.shape[0], -1)
    n, d = arr.shape
    basis = [tuple(int(v) for v in arr[0])]
    A = [[int(i == j) for j in range(d)] for i in range(d)]
    b = list(basis[0])
    pos, step = 1, _CHUNK_MIN
    while pos < n and A:
        M = _as_matrix(A, d)
        bvec = np.array(b, dtype=M.dtype)
        chunk = arr[pos:pos + step].astype(M.dtype)
        resid = chunk @ M.T - bvec
        bad = np.flatnonzero(np.any(resid != 0, axis=1))
        if bad.size == 0:
            pos += chunk.shape[0]
            step = min(step * 4, _CHUNK)
            continue
        i = pos + int(bad[0])
        basis.append(tuple(int(v) for v in arr[i]))
        A, b = _eliminate(A, b, [int(v) for v in resid[int(bad[0])]])
        pos = i + 1
    return basis, A, b


def affine_dimension(vs) -> int:
    """Dimension of the affine hull; -1 for the empty set, 0 for a point."""
    basis, _, _ = affine_hull(vs)
    return len(basis) - 1


def _integral(ineq: LinearInequality):
    a, rhs = ineq.integral()
    bound = sum(abs(v) for v in a)
    dtype = np.int64 if bound < 2 ** 60 else object
    return np.array(a, dtype=dtype), rhs


def _lhs(pair: LiftedPair, ineq: LinearInequality):
    """Left-hand side on every vertex, summed over the nonzero columns only."""
    if ineq.dim != len(pair.edges):
        raise ValueError(f"inequality has {ineq.dim} coefficients, pair has {len(pair.edges)} edges")
    X = lifted_vertex_array(pair)
    a, rhs = _integral(ineq)
    lhs = np.zeros(X.shape[0], dtype=a.dtype)
    for j in np.flatnonzero(a):
        lhs += a[j] * X[:, j].astype(a.dtype)
    return X, lhs, rhs


def is_valid(pair: LiftedPair, ineq: LinearInequality) -> bool:
    _, lhs, rhs = _lhs(pair, ineq)
    return bool(np.all(lhs <= rhs))


def face_indices(pair: LiftedPair, ineq: LinearInequality) -> np.ndarray:
    """Row indices (into the vertex array) of the vertices on which ``ineq`` is tight."""
    X, lhs, rhs = _lhs(pair, ineq)
    over = np.flatnonzero(lhs > rhs)
    if over.size:
        x = tuple(int(v) for v in X[over[0]])
        raise InvalidInequality(x, ineq.violation(x))
    return np.flatnonzero(lhs == rhs)


def face(pair: LiftedPair, ineq: LinearInequality) -> np.ndarray:
    """Vertices of the lifted multicut polytope on which ``ineq`` is tight."""
    return lifted_vertex_array(pair)[face_indices(pair, ineq)]


def face_dimension(pair: LiftedPair, ineq: LinearInequality) -> int:
    return affine_dimension(face(pair, ineq))


def is_facet(pair: LiftedPair, ineq: LinearInequality) -> bool:
    """Facet test relative to the full dimension |E'| of the polytope."""
    return face_dimension(pair, ineq) == len(pair.edges) - 1


def polytope_dimension(pair: LiftedPair) -> int:
    return affine_dimension(lifted_vertex_array(pair))
