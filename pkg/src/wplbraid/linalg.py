"""Exact integer linear algebra: fraction-free determinants and kernels."""

from __future__ import annotations

from typing import Sequence

from .errors import MalformedInput

Matrix = Sequence[Sequence[int]]


def bareiss_det(m: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination.

    All intermediate quotients are exact, so the result is an exact integer.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise MalformedInput("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss step must divide exactly"
                a[i][j] = q
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def transpose(m: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def covector_kernel(f: Sequence[int]) -> list[tuple[int, ...]]:
    """A Z-basis of ``{y : f . y = 0}`` (rank ``len(f) - 1`` when ``f != 0``).

    Column operations reduce ``f`` to ``(g, 0, ..., 0)``; the unimodular
    transform's remaining columns span the kernel.
    """
    n = len(f)
    row = list(map(int, f))
    # u holds the transform as columns: u[k] is column k
    u = [[1 if r == k else 0 for r in range(n)] for k in range(n)]
    for k in range(1, n):
        while row[k] != 0:
            q = row[0] // row[k]
            row[0] -= q * row[k]
            u[0] = [a - q * b for a, b in zip(u[0], u[k])]
            row[0], row[k] = row[k], row[0]
            u[0], u[k] = u[k], u[0]
    if row[0] == 0:
        return [tuple(c) for c in u]
    return [tuple(c) for c in u[1:]]


def lll_reduce_small(basis: list[tuple[int, ...]], rounds: int = 50) -> list[tuple[int, ...]]:
    """Cheap size reduction of an integer basis (pairwise, Euclidean norm).

    Only used to make perpendicular bases readable; the span is unchanged.
    """
    b = [list(v) for v in basis]

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    for _ in range(rounds):
        changed = False
        b.sort(key=lambda v: dot(v, v))
        for i in range(len(b)):
            for j in range(len(b)):
                if i == j:
                    continue
                nj = dot(b[j], b[j])
                if nj == 0:
                    continue
                q = (2 * dot(b[i], b[j]) + nj) // (2 * nj)
                if q:
                    cand = [x - q * y for x, y in zip(b[i], b[j])]
                    if dot(cand, cand) < dot(b[i], b[i]):
                        b[i] = cand
                        changed = True
        if not changed:
            break
    return [tuple(v) for v in b]
