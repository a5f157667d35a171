"""Smith normal form with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import identity, shape

IntRows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    The diagonal of ``D`` is nonnegative, each entry divides the next, and
    zeros come last.
    """

    U: IntRows
    D: IntRows
    V: IntRows

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.V))
        return tuple(self.D[i][i] for i in range(k))

    @property
    def divisors(self) -> tuple[int, ...]:
        """The nonzero invariant factors."""
        return tuple(d for d in self.diagonal if d)

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, q):
    """row[dst] += q * row[src]"""
    rs, rd = M[src], M[dst]
    for k, x in enumerate(rs):
        if x:
            rd[k] += q * x


def _add_col(M, dst, src, q):
    for row in M:
        x = row[src]
        if x:
            row[dst] += q * x


def snf(A: Sequence[Sequence[int]], ncols: int | None = None) -> SnfDecomposition:
    """Smith normal form of an integer matrix.

    Pivots are chosen deterministically (smallest absolute value, then
    row-major position), so repeated calls produce identical transforms.

    >>> snf([[2, 0], [0, 3]]).diagonal
    (1, 6)
    >>> snf([[4, 6]]).D
    ((2, 0),)
    """
    m, n = shape(A, ncols)
    for row in A:
        for a in row:
            if not isinstance(a, int):
                raise TypeError("snf needs an integer matrix")
    S = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        _swap_rows(S, t, i)
        _swap_rows(U, t, i)
        _swap_cols(S, t, j)
        _swap_cols(V, t, j)

        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    if q:
                        _add_row(S, i, t, -q)
                        _add_row(U, i, t, -q)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    if q:
                        _add_col(S, j, t, -q)
                        _add_col(V, j, t, -q)
                    if S[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot survived; promote it
                cand = [(abs(S[i][t]), 0, i) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), 1, j) for j in range(t + 1, n) if S[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    _swap_rows(S, t, k)
                    _swap_rows(U, t, k)
                else:
                    _swap_cols(S, t, k)
                    _swap_cols(V, t, k)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(S[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            _add_row(S, t, bad, 1)
            _add_row(U, t, bad, 1)

        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    return SnfDecomposition(
        U=tuple(map(tuple, U)), D=tuple(map(tuple, S)), V=tuple(map(tuple, V))
    )


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, ...]:
    return snf(A, ncols).divisors
