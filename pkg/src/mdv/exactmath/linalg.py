"""Exact dense linear algebra over the integers and the rationals.

Matrices are plain row-major sequences of sequences.  Integer inputs stay
integers wherever the algorithm allows it (determinants, products); anything
that needs division is carried out with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence]


class ShapeError(ValueError):
    pass


def shape(A: Matrix, ncols: int | None = None) -> tuple[int, int]:
    rows = len(A)
    if rows == 0:
        return 0, (ncols or 0)
    cols = len(A[0])
    for row in A:
        if len(row) != cols:
            raise ShapeError("ragged matrix")
    if ncols is not None and ncols != cols:
        raise ShapeError(f"expected {ncols} columns, got {cols}")
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Matrix, ncols: int | None = None) -> list[list]:
    m, n = shape(A, ncols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Matrix, B: Matrix) -> list[list]:
    m, k = shape(A)
    k2, n = shape(B)
    if m and k != k2:
        raise ShapeError(f"cannot multiply {m}x{k} by {k2}x{n}")
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact scalar expected, got {type(x).__name__}")


def normalize(x):
    """Return an int when the rational is integral, else the Fraction itself."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def is_integer_matrix(A: Matrix) -> bool:
    return all(isinstance(a, int) for row in A for a in row)


def det_exact(A: Matrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Integer matrices give an ``int``; rational input gives a ``Fraction``
    (collapsed to ``int`` when integral).
    """
    n, n2 = shape(A)
    if n != n2:
        raise ShapeError(f"determinant of non-square {n}x{n2} matrix")
    if n == 0:
        return 1
    integral = is_integer_matrix(A)
    M = [list(row) if integral else [to_fraction(a) for a in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                # Sylvester's identity guarantees exactness here.
                M[i][j] = num // prev if integral else num / prev
            M[i][k] = 0
        prev = pivot
    return normalize(sign * M[n - 1][n - 1])


def rref(A: Matrix, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, over the rationals."""
    m, n = shape(A, ncols)
    R = [[to_fraction(a) for a in row] for row in A]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [a * inv for a in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: Matrix, ncols: int | None = None) -> int:
    return len(rref(A, ncols)[1])


def kernel_basis(A: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space ``{v : A v = 0}``.

    One vector per free column of the reduced echelon form, in increasing
    column order; the free coordinate is set to 1.
    """
    m, n = shape(A, ncols)
    R, pivots = rref(A, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][free]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence, ncols: int | None = None) -> list[Fraction] | None:
    """One rational solution of ``A x = b`` (free variables zero), or None."""
    m, n = shape(A, ncols)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in enumerate(pivots):
        x[pc] = R[row][n]
    return x


def inverse(A: Matrix) -> list[list[Fraction]]:
    n, n2 = shape(A)
    if n != n2:
        raise ShapeError("inverse of non-square matrix")
    aug = [list(row) + e for row, e in zip(A, identity(n))]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def clear_denominators(v: Sequence) -> list[int]:
    """Smallest positive integer multiple of a rational vector."""
    lcm = 1
    for x in v:
        d = to_fraction(x).denominator
        lcm = lcm * d // gcd(lcm, d)
    return [int(to_fraction(x) * lcm) for x in v]
