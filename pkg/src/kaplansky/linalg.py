"""Dense linear algebra over a FiniteField (Gauss-Jordan elimination).

Matrices are lists of rows of field-element codes.
"""

from __future__ import annotations

from typing import Sequence

from .field import FiniteField

Matrix = list[list[int]]


def rref(f: FiniteField, m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form, pivoting on the first nonzero entry.

    Only the first ``ncols`` columns are eliminated (all by default), which
    lets callers reduce an augmented matrix.
    """
    a = [list(row) for row in m]
    if not a:
        return a, []
    ncols = len(a[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(f: FiniteField, m: Sequence[Sequence[int]]) -> int:
    return len(rref(f, m)[1])


def nullspace(f: FiniteField, m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {v : m v = 0}, one vector per free column in ascending order."""
    ncols = len(m[0]) if m else (ncols or 0)
    red, pivots = rref(f, m, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = f.neg(row[free])
        basis.append(v)
    return basis


def solve(f: FiniteField, m: Sequence[Sequence[int]], rhs: Sequence[int],
          ncols: int) -> tuple[list[int] | None, Matrix]:
    """Solve ``m v = rhs``.

    Returns ``(particular, kernel_basis)``; the particular solution has every
    free variable set to 0 and is None when the system is inconsistent.
    """
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    red, pivots = rref(f, aug, ncols)
    for row in red[len(pivots):]:
        if row[ncols]:
            return None, []
    sol = [0] * ncols
    for row, pc in zip(red, pivots):
        sol[pc] = row[ncols]
    kernel = nullspace(f, m, ncols) if m else [
        [int(i == j) for i in range(ncols)] for j in range(ncols)]
    return sol, kernel


def matmul(f: FiniteField, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    n, inner, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        row = out[i]
        for k in range(inner):
            x = a[i][k]
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    row[j] = f.add(row[j], f.mul(x, y))
    return out


def matvec(f: FiniteField, a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = f.add(acc, f.mul(x, y))
        out.append(acc)
    return out


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_invertible(f: FiniteField, a: Sequence[Sequence[int]]) -> bool:
    return len(a) == (len(a[0]) if a else 0) and rank(f, a) == len(a)
