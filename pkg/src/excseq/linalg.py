"""Exact linear algebra over the rationals for small dense matrices.

Matrices are lists of rows. Entries may be ``int`` or ``Fraction``; results
are returned as ``Fraction`` (or ``int`` where noted).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence]


def rank(rows: Matrix) -> int:
    """Rank of an integer or rational matrix.

    Integer input goes through fraction-free elimination with gcd row
    reduction, which is considerably faster than ``Fraction`` arithmetic.
    """
    if not rows or not rows[0]:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        return _int_rank([list(r) for r in rows])
    return len(rref(rows)[1])


def _int_rank(m: list[list[int]]) -> int:
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if not f:
                continue
            row = [p * a - f * b for a, b in zip(m[i], m[r])]
            g = 0
            for x in row:
                g = gcd(g, x)
            if g > 1:
                row = [x // g for x in row]
            m[i] = row
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``; ``ncols`` is needed when ``rows`` is empty."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def left_nullspace(rows: Matrix, nrows: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{y : y A = 0}``."""
    if nrows is None:
        nrows = len(rows)
    if not rows or not rows[0]:
        return [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    return nullspace(transpose(rows), nrows)


def primitive(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def transpose(rows: Matrix) -> list[list]:
    return [list(col) for col in zip(*rows)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def inverse(rows: Matrix) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def det(rows: Matrix) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def solve(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum(c[j] * columns[j]) == target``.

    Returns ``None`` when the system is inconsistent. When the columns are
    dependent an arbitrary particular solution (free variables zero) is
    returned.
    """
    dim = len(target)
    if not columns:
        return [] if all(x == 0 for x in target) else None
    aug = [[col[i] for col in columns] + [target[i]] for i in range(dim)]
    m, pivots = rref(aug)
    k = len(columns)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        sol[pc] = m[r][k]
    return sol


def integer_combination(columns: Sequence[Sequence], target: Sequence) -> list[int] | None:
    """Integer coefficients expressing ``target`` in linearly independent ``columns``."""
    if columns and rank([list(c) for c in columns]) != len(columns):
        raise ValueError("columns are linearly dependent")
    sol = solve(columns, target)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return [int(x) for x in sol]
