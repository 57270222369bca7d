"""Exact dense linear algebra over Q and over cyclotomic fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import RationalPoly


class SingularMatrixError(ArithmeticError):
    pass


def solve_integer_system(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve A x = b for square integer A by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if rows[r][k]), None)
        if pivot is None:
            raise SingularMatrixError("singular integer system")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        pk = rows[k]
        akk = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            if aik:
                for j in range(k + 1, n + 1):
                    ri[j] = (akk * ri[j] - aik * pk[j]) // prev
            else:
                for j in range(k + 1, n + 1):
                    ri[j] = (akk * ri[j]) // prev
            ri[k] = 0
        prev = akk
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rows[i][n])
        for j in range(i + 1, n):
            if rows[i][j]:
                acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def determinant(matrix: Sequence[Sequence], one=1):
    """Determinant over any exact field (CycloNum or Fraction entries).

    Fraction-free Bareiss elimination; every division is exact by Sylvester's
    identity, so intermediate entries stay in the ring generated by the input.
    """
    n = len(matrix)
    if n == 0:
        return one
    a = [list(row) for row in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return a[0][0] * 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = akk
    return a[n - 1][n - 1] * sign


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            # 0 * entry keeps the scalar type when every product vanishes
            acc = 0 * row[0] if row else 0
            for k in range(inner):
                x = row[k]
                if x != 0:
                    y = b[k][j]
                    if y != 0:
                        acc = x * y + acc
            out_row.append(acc)
        out.append(out_row)
    return out


def charpoly(matrix: Sequence[Sequence]) -> RationalPoly:
    """Characteristic polynomial det(xI - A) of a rational matrix.

    Reduction to upper Hessenberg form by similarity, then the standard
    Hessenberg recurrence.
    """
    n = len(matrix)
    h = [[Fraction(x) for x in row] for row in matrix]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for row in h:
                row[m], row[piv] = row[piv], row[m]
        pivot = h[m][m - 1]
        for i in range(m + 1, n):
            f = h[i][m - 1] / pivot
            if f:
                for j in range(n):
                    h[i][j] -= f * h[m][j]
                for row in h:
                    row[m] += f * row[i]
    # p[k] = char poly of leading k x k block, lowest degree first
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [Fraction(0)] + prev  # x * p_{k-1}
        for j in range(len(prev)):
            cur[j] -= h[k - 1][k - 1] * prev[j]
        prod = Fraction(1)
        for i in range(1, k):
            prod *= h[k - i][k - i - 1]
            if prod == 0:
                break
            coef = prod * h[k - i - 1][k - 1]
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] -= coef * c
        polys.append(cur)
    return RationalPoly(tuple(polys[n]))
