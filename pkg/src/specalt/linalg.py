"""Exact dense linear algebra over the integers and rationals.

Matrices here are small (at most a few dozen rows), so everything is done
with Fractions / big ints; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def symmetric_signature_nullity(mat) -> tuple[int, int]:
    """(signature, nullity) of a symmetric matrix, by exact congruence
    reduction with symmetric pivoting.

    Zero-diagonal blocks are reduced with hyperbolic 2x2 pivots, which
    contribute one +1 and one -1 eigenvalue each.
    """
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = None
        for i in active:
            if a[i][i] != 0 and (piv is None or abs(a[i][i]) > abs(a[piv][piv])):
                piv = i
        if piv is not None:
            d = a[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            for j in active:
                if a[j][piv] == 0:
                    continue
                f = a[j][piv] / d
                for k in active:
                    a[j][k] -= f * a[piv][k]
            for j in active:
                a[j][piv] = a[piv][j] = Fraction(0)
            continue
        hyp = None
        for i in active:
            for j in active:
                if i < j and a[i][j] != 0:
                    hyp = (i, j)
                    break
            if hyp:
                break
        if hyp is None:
            break  # remaining block is zero
        i, j = hyp
        b = a[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        for k in active:
            ci, cj = a[k][i], a[k][j]
            if ci == 0 and cj == 0:
                continue
            for l in active:
                a[k][l] -= (ci * a[j][l] + cj * a[i][l]) / b
        for k in active:
            a[k][i] = a[i][k] = a[k][j] = a[j][k] = Fraction(0)
    nullity = n - pos - neg
    return pos - neg, nullity


def det_bareiss(mat) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_positive_definite(mat) -> bool:
    sig, nul = symmetric_signature_nullity(mat)
    return nul == 0 and sig == len(mat)
