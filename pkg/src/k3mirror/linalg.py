"""Exact integer/rational matrix kernel.

Everything downstream (discriminant groups, saturations, overlattices) needs
exact denominators, so all routines here work over Python ints and Fractions.
Matrices are lists/tuples of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            ait = ai[t]
            if ait:
                bt = b[t]
                for j in range(m):
                    oi[j] += ait * bt[j]
    return out

def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def det_fraction(m):
    """Determinant by fraction-free-ish Gaussian elimination, exact."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def det_int(m):
    d = det_fraction(m)
    assert d.denominator == 1
    return d.numerator


def invert_fraction(m):
    """Inverse of a square matrix, entries returned as Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_fraction(a, b):
    """Solve a·x = b exactly; raises ZeroDivisionError if a is singular."""
    inv = invert_fraction(a)
    return [sum(inv[i][j] * Fraction(b[j]) for j in range(len(b)))
            for i in range(len(inv))]


def rank_fraction(m):
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        for r in range(rank + 1, rows):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def snf(m):
    """Smith normal form with transforms: returns (d, u, v) with u·m·v = d.

    d is diagonal with d[i] | d[i+1]; u, v are unimodular integer matrices.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # move a smallest-magnitude nonzero entry of the trailing block to (t, t)
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the trailing block by a[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1
    d = [[a[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    return d, u, v


def elementary_divisors(m):
    """Nonzero diagonal of the Smith form (1s included)."""
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_row_basis(m):
    """Row-style Hermite basis of the integer row span (zero rows dropped).

    Pivots are positive, entries above a pivot reduced to [0, pivot).
    """
    a = [list(row) for row in m if any(row)]
    if not a:
        return []
    cols = len(a[0])
    basis = []
    for col in range(cols):
        live = [r for r in a if r[col]]
        if not live:
            continue
        # gcd all rows into one pivot row via euclidean steps
        while True:
            live = [r for r in a if r[col]]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            for r in live[1:]:
                q = r[col] // p[col]
                for j in range(cols):
                    r[j] -= q * p[j]
        piv = next((r for r in a if r[col]), None)
        if piv is None:
            continue
        if piv[col] < 0:
            for j in range(cols):
                piv[j] = -piv[j]
        a.remove(piv)
        a = [r for r in a if any(r)]
        for b in basis:
            q = b[col] // piv[col]
            if q:
                for j in range(cols):
                    b[j] -= q * piv[j]
        basis.append(piv)
    return basis


def in_row_span_z(basis, vec):
    """Is vec an integer combination of the (Hermite) basis rows?"""
    v = list(vec)
    for row in basis:
        col = next(j for j, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def inertia(m):
    """Exact Sylvester inertia (n_plus, n_minus, n_zero) of a symmetric matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    alive = list(range(n))
    pos = neg = 0
    while alive:
        piv = next((i for i in alive if a[i][i] != 0), None)
        if piv is None:
            pair = None
            for i in alive:
                for j in alive:
                    if i != j and a[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        alive.remove(piv)
        for i in alive:
            if a[i][piv]:
                f = a[i][piv] / p
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    zero = n - pos - neg
    return pos, neg, zero


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)
