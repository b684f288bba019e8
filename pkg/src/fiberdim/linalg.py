"""Exact linear algebra over the integers and rationals.

Everything here works on small dense matrices given as sequences of
equal-length rows, uses arbitrary-precision arithmetic throughout, and is
deterministic. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def primitive(vec):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)


def lex_positive(vec):
    """The representative of {v, -v} whose first nonzero entry is positive."""
    for x in vec:
        if x > 0:
            return tuple(vec)
        if x < 0:
            return vec_neg(vec)
    return tuple(vec)


def _row_reduce(rows):
    """Reduced row echelon form over Fraction: returns (matrix, pivot columns)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows) -> int:
    return len(_row_reduce(rows)[1])


def _clear_denominators(vec):
    lcm = 1
    for x in vec:
        d = x.denominator
        lcm = lcm * d // gcd(lcm, d)
    return tuple(int(x * lcm) for x in vec)


def nullspace(rows, ncols=None):
    """Primitive integer basis of the rational kernel {x : rows @ x = 0}.

    Deterministic: one basis vector per free column, in column order, each
    scaled to a primitive integer vector with lex-positive sign.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return []
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    rref, pivots = _row_reduce(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rref[r][f]
        basis.append(lex_positive(primitive(_clear_denominators(vec))))
    return basis


def det(rows) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    mat = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in mat):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if mat[i][k] != 0), None)
            if pivot is None:
                return 0
            mat[k], mat[pivot] = mat[pivot], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def solve_lower_triangular(h, b):
    """Solve h @ x = b for lower-triangular nonsingular h; returns Fractions."""
    n = len(h)
    out = []
    for i in range(n):
        s = Fraction(b[i]) - sum(Fraction(h[i][j]) * out[j] for j in range(i))
        out.append(s / Fraction(h[i][i]))
    return tuple(out)


def solve_square(a, b):
    """Exact solution of a @ x = b for square nonsingular a, or None."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    rref, pivots = _row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(rref[i][n] for i in range(n))
