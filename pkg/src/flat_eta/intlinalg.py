"""Exact linear algebra over the integers and rationals.

Matrices are plain lists of lists of Python ints (arbitrary precision), rows
first.  Nothing here ever touches floating point: ranks come from
fraction-free (Bareiss) elimination, kernels and linear Diophantine systems
from a Smith normal form with tracked unimodular transforms.
"""

from __future__ import annotations

from fractions import Fraction

IntMatrix = list  # list[list[int]], rows


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def copy_matrix(a: IntMatrix) -> IntMatrix:
    return [row[:] for row in a]


def dims(a: IntMatrix):
    return len(a), len(a[0]) if a else 0


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: IntMatrix, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scal(c, a: IntMatrix) -> IntMatrix:
    return [[c * x for x in row] for row in a]


def mat_eq(a: IntMatrix, b: IntMatrix) -> bool:
    return a == b


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    n = len(a)
    result = identity(n)
    base = copy_matrix(a)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def bareiss_rank(a: IntMatrix) -> int:
    """Rank over Q by fraction-free Gaussian elimination (Bareiss)."""
    m = copy_matrix(a)
    rows, cols = dims(m)
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def bareiss_det(a: IntMatrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    m = copy_matrix(a)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _swap_rows(m, u, i, j):
    m[i], m[j] = m[j], m[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(m, v, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_row(m, u, dst, src, q):
    # row[dst] += q * row[src]
    mdst, msrc = m[dst], m[src]
    for c in range(len(mdst)):
        mdst[c] += q * msrc[c]
    udst, usrc = u[dst], u[src]
    for c in range(len(udst)):
        udst[c] += q * usrc[c]


def _add_col(m, v, dst, src, q):
    for row in m:
        row[dst] += q * row[src]
    for row in v:
        row[dst] += q * row[src]


def smith_normal_form(a: IntMatrix):
    """Smith normal form with transforms: returns (d, u, v) with u*a*v = d.

    u (rows x rows) and v (cols x cols) are unimodular; d is diagonal with
    d[i] | d[i+1] and nonnegative entries.  Pivots are chosen with minimal
    absolute value to limit entry growth.
    """
    m = copy_matrix(a)
    rows, cols = dims(m)
    u = identity(rows)
    v = identity(cols)

    def pick_pivot(t):
        best = None
        for i in range(t, rows):
            row = m[i]
            for j in range(t, cols):
                e = row[j]
                if e != 0 and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
                    if best[0] == 1:
                        return best
        return best

    t = 0
    while t < min(rows, cols):
        best = pick_pivot(t)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(m, u, t, pi)
        if pj != t:
            _swap_cols(m, v, t, pj)
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    _add_row(m, u, i, t, -q)
                    if m[i][t] != 0:
                        # remainder is a smaller pivot candidate
                        _swap_rows(m, u, t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    _add_col(m, v, j, t, -q)
                    if m[t][j] != 0:
                        _swap_cols(m, v, t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry (divisibility chain)
            offender = None
            for i in range(t + 1, rows):
                row = m[i]
                for j in range(t + 1, cols):
                    if row[j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(m, u, t, offender, 1)
        if m[t][t] < 0:
            _add_row(m, u, t, t, -2)  # negate row t
        t += 1
    return m, u, v


def snf_diagonal(a: IntMatrix):
    """Invariant factors of a (nonzero diagonal of its Smith form)."""
    d, _, _ = smith_normal_form(a)
    out = []
    for i in range(min(dims(d))):
        if d[i][i] != 0:
            out.append(d[i][i])
    return out


def kernel_basis(a: IntMatrix):
    """Primitive basis of the integer kernel {x : a x = 0}.

    Columns of V at zero diagonal positions of the Smith form; they generate
    the kernel as a direct summand of Z^n, so each vector is primitive.
    """
    rows, cols = dims(a)
    d, _, v = smith_normal_form(a)
    basis = []
    for j in range(cols):
        dj = d[j][j] if j < min(rows, cols) else 0
        if dj == 0:
            basis.append([v[i][j] for i in range(cols)])
    return basis


def solve_integer(a: IntMatrix, b):
    """One integer solution x of a x = b, or None if none exists."""
    rows, cols = dims(a)
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, list(b))
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < min(rows, cols) else 0
        if di != 0:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
        elif c[i] != 0:
            return None
    return mat_vec(v, y)


def frac_solve(a, b):
    """Solve a x = b exactly over Q; a is square nonsingular (Fractions ok)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]
