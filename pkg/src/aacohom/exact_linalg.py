"""Exact linear algebra over the rationals.

Three workhorses, all division-safe:

* sparse fraction-free row echelon for ranks of large sparse integer
  matrices (rows are dicts, updates are the two-term integer combination
  pivot*row - entry*pivot_row followed by a gcd reduction);
* dense Bareiss elimination for determinants of integer matrices;
* dense Fraction Gauss-Jordan for solving, null spaces and RREF on the
  small systems used by the operator suite.

Matrices are lists of rows; sparse rows are dicts column -> value.
"""

from fractions import Fraction
from math import gcd


def _as_int_rows(rows):
    """Copy rows (sparse dicts or dense lists) into integer sparse dicts.

    Each row is scaled by the lcm of its denominators; scaling rows by
    nonzero constants does not change the rank.
    """
    out = []
    for row in rows:
        items = row.items() if isinstance(row, dict) else enumerate(row)
        frac = {j: Fraction(v) for j, v in items if v}
        if not frac:
            continue
        scale = 1
        for v in frac.values():
            scale = scale * v.denominator // gcd(scale, v.denominator)
        out.append({j: int(v * scale) for j, v in frac.items()})
    return out


def _gcd_reduce(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()} if g > 1 else row


def rank(rows) -> int:
    """Rank by sparse fraction-free elimination; exact for rational input."""
    pending = _as_int_rows(rows)
    pivots = {}  # column -> reduced row
    rk = 0
    for row in pending:
        row = _gcd_reduce(row)
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = row
                rk += 1
                break
            piv = pivots[col]
            a, b = piv[col], row[col]
            new = {}
            for j in set(row) | set(piv):
                v = a * row.get(j, 0) - b * piv.get(j, 0)
                if v:
                    new[j] = v
            row = _gcd_reduce(new)
    return rk


def det_bareiss(matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_sparse(rows) -> Fraction:
    """Determinant via sparse Fraction elimination (pivot product).

    Suited to block-diagonal matrices: only rows sharing the pivot column
    are touched, so work stays inside the blocks.
    """
    n = len(rows)
    live = []
    for row in rows:
        items = row.items() if isinstance(row, dict) else enumerate(row)
        live.append({j: Fraction(v) for j, v in items if v})
    det = Fraction(1)
    sign = 1
    used = [False] * n
    for col in range(n):
        pick = None
        for i in range(n):
            if not used[i] and col in live[i]:
                if pick is None or len(live[i]) < len(live[pick]):
                    pick = i
        if pick is None:
            return Fraction(0)
        used[pick] = True
        # row-swap parity: count the live rows skipped above the pick
        skipped = sum(1 for i in range(pick) if not used[i])
        if skipped & 1:
            sign = -sign
        pivot_row = live[pick]
        pivot = pivot_row[col]
        det *= pivot
        for i in range(n):
            if used[i] or col not in live[i]:
                continue
            factor = live[i][col] / pivot
            new = dict(live[i])
            for j, v in pivot_row.items():
                w = new.get(j, Fraction(0)) - factor * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            live[i] = new
    return sign * det


def rref(matrix):
    """Reduced row echelon form over Fraction.

    Returns (rows, pivot_columns); input is not modified.
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix, ncols=None):
    """Basis of the right null space of ``matrix`` (A x = 0), as row vectors."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve_particular(matrix, rhs):
    """One solution x of A x = rhs over Fraction, or None if inconsistent.

    Free variables are set to zero.
    """
    if not matrix:
        return [] if not any(rhs) else None
    ncols = len(matrix[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[p] = rows[r][ncols]
    return x


def span_rank(vectors) -> int:
    return rank(vectors)


def spans_equal(vectors_a, vectors_b) -> bool:
    """Exact equality of the spans of two lists of rational row vectors."""
    ra = rank(vectors_a)
    rb = rank(vectors_b)
    if ra != rb:
        return False
    return rank(list(vectors_a) + list(vectors_b)) == ra


def matmul_int(a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError("inner dimensions differ")
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            v = arow[k]
            if v:
                brow = b[k]
                for j in range(cols):
                    orow[j] += v * brow[j]
    return out


def identity_int(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def is_zero_matrix(m) -> bool:
    return all(not v for row in m for v in row)
