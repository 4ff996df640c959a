"""Exact linear algebra over rationals: elimination, nullspaces, span tests.

All routines work on plain lists of :class:`fractions.Fraction` and never
normalize by square roots, so results are bit-exact.
"""

from __future__ import annotations

from fractions import Fraction

Vector = list
Matrix = list


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot column indices)."""
    mat = [list(row) for row in rows]
    if not mat:
        return [], []
    n_cols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][c]
        if inv != 1:
            mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Matrix, n_cols: int) -> list[Vector]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


def span_contains(rows: Matrix, v: Vector) -> bool:
    """True iff v lies in the row span of rows (exact)."""
    base = [list(r) for r in rows]
    return rank(base) == rank(base + [list(v)])


def span_equal(rows_a: Matrix, rows_b: Matrix) -> bool:
    """True iff the two row sets span the same subspace (exact)."""
    a = [list(r) for r in rows_a]
    b = [list(r) for r in rows_b]
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    return rank(a + b) == ra


def spectral_norm(mat: list[list[float]], iterations: int = 400) -> float:
    """Largest singular value of a small dense float matrix, by power iteration
    on the Gram matrix. Deterministic start vector."""
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    if n_rows == 0 or n_cols == 0:
        return 0.0
    # Gram on the smaller side.
    if n_cols <= n_rows:
        gram = [
            [sum(mat[i][a] * mat[i][b] for i in range(n_rows)) for b in range(n_cols)]
            for a in range(n_cols)
        ]
    else:
        gram = [
            [sum(mat[a][j] * mat[b][j] for j in range(n_cols)) for b in range(n_rows)]
            for a in range(n_rows)
        ]
    dim = len(gram)
    if all(gram[i][j] == 0.0 for i in range(dim) for j in range(dim)):
        return 0.0
    # Index-skewed start breaks symmetry without randomness.
    v = [1.0 + 1e-3 * i for i in range(dim)]
    norm = sum(x * x for x in v) ** 0.5
    v = [x / norm for x in v]
    lam = 0.0
    for _ in range(iterations):
        w = [sum(gram[i][j] * v[j] for j in range(dim)) for i in range(dim)]
        norm = sum(x * x for x in w) ** 0.5
        if norm == 0.0:
            return 0.0
        v = [x / norm for x in w]
        new_lam = sum(v[i] * sum(gram[i][j] * v[j] for j in range(dim)) for i in range(dim))
        if abs(new_lam - lam) <= 1e-15 * max(1.0, abs(new_lam)):
            lam = new_lam
            break
        lam = new_lam
    return max(lam, 0.0) ** 0.5
