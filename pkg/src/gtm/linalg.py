"""Exact dense matrices over a field, with deterministic elimination.

Matrices are tuples of row tuples.  A matrix with zero rows is ``()``,
which loses the column count; operations that could meet such a matrix
take the count explicitly.  Pivoting is always leftmost-nonzero so that
every computed basis is reproducible.
"""

from __future__ import annotations


def zeros(field, rows: int, cols: int):
    return tuple(tuple(field.zero for _ in range(cols)) for _ in range(rows))


def identity(field, n: int):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n))
        for i in range(n)
    )


def mat_shape(m, cols_if_empty: int | None = None):
    if m:
        return len(m), len(m[0])
    if cols_if_empty is None:
        raise ValueError("column count of an empty matrix is ambiguous")
    return 0, cols_if_empty


def mat_mul(field, a, b, cols_if_empty: int | None = None):
    """Product a @ b; cols_if_empty gives b's width when b has no rows."""
    if not a:
        return ()
    k = len(a[0])
    if k != len(b):
        raise ValueError(f"shape mismatch: {k} columns vs {len(b)} rows")
    if b:
        cols = len(b[0])
    else:
        if cols_if_empty is None:
            raise ValueError("need explicit column count for empty factor")
        cols = cols_if_empty
    out = []
    for row in a:
        acc = [field.zero] * cols
        for t, x in enumerate(row):
            if x == field.zero:
                continue
            brow = b[t]
            for j in range(cols):
                acc[j] = field.add(acc[j], field.mul(x, brow[j]))
        out.append(tuple(acc))
    return tuple(out)


def mat_add(field, a, b):
    return tuple(
        tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(field, a, b):
    return tuple(
        tuple(field.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(field, c, a):
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)


def mat_neg(field, a):
    return tuple(tuple(field.neg(x) for x in row) for row in a)


def is_zero_matrix(field, a) -> bool:
    return all(x == field.zero for row in a for x in row)


def trace(field, a):
    t = field.zero
    for i, row in enumerate(a):
        t = field.add(t, row[i])
    return t


def _eliminate(field, m, ncols):
    """Reduced row echelon form with leftmost pivots.

    Returns (rows, pivot_columns); rows are mutable lists.
    """
    rows = [list(r) for r in m]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != field.zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != field.zero:
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y))
                    for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(field, m, ncols: int | None = None):
    rows_n, cols_n = mat_shape(m, ncols)
    rows, pivots = _eliminate(field, m, cols_n)
    return tuple(tuple(r) for r in rows), tuple(pivots)


def rank(field, m, ncols: int | None = None) -> int:
    rows_n, cols_n = mat_shape(m, ncols)
    _, pivots = _eliminate(field, m, cols_n)
    return len(pivots)


def kernel_basis(field, m, ncols: int):
    """Basis of the right kernel of m, one vector per free column.

    The basis vector for free column f has entry 1 there and 0 at every
    other free column, so the output is canonical for a fixed column
    order.
    """
    rows, pivots = _eliminate(field, m, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for pr, pc in enumerate(pivots):
            v[pc] = field.neg(rows[pr][fc])
        basis.append(tuple(v))
    return basis
