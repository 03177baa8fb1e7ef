"""Exact linear algebra over the rationals: rank, reduced row echelon form,
and nullspace bases.  No floating point anywhere.

Pivot selection prefers the nonzero candidate of minimal bit size to limit
coefficient swell during elimination.
"""

from __future__ import annotations

from .exactalg import QQ, rat_bits


def _pivot_row(rows, start: int, col: int):
    """Index of the best pivot row for ``col`` at or below ``start``, or None."""
    best = None
    best_bits = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if not v:
            continue
        b = rat_bits(v)
        if best is None or b < best_bits:
            best, best_bits = r, b
    return best


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form (in place on a copy).

    Returns (reduced_rows, pivot_cols).  Zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    if ncols is None:
        ncols = len(rows[0])
    pivot_cols: list[int] = []
    rank = 0
    for col in range(ncols):
        r = _pivot_row(rows, rank, col)
        if r is None:
            continue
        rows[rank], rows[r] = rows[r], rows[rank]
        pv = rows[rank][col]
        if pv != 1:
            rows[rank] = [v / pv for v in rows[rank]]
        for rr in range(len(rows)):
            if rr == rank:
                continue
            f = rows[rr][col]
            if f:
                row_p = rows[rank]
                rows[rr] = [v - f * w for v, w in zip(rows[rr], row_p)]
        pivot_cols.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivot_cols


def rank(rows, ncols: int | None = None) -> int:
    """Exact rank via fraction-preserving Gaussian elimination."""
    return len(rref(rows, ncols)[0])


def nullspace(rows, ncols: int):
    """Basis of the right nullspace of the matrix, one vector per free column.

    The basis is canonical for the given column order: vector k has value 1 at
    its free column and zeros at every other free column, which is the reduced
    echelon normalization with the leading unknown scaled to 1.
    """
    red, pivot_cols = rref(rows, ncols)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [QQ(0)] * ncols
        vec[fc] = QQ(1)
        for prow, pcol in zip(red, pivot_cols):
            vec[pcol] = -prow[fc]
        basis.append(vec)
    return basis


def solve_affine(rows, rhs):
    """One exact solution of A x = b plus a nullspace basis of A.

    Returns (particular, basis) or (None, basis) when inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None, nullspace(rows, ncols)
    particular = [QQ(0)] * ncols
    for prow, pcol in zip(red, pivots):
        particular[pcol] = prow[ncols]
    return particular, nullspace(rows, ncols)
