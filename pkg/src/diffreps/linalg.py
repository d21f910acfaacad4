"""Exact Gaussian elimination over Scalars."""

from __future__ import annotations

from .scalar import Scalar


def rref(rows, ncols):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[Scalar.coerce(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(m)) if not m[k][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv if not x.is_zero() else x for x in m[r]]
        for k in range(len(m)):
            if k != r and not m[k][col].is_zero():
                f = m[k][col]
                m[k] = [a - f * b if not b.is_zero() else a for a, b in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of ``{x : rows * x = 0}`` as lists of Scalars."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Scalar.coerce(0)] * ncols
        v[f] = Scalar.coerce(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
