"""Exact row reduction over the rationals.

Rows are lists of :class:`fractions.Fraction` (ints are accepted and
promoted).  Everything here is dense; the callers keep dimensions small.
"""
from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Return ``(reduced_rows, pivot_columns)`` with zero rows dropped."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of ``{x : A x = 0}`` for the matrix whose rows are given."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def same_span(rows_a, rows_b, ncols):
    """True when two families of vectors span the same subspace."""
    ra = rref(rows_a)[0] if rows_a else []
    rb = rref(rows_b)[0] if rows_b else []
    pad = lambda rs: [list(r) + [Fraction(0)] * (ncols - len(r)) for r in rs]
    return pad(ra) == pad(rb)
