"""Exact rational Gaussian elimination: RREF, rank, nullspace, linear solve.

Matrices are lists of row lists over `fractions.Fraction`.  Output is
deterministic: pivots are chosen left to right with the first nonzero entry,
and nullspace vectors set each free variable to 1 in column order.
"""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Return (reduced rows, pivot column list).  Zero rows are dropped."""
    m = [list(r) for r in rows]
    pivots = []
    piv_r = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        hit = None
        for r in range(piv_r, len(m)):
            if m[r][col] != 0:
                hit = r
                break
        if hit is None:
            continue
        m[piv_r], m[hit] = m[hit], m[piv_r]
        inv = Fraction(1, 1) / m[piv_r][col]
        m[piv_r] = [v * inv for v in m[piv_r]]
        for r in range(len(m)):
            if r != piv_r and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[piv_r])]
        pivots.append(col)
        piv_r += 1
        if piv_r == len(m):
            break
    return m[:piv_r], pivots


def rank(rows) -> int:
    reduced, pivots = rref(rows)
    return len(pivots)


def nullspace(rows, n_cols):
    """Canonical nullspace basis: one vector per free column, that entry 1."""
    if not rows:
        reduced, pivots = [], []
    else:
        reduced, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(tuple(vec))
    return basis


def solve(rows, rhs):
    """One exact solution of ``rows @ x = rhs`` with free variables 0.

    Returns None when the system is inconsistent.
    """
    if not rows:
        return ()
    n_cols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    for r, p in zip(reduced, pivots):
        if p == n_cols:  # pivot in the augmented column
            return None
    x = [Fraction(0)] * n_cols
    for r, p in zip(reduced, pivots):
        x[p] = r[n_cols]
    return tuple(x)


def solve_in_span(vectors, target):
    """Coefficients c with sum(c_i * vectors[i]) == target, or None."""
    if not vectors:
        return () if all(v == 0 for v in target) else None
    n = len(target)
    rows = [[Fraction(vec[i]) for vec in vectors] for i in range(n)]
    return solve(rows, [Fraction(t) for t in target])
