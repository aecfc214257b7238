"""Dense exact linear algebra over an arbitrary field (Fraction, RatFun, ...).

Elements must support +, -, *, / and equality-driven zero testing through the
provided `is_zero` predicate.  Everything is pure and deterministic: pivots are
always the first nonzero entry in column order.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple


def solve_affine(
    rows: Sequence[Sequence],
    rhs: Sequence,
    zero,
    one,
    is_zero: Callable[[object], bool],
) -> Tuple[Optional[list], List[list]]:
    """Solve A x = b.  Returns (particular solution or None, nullspace basis).

    `rows` is the matrix by rows; `rhs` the right-hand side.  The nullspace
    basis is that of A (independent of b).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivot_cols: List[int] = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not is_zero(aug[i][c]):
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [e / pv for e in aug[r]]
        for i in range(m):
            if i != r and not is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    # consistency: a row 0 = nonzero?
    consistent = True
    for i in range(r, m):
        if not is_zero(aug[i][n]):
            consistent = False
            break
    particular = None
    if consistent:
        particular = [zero] * n
        for i, c in enumerate(pivot_cols):
            particular[c] = aug[i][n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [zero] * n
        v[fc] = one
        for i, c in enumerate(pivot_cols):
            v[c] = zero - aug[i][fc]
        basis.append(v)
    return particular, basis


def solve_linear(rows, rhs, zero, one, is_zero) -> Optional[list]:
    """One solution of A x = b, or None if inconsistent."""
    particular, _ = solve_affine(rows, rhs, zero, one, is_zero)
    return particular


def in_span(vectors: Sequence[Sequence], target: Sequence, zero, one, is_zero) -> Optional[list]:
    """Coefficients c with sum c_i * vectors[i] = target, or None.

    `vectors` are given as a list of vectors (each a sequence of field
    elements); the linear system is over the c_i.
    """
    if not vectors:
        return [] if all(is_zero(t) for t in target) else None
    n = len(target)
    rows = [[vectors[j][i] for j in range(len(vectors))] for i in range(n)]
    return solve_linear(rows, list(target), zero, one, is_zero)
