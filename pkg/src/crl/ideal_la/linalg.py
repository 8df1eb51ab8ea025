"""Exact integer linear algebra: fraction-free Gauss-Jordan and a mod-p pre-pass."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

# primes below 2**31, so products of residues fit in int64
DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587)


def ff_rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan elimination over the integers.

    Returns ``(R, pivots, D)`` where the nonzero rows of ``R`` are in reduced
    echelon form, every pivot entry equals ``D`` (the last pivot minor), and
    ``R / D`` is the rational RREF.  Each elimination step divides exactly by
    the previous pivot, so intermediate entries stay bounded by minors.
    """
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    prev = 1
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        p = prow[c]
        for i in range(len(work)):
            if i == rank:
                continue
            row = work[i]
            a = row[c]
            if a:
                work[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                work[i] = [p * x // prev for x in row]
        pivots.append(c)
        prev = p
        rank += 1
    # rows past rank are zero by construction
    return work[:rank], pivots, prev


def rank_exact(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(ff_rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the right kernel, one vector per free column.

    The basis is canonical: vector k has a positive entry at the k-th free
    column and zeros at the other free columns, so it does not depend on row
    order or on how the input was scheduled.
    """
    R, pivots, D = ff_rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = D
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        g = 0
        for x in v:
            g = math.gcd(g, x)
        basis.append([x // g for x in v])
    return basis


def pivot_columns_mod_p(mat: np.ndarray, p: int) -> list[int]:
    """Leftmost pivot columns of an int64 matrix reduced modulo ``p``."""
    A = np.array(mat, dtype=np.int64) % p
    nr, nc = A.shape
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            idx = hit + r + 1
            A[idx] = (A[idx] - np.outer(A[idx, c], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def reduce_mod(rows: Sequence[Sequence[int]], p: int) -> np.ndarray:
    return np.array([[x % p for x in row] for row in rows], dtype=np.int64).reshape(
        len(rows), len(rows[0]) if rows else 0)


def independent_rows_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[int]:
    """Indices of a maximal set of rows independent modulo ``p`` (hence over Q)."""
    if not rows:
        return []
    return pivot_columns_mod_p(reduce_mod(rows, p).T, p)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return len(pivot_columns_mod_p(reduce_mod(rows, p), p))


def apply_rows(rows: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """True iff every row is orthogonal to ``vec``."""
    nz = [(k, x) for k, x in enumerate(vec) if x]
    return all(sum(row[k] * x for k, x in nz) == 0 for row in rows)


def certified_nullspace(rows: Sequence[Sequence[int]], ncols: int,
                        primes: Sequence[int] = DEFAULT_PRIMES) -> tuple[list[list[int]], dict]:
    """Kernel via a modular row selection followed by exact confirmation.

    Rows independent mod p are independent over Q, so the exact kernel of
    the selected rows contains the true kernel and has the right dimension
    exactly when it is annihilated by every row.  That last check is done
    in exact arithmetic; if it fails the full exact elimination is used.
    """
    info = {"ncols": ncols, "nrows": len(rows), "modular_ranks": {}, "method": "exact"}
    if not rows or ncols == 0:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)], \
            {**info, "rank": 0, "certified": True}
    best: list[int] | None = None
    for p in primes:
        sel = independent_rows_mod_p(rows, p)
        info["modular_ranks"][str(p)] = len(sel)
        if best is None or len(sel) > len(best):
            best = sel
    if best is not None and primes:
        basis = nullspace([rows[i] for i in best], ncols)
        if all(apply_rows(rows, v) for v in basis):
            info.update(method="modular+exact", rank=ncols - len(basis), certified=True)
            return basis, info
    basis = nullspace(rows, ncols)
    info.update(rank=ncols - len(basis), certified=True)
    return basis, info
