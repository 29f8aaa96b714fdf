"""Integer row Hermite normal form and lattice kernel/complement splitting.

Small exact-integer routines (Python ints, no overflow) for the orbit-class
matrix: given an integer matrix C whose row j is the homology class of the
j-th lattice generator's orbits, split the acting lattice Z^k into the kernel
sublattice and a deterministic complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Array = np.ndarray


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return g, x, y


def row_hnf(matrix: Array) -> tuple[Array, Array, int]:
    """Row-style Hermite normal form H = U @ C with U unimodular.

    Returns (H, U, rank).  Pivots are positive, entries above a pivot are
    reduced to [0, pivot), and zero rows are pushed to the bottom, so the
    result is a deterministic function of C.
    """
    C = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object)]
    k = len(C)
    m = len(C[0]) if k else 0
    U = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    row = 0
    for col in range(m):
        pivot = None
        for r in range(row, k):
            if C[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != row:
            C[row], C[pivot] = C[pivot], C[row]
            U[row], U[pivot] = U[pivot], U[row]
        for r in range(row + 1, k):
            while C[r][col] != 0:
                if abs(C[r][col]) >= abs(C[row][col]):
                    q = C[r][col] // C[row][col]
                    C[r] = [a - q * b for a, b in zip(C[r], C[row])]
                    U[r] = [a - q * b for a, b in zip(U[r], U[row])]
                else:
                    C[row], C[r] = C[r], C[row]
                    U[row], U[r] = U[r], U[row]
        if C[row][col] < 0:
            C[row] = [-a for a in C[row]]
            U[row] = [-a for a in U[row]]
        for r in range(row):
            q = C[r][col] // C[row][col]
            if q:
                C[r] = [a - q * b for a, b in zip(C[r], C[row])]
                U[r] = [a - q * b for a, b in zip(U[r], U[row])]
        row += 1
        if row == k:
            break
    H = np.array(C, dtype=np.int64).reshape(k, m)
    Umat = np.array(U, dtype=np.int64).reshape(k, k)
    return H, Umat, row


@dataclass(frozen=True)
class LatticeSplit:
    """Z^k = complement (rank rows) + kernel (k - rank rows)."""

    rank: int
    complement_basis: Array  # (rank, k) integer rows
    kernel_basis: Array  # (k - rank, k) integer rows
    hnf: Array
    unimodular: Array


def split_lattice(matrix: Array) -> LatticeSplit:
    """Split Z^k by the integer row map gamma -> gamma @ C.

    The kernel rows span exactly {gamma : gamma @ C == 0} (the split is
    saturated because nonzero HNF rows are linearly independent), and the
    complement rows map to a basis of the image.
    """
    C = np.asarray(matrix)
    k = C.shape[0]
    if C.size == 0:
        return LatticeSplit(
            rank=0,
            complement_basis=np.zeros((0, k), dtype=np.int64),
            kernel_basis=np.eye(k, dtype=np.int64),
            hnf=np.zeros((k, 0), dtype=np.int64),
            unimodular=np.eye(k, dtype=np.int64),
        )
    H, U, rank = row_hnf(C)
    return LatticeSplit(
        rank=rank,
        complement_basis=U[:rank].copy(),
        kernel_basis=U[rank:].copy(),
        hnf=H,
        unimodular=U,
    )
