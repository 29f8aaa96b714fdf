"""Exact-integer Hermite normal form and lattice splitting."""

import numpy as np
import pytest

from linelift.lattice import row_hnf, split_lattice


def _det_pm1(U):
    return abs(round(float(np.linalg.det(U.astype(float))))) == 1


@pytest.mark.parametrize(
    "matrix",
    [
        [[1, 0]],
        [[1, 0], [0, 1]],
        [[2, 4], [1, 3]],
        [[6, 4], [3, 2]],
        [[0, 0], [0, 0]],
        [[2, 0], [0, 3], [2, 3]],
        [[5]],
    ],
)
def test_hnf_decomposition(matrix):
    C = np.array(matrix, dtype=np.int64)
    H, U, rank = row_hnf(C)
    assert np.array_equal(U @ C, H)
    assert _det_pm1(U)
    # zero rows at the bottom, pivots positive and strictly right-moving
    pivots = []
    for r in range(rank):
        nz = np.nonzero(H[r])[0]
        assert nz.size > 0
        assert H[r][nz[0]] > 0
        pivots.append(nz[0])
    assert pivots == sorted(pivots)
    assert not H[rank:].any()


def test_hnf_random_matches_float_rank(rng):
    for _ in range(25):
        k = int(rng.integers(1, 5))
        m = int(rng.integers(0, 5))
        C = rng.integers(-6, 7, size=(k, m))
        H, U, rank = row_hnf(C)
        assert np.array_equal(U @ C, H)
        assert _det_pm1(U)
        assert rank == np.linalg.matrix_rank(C.astype(float)) if C.size else rank == 0


def test_split_kernel_and_complement(rng):
    for _ in range(25):
        k = int(rng.integers(1, 5))
        m = int(rng.integers(0, 4))
        C = rng.integers(-5, 6, size=(k, m))
        split = split_lattice(C)
        # kernel rows annihilate C
        if split.kernel_basis.size and C.size:
            assert not (split.kernel_basis @ C).any()
        # complement + kernel rows form a Z-basis of Z^k
        full = np.vstack([split.complement_basis, split.kernel_basis])
        assert full.shape == (k, k)
        assert _det_pm1(full)
        # complement rows map to independent image vectors
        if split.rank and C.size:
            img = (split.complement_basis @ C).astype(float)
            assert np.linalg.matrix_rank(img) == split.rank


def test_split_empty_columns():
    split = split_lattice(np.zeros((3, 0), dtype=np.int64))
    assert split.rank == 0
    assert np.array_equal(split.kernel_basis, np.eye(3, dtype=np.int64))


def test_split_saturated_kernel():
    # gamma @ C = 0 over Z only for even combinations unless saturated:
    # C = [[2], [4]] has kernel spanned by (2, -1), primitive
    split = split_lattice(np.array([[2], [4]]))
    assert split.rank == 1
    kb = split.kernel_basis
    assert kb.shape == (1, 2)
    assert abs(kb[0] @ np.array([2, 4])) == 0
    assert np.gcd(abs(int(kb[0][0])), abs(int(kb[0][1]))) == 1
