from __future__ import annotations

import random

import numpy as np
import pytest

from prymvol import lattice
from prymvol.errors import PrymError

M = lattice.int_matrix


def is_unimodular(u: np.ndarray) -> bool:
    return abs(lattice.det_int(u)) == 1


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -6, hi: int = 6) -> np.ndarray:
    return M([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


class TestSnf:
    def test_diagonal_input(self):
        assert lattice.snf(M([[2, 0], [0, 4]])).diagonal == [2, 4]

    def test_hand_example(self):
        # gcd of entries is 2 and |det| = 8, so the invariants are 2 and 4
        assert lattice.snf(M([[2, 4], [6, 8]])).diagonal == [2, 4]

    def test_unimodular(self):
        assert lattice.snf(M([[2, 1], [1, 1]])).diagonal == [1, 1]

    def test_divisibility_fix(self):
        assert lattice.snf(M([[2, 0], [0, 3]])).diagonal == [1, 6]

    def test_rectangular_and_zero(self):
        assert lattice.snf(M([[0, 0, 0]])).diagonal == [0]
        assert lattice.snf(M([[1, 1], [1, 1], [0, 2]])).diagonal == [1, 2]

    @pytest.mark.parametrize("seed", range(25))
    def test_random(self, seed):
        rng = random.Random(seed)
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        r = lattice.snf(m)
        assert (r.u.dot(m).dot(r.v) == r.d).all()
        assert is_unimodular(r.u) and is_unimodular(r.v)
        diag = r.diagonal
        assert all(x >= 0 for x in diag)
        nonzero = [x for x in diag if x]
        assert diag[:len(nonzero)] == nonzero
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        off = r.d.copy()
        for i in range(min(off.shape)):
            off[i, i] = 0
        assert not off.any()


class TestHnfKernel:
    @pytest.mark.parametrize("seed", range(15))
    def test_hnf_transform(self, seed):
        rng = random.Random(100 + seed)
        a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h, t = lattice.hnf_with_transform(a)
        assert (t.dot(a) == h).all() and is_unimodular(t)

    def test_zero_matrix_kernel_is_identity(self):
        k = lattice.kernel_basis(M([[0, 0], [0, 0]]))
        assert lattice.to_lists(k) == [[1, 0], [0, 1]]

    def test_kernel_of_sum(self):
        k = lattice.kernel_basis(M([[1, 1]]))
        assert k.shape == (2, 1) and abs(k[0, 0]) == 1 and k[0, 0] == -k[1, 0]

    @pytest.mark.parametrize("seed", range(15))
    def test_kernel_random(self, seed):
        rng = random.Random(200 + seed)
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(2, 6), -3, 3)
        k = lattice.kernel_basis(m)
        assert k.shape[1] == m.shape[1] - lattice.rank(m)
        if k.shape[1]:
            assert not m.dot(k).any()
            # saturated: the kernel basis extends to a unimodular matrix, so its SNF is all ones
            assert lattice.snf(k).diagonal == [1] * k.shape[1]

    def test_solve(self):
        b = M([[1, 0], [1, 1], [0, 1]])
        z = M([[2], [5], [3]])
        assert lattice.solve_rational(b, z) == [[2], [3]]
        with pytest.raises(PrymError):
            lattice.solve_rational(b, M([[1], [0], [0]]))


def test_det_int():
    assert lattice.det_int(M([[2, 4], [6, 8]])) == -8
    assert lattice.det_int(M([[0, 1], [1, 0]])) == -1
    assert lattice.det_int(M([[1, 2], [2, 4]])) == 0
    assert lattice.det_int(np.zeros((0, 0), dtype=object)) == 1
