"""Exact sparse linear algebra over F_p."""

import random

import numpy as np
import pytest

from hochhom.fplinear import (
    CompositionError,
    FpContext,
    FpScalar,
    SparseFpMatrix,
    homology_dim,
)


def dense_rank_modp(rows, p):
    """Independent oracle: dense Gaussian elimination on numpy int arrays."""
    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if a[r, col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), p - 2, p) if p > 2 else int(a[rank, col])
        a[rank] = (a[rank] * inv) % p
        for r in range(nrows):
            if r != rank and a[r, col] % p:
                a[r] = (a[r] - a[r, col] * a[rank]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def test_scalar_field_axioms_exhaustive():
    for p in (2, 3, 5, 7):
        ctx = FpContext(p)
        elems = [ctx.scalar(v) for v in range(p)]
        zero, one = ctx.scalar(0), ctx.scalar(1)
        for a in elems:
            assert a + zero == a
            assert a * one == a
            assert a + (-a) == zero
            if a != zero:
                assert a * a.inverse() == one
                assert (one / a) * a == one
            for b in elems:
                assert a + b == b + a
                assert a * b == b * a
                for c in elems:
                    assert (a + b) + c == a + (b + c)
                    assert (a * b) * c == a * (b * c)
                    assert a * (b + c) == a * b + a * c


def test_scalar_normalization_and_int():
    a = FpScalar(7, 5)
    assert a.value == 2
    assert int(FpScalar(-1, 5)) == 4
    assert bool(FpScalar(5, 5)) is False
    assert FpScalar(3, 5) - FpScalar(4, 5) == FpScalar(4, 5)


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        FpScalar(1, 3) + FpScalar(1, 5)
    with pytest.raises(ValueError):
        FpScalar(2, 3) * FpScalar(2, 7)
    m3 = SparseFpMatrix.identity(3, 2)
    m5 = SparseFpMatrix.identity(5, 2)
    with pytest.raises(ValueError):
        m3.compose(m5)


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        FpContext(6)
    with pytest.raises(ValueError):
        FpScalar(1, 4)
    with pytest.raises(ValueError):
        SparseFpMatrix(9, 2, 2)


def test_matrix_construction():
    m = SparseFpMatrix.from_rows(3, [[1, 2], [2, 1]])
    assert (m.rows, m.cols) == (2, 2)
    assert m.nnz == 4
    assert int(m.entry(0, 1)) == 2
    z = SparseFpMatrix.zero(5, 3, 4)
    assert z.is_zero() and z.nnz == 0
    eye = SparseFpMatrix.identity(2, 3)
    assert eye.rank() == 3
    # entries reduced mod p, zeros dropped
    m2 = SparseFpMatrix.from_rows(3, [[3, 4], [0, 6]])
    assert m2.nnz == 1 and int(m2.entry(0, 1)) == 1
    with pytest.raises(ValueError):
        SparseFpMatrix(3, 2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(IndexError):
        SparseFpMatrix(3, 2, 2, [(2, 0, 1)])


def test_rank_small_examples():
    # [[1,2],[2,1]] over F_3: second row is twice the first
    assert SparseFpMatrix.from_rows(3, [[1, 2], [2, 1]]).rank() == 1
    # same matrix over F_5 is invertible
    assert SparseFpMatrix.from_rows(5, [[1, 2], [2, 1]]).rank() == 2
    assert SparseFpMatrix.from_rows(2, [[1, 1], [1, 1]]).rank() == 1
    assert SparseFpMatrix.zero(7, 4, 5).rank() == 0
    m = SparseFpMatrix.from_rows(2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert m.rank() == 2
    assert m.kernel_dim() == 1


def test_rank_against_dense_oracle():
    rng = random.Random(20240)
    for p in (2, 3, 5):
        for _ in range(60):
            nr = rng.randint(1, 7)
            nc = rng.randint(1, 7)
            rows = [[rng.randint(0, p - 1) if rng.random() < 0.6 else 0
                     for _ in range(nc)] for _ in range(nr)]
            m = SparseFpMatrix.from_rows(p, rows)
            assert m.rank() == dense_rank_modp(rows, p), (p, rows)


def test_rank_invariances():
    rng = random.Random(7)
    for _ in range(25):
        p = rng.choice((2, 3, 5))
        nr, nc = rng.randint(2, 6), rng.randint(2, 6)
        rows = [[rng.randint(0, p - 1) for _ in range(nc)] for _ in range(nr)]
        m = SparseFpMatrix.from_rows(p, rows)
        perm = list(range(nr))
        rng.shuffle(perm)
        shuffled = SparseFpMatrix.from_rows(p, [rows[i] for i in perm])
        assert m.rank() == shuffled.rank()
        assert m.rank() == m.transpose().rank()
        assert m.kernel_dim() == nc - m.rank()


def test_compose():
    a = SparseFpMatrix.from_rows(5, [[1, 2], [3, 4]])
    b = SparseFpMatrix.from_rows(5, [[0, 1], [1, 0]])
    ab = a.compose(b)
    assert int(ab.entry(0, 0)) == 2 and int(ab.entry(0, 1)) == 1
    assert int(ab.entry(1, 0)) == 4 and int(ab.entry(1, 1)) == 3
    with pytest.raises(ValueError):
        a.compose(SparseFpMatrix.zero(5, 3, 2))


def test_homology_dim_exact_sequence():
    # F_2: d_in = [1 1]^T, d_out = [1 1]; middle dim 2, homology 0
    d_in = SparseFpMatrix.from_rows(2, [[1], [1]])
    d_out = SparseFpMatrix.from_rows(2, [[1, 1]])
    assert homology_dim(d_in, d_out) == 0
    # zero maps: homology = full middle dimension
    z_in = SparseFpMatrix.zero(3, 4, 2)
    z_out = SparseFpMatrix.zero(3, 5, 4)
    assert homology_dim(z_in, z_out) == 4


def test_homology_dim_rejects_noncomplex():
    d_in = SparseFpMatrix.from_rows(3, [[1], [0]])
    d_out = SparseFpMatrix.from_rows(3, [[1, 0]])
    with pytest.raises(CompositionError):
        homology_dim(d_in, d_out)  # d_out o d_in = [1] != 0
    with pytest.raises(ValueError):
        homology_dim(SparseFpMatrix.zero(3, 4, 2),
                     SparseFpMatrix.zero(3, 5, 3))


def test_homology_dim_random_complexes():
    # build complexes as d_in = A*B, d_out = C with C*A*B = 0 by killing C*A
    rng = random.Random(99)
    for _ in range(40):
        p = rng.choice((2, 3))
        mid = rng.randint(2, 5)
        nc = rng.randint(1, 4)
        d_in_rows = [[rng.randint(0, p - 1) for _ in range(nc)]
                     for _ in range(mid)]
        d_in = SparseFpMatrix.from_rows(p, d_in_rows)
        # d_out rows drawn from the left kernel of d_in, brute force over F_p^mid
        kernel_rows = []
        for vec in _all_vectors(p, mid):
            if all(sum(vec[r] * d_in_rows[r][c] for r in range(mid)) % p == 0
                   for c in range(d_in.cols)):
                kernel_rows.append(list(vec))
        if not kernel_rows:
            kernel_rows = [[0] * mid]
        d_out = SparseFpMatrix.from_rows(p, kernel_rows)
        h = homology_dim(d_in, d_out)
        assert h == d_out.kernel_dim() - d_in.rank()
        assert 0 <= h <= mid


def _all_vectors(p, n):
    if n == 0:
        yield ()
        return
    for rest in _all_vectors(p, n - 1):
        for v in range(p):
            yield (v,) + rest


def test_matrix_equality_and_items():
    a = SparseFpMatrix.from_rows(3, [[1, 0], [0, 2]])
    b = SparseFpMatrix(3, 2, 2, [(1, 1, 2), (0, 0, 4)])
    assert a == b
    assert list(a.items()) == [((0, 0), 1), ((1, 1), 2)]
