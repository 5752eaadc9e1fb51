"""Sparse exact linear algebra and the modular rank kernels."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import dense_rank

from arcalg import _kernels
from arcalg.errors import InvalidComplex, InvalidParameters
from arcalg.fields import QQ, Field
from arcalg.linalg import ChainComplex, SparseMatrix, echelon, in_span, left_kernel, rank, rank_exact, rref

matrices = st.integers(1, 9).flatmap(
    lambda r: st.integers(1, 9).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def _csr(dense, p):
    return SparseMatrix.from_dense(dense).to_csr(p)


@given(matrices)
def test_rank_matches_dense_oracle(dense):
    mat = SparseMatrix.from_dense(dense)
    want = dense_rank(dense)
    assert rank_exact(mat) == want
    assert rank(mat) == want


@given(matrices)
def test_backends_agree(dense):
    p = _kernels.DEFAULT_PRIME
    ncols = len(dense[0])
    args = _csr(dense, p)
    a = _kernels.rank_mod_p(*args, ncols, p=p, backend="numpy")
    b = _kernels.rank_mod_p(*args, ncols, p=p, backend="numba")
    assert a == b == dense_rank(dense)


@given(matrices, st.integers(0, 5))
def test_rank_limit_caps(dense, limit):
    p = _kernels.DEFAULT_PRIME
    got = _kernels.rank_mod_p(*_csr(dense, p), len(dense[0]), p=p, limit=limit)
    assert got == min(limit, dense_rank(dense))


def test_small_prime_rank_differs_from_q():
    dense = [[2, 0], [0, 1]]
    assert rank(SparseMatrix.from_dense(dense), Field(2)) == 1
    assert rank(SparseMatrix.from_dense(dense), QQ) == 2


@given(matrices, st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation(dense, rnd):
    rows = list(dense)
    rnd.shuffle(rows)
    perm = list(range(len(dense[0])))
    rnd.shuffle(perm)
    shuffled = [[r[j] for j in perm] for r in rows]
    assert rank(SparseMatrix.from_dense(shuffled)) == rank(SparseMatrix.from_dense(dense))


@given(matrices)
def test_rref_and_kernel(dense):
    rows = SparseMatrix.from_dense(dense).rows
    red = rref(rows)
    assert len(red) == dense_rank(dense)
    for c, row in red.items():
        assert row[c] == 1
        assert all(c2 == c or c2 not in row for c2 in red)
    for r in rows:
        assert in_span(r, echelon(rows))
    ker = left_kernel(rows)
    assert len(ker) == len(rows) - dense_rank(dense)
    for x in ker:
        total = [sum(Fraction(x.get(k, 0)) * rows[k].get(j, 0) for k in range(len(rows))) for j in range(len(dense[0]))]
        assert not any(total)


def test_zero_differential_homology():
    cx = ChainComplex({0: 2, 1: 3}, {1: SparseMatrix(3, 2)})
    assert cx.homology() == {0: 2, 1: 3}


def test_identity_is_acyclic():
    cx = ChainComplex({0: 1, 1: 1}, {1: SparseMatrix.from_dense([[1]])})
    assert cx.homology() == {0: 0, 1: 0}


def test_koszul_complex():
    d2 = SparseMatrix.from_dense([[1, 1]])
    d1 = SparseMatrix.from_dense([[1], [-1]])
    cx = ChainComplex({0: 1, 1: 2, 2: 1}, {2: d2, 1: d1})
    assert cx.homology() == {0: 0, 1: 0, 2: 0}
    assert dense_rank(d2.to_dense()) + dense_rank(d1.to_dense()) == 2


def test_nonzero_square_is_rejected():
    with pytest.raises(InvalidComplex):
        ChainComplex({0: 1, 1: 1, 2: 1}, {2: SparseMatrix.from_dense([[1]]), 1: SparseMatrix.from_dense([[1]])})


def test_shape_mismatch():
    with pytest.raises(InvalidParameters):
        ChainComplex({0: 2, 1: 1}, {1: SparseMatrix.from_dense([[1]])})


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("ARCALG_DISABLE_NUMBA", "1")
    assert not _kernels.numba_enabled()
    monkeypatch.delenv("ARCALG_DISABLE_NUMBA")
    assert _kernels.numba_enabled() == _kernels.HAVE_NUMBA


def test_large_random_backends_agree():
    rng = np.random.default_rng(0)
    dense = (rng.random((120, 90)) < 0.05) * rng.integers(-2, 3, (120, 90))
    dense[:, 5] = dense[:, 3] + dense[:, 4]
    p = _kernels.DEFAULT_PRIME
    args = _csr(dense.tolist(), p)
    assert (_kernels.rank_mod_p(*args, 90, p=p, backend="numpy")
            == _kernels.rank_mod_p(*args, 90, p=p, backend="numba")
            == rank_exact(SparseMatrix.from_dense(dense.tolist())))
