"""Bimodules, tensor products and relative bar Hochschild homology."""

import pytest

from arcalg.algebra import ArcAlgebra
from arcalg.braids import tangle_bimodule
from arcalg.errors import TruncationError
from arcalg.fields import Field
from arcalg.hochschild import (
    bar_chains,
    check_bar_square_zero,
    diagonal_bimodule,
    relative_bar_hochschild,
    tensor_over_A,
)
from arcalg.linalg import SparseMatrix, rank


def _is_iso(T, M, image):
    """``image(t)`` is a vector of M; check bijectivity and both actions."""
    A = M.algebra
    if T.dim != M.dim:
        return False
    rows = [image(t) for t in range(T.dim)]
    if rank(SparseMatrix(T.dim, M.dim, [dict(r) for r in rows])) != M.dim:
        return False

    def push(vec):
        out = {}
        for t, c in vec.items():
            for k, v in rows[t].items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def left_m(i, vec):
        out = {}
        for k, c in vec.items():
            for k2, v in M.left(i, k).items():
                out[k2] = out.get(k2, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def right_m(vec, i):
        out = {}
        for k, c in vec.items():
            for k2, v in M.right(k, i).items():
                out[k2] = out.get(k2, 0) + c * v
        return {k: v for k, v in out.items() if v}

    for t in range(T.dim):
        for i in range(A.dim):
            if push(T.left(i, t)) != left_m(i, rows[t]) or push(T.right(t, i)) != right_m(rows[t], i):
                return False
    return True


@pytest.mark.parametrize("n,m,want", [(1, 2, [2, 0, 0, 0]), (1, 3, [3, 0, 0, 0]), (0, 2, [1, 0, 0, 0])])
def test_hh_of_diagonal(n, m, want):
    A = ArcAlgebra.K(n, m)
    res = relative_bar_hochschild(A, diagonal_bimodule(A), 4)
    assert res.rank_list() == want
    assert res.graded[0] == {0: want[0]}
    assert res.certified_max == 3


def test_hh_k24():
    A = ArcAlgebra.K(2, 4)
    assert relative_bar_hochschild(A, diagonal_bimodule(A), 3).rank_list() == [6, 0, 0]


def test_hh_over_finite_field():
    A = ArcAlgebra.K(1, 2, Field.parse("3"))
    assert relative_bar_hochschild(A, diagonal_bimodule(A), 3).rank_list() == [2, 0, 0]


def test_depth_zero_is_truncation_error():
    A = ArcAlgebra.K(1, 2)
    with pytest.raises(TruncationError):
        relative_bar_hochschild(A, diagonal_bimodule(A), 0)


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 4)])
def test_bar_square_zero(n, m):
    A = ArcAlgebra.K(n, m)
    assert check_bar_square_zero(A, diagonal_bimodule(A), 3)


def test_bar_chains_are_composable():
    A = ArcAlgebra.K(1, 3)
    for p, chains in bar_chains(A, diagonal_bimodule(A), 3).items():
        for ch in chains:
            assert len(ch) == p + 1


def test_diagonal_axioms():
    A = ArcAlgebra.K(1, 3)
    diagonal_bimodule(A).check_axioms()


def test_tensor_unit():
    M = tangle_bimodule(1, 2, (0,))
    A = M.algebra
    Dl = diagonal_bimodule(A)
    left = tensor_over_A(Dl, M)
    assert _is_iso(left, M, lambda t: M.left(A.index[left.keys[t][0]], M.index[left.keys[t][1]]))
    right = tensor_over_A(M, Dl)
    assert _is_iso(right, M, lambda t: M.right(M.index[right.keys[t][0]], A.index[right.keys[t][1]]))


def test_tensor_of_cup_cap_doubles():
    B = tangle_bimodule(1, 2, (0,))
    assert B.dim == 9
    assert tensor_over_A(B, B).dim == 2 * B.dim


def test_hh_trace_property():
    M = tangle_bimodule(1, 3, (0,))
    N = tangle_bimodule(1, 3, (1,))
    A = M.algebra
    mn = relative_bar_hochschild(A, tensor_over_A(M, N), 4)
    nm = relative_bar_hochschild(A, tensor_over_A(N, M), 4)
    assert mn.ranks == nm.ranks and mn.graded == nm.graded
