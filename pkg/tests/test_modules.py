"""Projective, standard and simple modules; decomposition numbers; global dimension."""

import itertools

import pytest

from arcalg.algebra import ArcAlgebra
from arcalg.modules import (
    decomposition_data,
    degree_zero_is_idempotent_span,
    global_dimension,
    irreducible,
    projective,
    regular_module,
    standard,
)
from arcalg.weights import bruhat_leq, max_weight

SIZES = [(1, 2), (1, 3), (2, 4), (1, 4), (2, 5)]


def _square(p):
    out = {}
    for (a, x), (b, y) in itertools.product(p.items(), repeat=2):
        out[a + b] = out.get(a + b, 0) + x * y
    return out


def test_k12_dimensions():
    A = ArcAlgebra.K(1, 2)
    assert projective(A, "v^").dim == 3 and projective(A, "^v").dim == 2
    assert standard(A, "v^").dim == 1 and standard(A, "^v").dim == 2
    assert all(irreducible(A, lam).dim == 1 for lam in A.weights)


@pytest.mark.parametrize("n,m", SIZES)
def test_projectives_partition_regular(n, m):
    A = ArcAlgebra.K(n, m)
    assert sum(projective(A, lam).dim for lam in A.weights) == A.dim
    regular_module(A).check()


@pytest.mark.parametrize("n,m", SIZES)
def test_standard_squares_sum_to_algebra(n, m):
    A = ArcAlgebra.K(n, m)
    total = {}
    for lam in A.weights:
        V = standard(A, lam)
        V.check()
        for d, c in _square(V.graded_dimension()).items():
            total[d] = total.get(d, 0) + c
    assert total == A.graded_dimension()


@pytest.mark.parametrize("n,m", SIZES)
def test_maximal_weight_standard_is_projective(n, m):
    A = ArcAlgebra.K(n, m)
    top = [lam for lam in A.weights if all(bruhat_leq(mu, lam) for mu in A.weights)]
    assert len(top) == 1
    assert max_weight(top[0]) == top[0]
    assert standard(A, top[0]).dim == projective(A, top[0]).dim


def test_simples_killed_by_positive_degree():
    A = ArcAlgebra.K(1, 2)
    top = A.index[A.basis[[d.degree for d in A.basis].index(2)]]
    for lam in A.weights:
        L = irreducible(A, lam)
        L.check()
        assert all(not L.act(k, top) for k in range(L.dim))


@pytest.mark.parametrize("n,m", SIZES)
def test_degree_zero_part(n, m):
    assert degree_zero_is_idempotent_span(ArcAlgebra.K(n, m))


@pytest.mark.parametrize("n,m", SIZES)
def test_decomposition_data(n, m):
    data = decomposition_data(ArcAlgebra.K(n, m))
    assert data.factorization_holds
    ws = data.weights
    for i, mu in enumerate(ws):
        assert data.D[i][i] == {0: 1}
        for j, lam in enumerate(ws):
            if data.D[i][j]:
                assert bruhat_leq(lam, mu)


def test_decomposition_k12():
    data = decomposition_data(ArcAlgebra.K(1, 2)).to_json()
    assert data["D"] == [[{"0": 1}, {}], [{"1": 1}, {"0": 1}]]
    assert data["DtD_equals_cartan"] and data["unitriangular"]


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 4)])
def test_global_dimension(n, m):
    assert global_dimension(ArcAlgebra.K(n, m)) == 2 * n * (m - n)
