"""Weights, arc diagrams, orientations and the Bruhat order."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arcalg.errors import InvalidParameters
from arcalg.weights import (
    OrientedCircleDiagram,
    Weight,
    bad_points,
    bruhat_leq,
    c_map,
    cap_diagram,
    circle_decomposition,
    cl,
    cup_diagram,
    degree,
    e_map,
    enumerate_weights,
    good_points,
    idempotent,
    is_compact,
    is_oriented,
    max_weight,
    orientations_of,
    reflect,
    rotate_diagram,
    rotate_pd,
)

W = Weight.parse
D = OrientedCircleDiagram.parse


@st.composite
def weights(draw, max_m=7):
    m = draw(st.integers(1, max_m))
    return Weight("".join(draw(st.lists(st.sampled_from("v^"), min_size=m, max_size=m))))


@st.composite
def weight_pairs(draw, max_m=6):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(0, m))
    pool = enumerate_weights(n, m)
    return draw(st.sampled_from(pool)), draw(st.sampled_from(pool))


def test_weight_parse_and_counts():
    lam = W("v^v")
    assert (lam.n, lam.m) == (2, 3)
    assert lam == W("v^v") and hash(lam) == hash(W("v^v"))
    with pytest.raises(InvalidParameters):
        W("vx")


@pytest.mark.parametrize("n,m,count", [(1, 2, 2), (0, 3, 1), (2, 4, 6), (3, 6, 20)])
def test_enumerate_counts(n, m, count):
    ws = enumerate_weights(n, m)
    assert len(ws) == count == len(set(ws))
    assert all(w.n == n and w.m == m for w in ws)


def test_enumerate_examples():
    assert enumerate_weights(1, 2) == [W("v^"), W("^v")]
    assert enumerate_weights(0, 3) == [W("^^^")]


def test_enumerate_rejects_bad_sizes():
    with pytest.raises(InvalidParameters):
        enumerate_weights(3, 2)


def test_good_points():
    assert good_points(W("v^")) == {1: 2}
    assert good_points(W("^v")) == {}
    assert good_points(W("^^vv^v")) == {4: 5}
    assert bad_points(W("^^vv^v")) == [3, 6]


def test_cup_diagram_examples():
    assert set(cup_diagram(W("v^")).cups) == {(1, 2)} and not cup_diagram(W("v^")).rays
    assert cup_diagram(W("^v")).rays == (1, 2)
    assert set(cup_diagram(W("vv^^")).cups) == {(2, 3), (1, 4)}


def test_orientation_examples():
    assert is_oriented(W("v^"), W("v^"), W("v^"))
    assert not is_oriented(W("^v"), W("v^"), W("^v"))
    assert is_oriented(W("v^"), W("^v"), W("v^"))
    assert degree(D("v^:^v:v^")) == 2
    assert degree(D("v^v^:v^v^:vv^^")) == 1


def test_circle_decomposition_examples():
    one = circle_decomposition(W("v^"), W("v^"))
    assert [c.points for c in one.circles] == [(1, 2)]
    assert len(circle_decomposition(W("v^v^"), W("vv^^")).circles) == 1
    lines = circle_decomposition(W("^v"), W("^v"))
    assert not lines.circles and [c.points for c in lines.lines] == [(1,), (2,)]


def test_orientations_examples():
    assert orientations_of(W("v^"), W("v^")) == [W("v^"), W("^v")]
    assert orientations_of(W("^v"), W("v^")) == [W("^v")]
    got = orientations_of(W("vv^^"), W("vv^^"))
    assert len(got) == 4
    # reversing one circle turns one cup and one cap clockwise
    assert sorted(degree(OrientedCircleDiagram(W("vv^^"), lam, W("vv^^"))) for lam in got) == [0, 2, 2, 4]


def test_maps_examples():
    assert max_weight(W("v^")) == W("^v")
    assert max_weight(W("^v")) == W("^v")
    assert cl(W("v^")) == W("vv^^")
    assert e_map(W("^v")) == W("^v^")
    assert c_map(W("v^^")) == W("vv^^")
    assert rotate_pd(W("v^")) == W("v^")
    assert rotate_pd(W("v^^")) == W("vv^")
    assert reflect(D("v^:^v:^v")) == D("^v:^v:v^")


def test_max_weight_of_maximal_is_itself():
    for n, m in [(1, 2), (2, 4), (2, 5)]:
        top = max(enumerate_weights(n, m), key=lambda w: w.down_positions())
        assert max_weight(top) == top


@given(weights())
def test_cup_diagram_covers_points_once(lam):
    cd = cup_diagram(lam)
    pts = [p for c in cd.cups for p in c] + list(cd.rays)
    assert sorted(pts) == list(range(1, lam.m + 1))
    for (a, b), (c, d) in itertools.combinations(cd.cups, 2):
        assert not (a < c < b < d or c < a < d < b)
    for r in cd.rays:
        assert not any(a < r < b for a, b in cd.cups)
    assert cap_diagram(lam).cups == cd.cups


@given(weight_pairs())
def test_orientations_count_and_bruhat(pair):
    b, a = pair
    dec = circle_decomposition(b, a)
    ors = orientations_of(b, a)
    assert len(ors) in (0, 2 ** len(dec.circles))
    for lam in ors:
        assert is_oriented(b, lam, a)
        assert bruhat_leq(b, lam) and bruhat_leq(a, lam)


@given(weight_pairs())
def test_compact_weights_have_no_lines(pair):
    b, a = pair
    if 2 * b.n == b.m and is_compact(b) and is_compact(a):
        assert not circle_decomposition(b, a).lines


@given(weight_pairs())
def test_max_weight_is_bruhat_maximum(pair):
    lam, _ = pair
    w = max_weight(lam)
    assert all(bruhat_leq(mu, w) for mu in orientations_of(lam, lam))


@given(weight_pairs())
def test_bruhat_is_partial_order(pair):
    lam, mu = pair
    assert bruhat_leq(lam, lam)
    if bruhat_leq(lam, mu) and bruhat_leq(mu, lam):
        assert lam == mu


@given(weight_pairs())
def test_rotate_and_reflect_involutions(pair):
    b, a = pair
    assert rotate_pd(rotate_pd(b)) == b
    for lam in orientations_of(b, a):
        d = OrientedCircleDiagram(b, lam, a)
        assert reflect(reflect(d)) == d
        assert rotate_diagram(rotate_diagram(d)) == d
        assert degree(reflect(d)) == degree(d) == degree(rotate_diagram(d))


@given(weights())
def test_idempotent_has_degree_zero(lam):
    assert degree(idempotent(lam)) == 0


def test_trichotomy_exhaustive():
    for n, m in [(1, 2), (1, 3), (2, 4), (2, 5)]:
        for l0, l1 in itertools.product(enumerate_weights(n, m), repeat=2):
            ors = orientations_of(l1, l0)
            assert (not ors or any(e not in (l0, l1) for e in ors)
                    or l0 == max_weight(l1) or l1 == max_weight(l0))
