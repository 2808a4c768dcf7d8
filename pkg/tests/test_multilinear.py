"""Spaces, trilinear tables, pair actions, and the wedge-pair basis."""

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from tensorforge import (
    AlternatingTrilinearTable,
    InputError,
    Matrix,
    PairAction,
    Space,
    TrilinearTable,
    Vector,
    WedgePairBasis,
)
from tensorforge.multilinear import format_matrix, format_vector, sort3

from oracles import rand_matrix, rand_vector

V3 = Space("V", 3)
V4 = Space("V", 4, ("a", "b", "c", "d"))
fracs = st.fractions(min_value=-3, max_value=3, max_denominator=2)


def vec4(draw_list):
    return Vector(tuple(draw_list))


def test_space_defaults_and_validation():
    assert V3.basis_labels == ("e1", "e2", "e3")
    assert V4.label(2) == "c"
    assert V3.basis_vector(1) == Vector((0, 1, 0))
    assert V3.zero().is_zero()
    with pytest.raises(InputError):
        Space("bad", -1)
    with pytest.raises(InputError):
        Space("bad", 2, ("x",))
    with pytest.raises(InputError):
        Space("bad", 2, ("x", "x"))


def test_sort3_signs_and_repeats():
    assert sort3(0, 1, 2) == ((0, 1, 2), 1)
    assert sort3(1, 0, 2) == ((0, 1, 2), -1)
    assert sort3(2, 0, 1) == ((0, 1, 2), 1)
    assert sort3(2, 1, 0) == ((0, 1, 2), -1)
    assert sort3(0, 0, 1) is None
    assert sort3(1, 2, 1) is None


def test_trilinear_table_stores_any_order_and_drops_zeros():
    t = TrilinearTable(
        V3, V3, {(1, 0, 0): Vector((1, 0, 0)), (0, 1, 2): Vector((0, 0, 0))}
    )
    assert t.value(1, 0, 0) == Vector((1, 0, 0))
    assert t.value(0, 1, 2) is None
    assert (0, 1, 2) not in t.coords
    with pytest.raises(InputError):
        TrilinearTable(V3, V3, {(0, 1, 3): Vector((1, 0, 0))})
    with pytest.raises(InputError):
        TrilinearTable(V3, V3, {(0, 1, 2): Vector((1, 0))})


def test_alternating_table_signs_and_key_policy():
    out = Vector((0, 0, 0, 1))
    t = AlternatingTrilinearTable(V4, V4, {(0, 1, 2): out})
    assert t.value(0, 1, 2) == out
    assert t.value(1, 0, 2) == -out
    assert t.value(2, 0, 1) == out
    assert t.value(0, 0, 1) is None
    with pytest.raises(InputError):
        AlternatingTrilinearTable(V4, V4, {(1, 0, 2): out})
    with pytest.raises(InputError):
        AlternatingTrilinearTable(V4, V4, {(0, 1, 1): out})


@settings(max_examples=30, deadline=None)
@given(
    st.lists(fracs, min_size=4, max_size=4),
    st.lists(fracs, min_size=4, max_size=4),
    st.lists(fracs, min_size=4, max_size=4),
)
def test_alternating_eval_is_antisymmetric(xs, ys, zs):
    t = AlternatingTrilinearTable(
        V4, V4, {(0, 1, 2): Vector((0, 0, 0, 1)), (0, 2, 3): Vector((1, 0, 0, 0))}
    )
    x, y, z = Vector(tuple(xs)), Vector(tuple(ys)), Vector(tuple(zs))
    base = t.eval(x, y, z)
    for perm, sign in [
        ((y, x, z), -1), ((x, z, y), -1), ((z, y, x), -1),
        ((y, z, x), 1), ((z, x, y), 1),
    ]:
        assert t.eval(*perm) == base.scale(sign)
    assert t.eval(x, x, z).is_zero()


def test_trilinear_eval_expands_by_multilinearity():
    rng = random.Random(5)
    coords = {
        (i, j, k): rand_vector(rng, 3)
        for i in range(3) for j in range(3) for k in range(3)
        if rng.random() < 0.4
    }
    t = TrilinearTable(V3, V3, coords)
    x, y, z = (rand_vector(rng, 3) for _ in range(3))
    expected = Vector.zero(3)
    for i, ci in x.iter_nonzero():
        for j, cj in y.iter_nonzero():
            for k, ck in z.iter_nonzero():
                val = t.value(i, j, k)
                if val is not None:
                    expected = expected + val.scale(ci * cj * ck)
    assert t.eval(x, y, z) == expected


def test_pair_action_key_policy_and_signs():
    m = Matrix([[0, 1], [0, 0]])
    act = PairAction(V3, Space("W", 2), {(0, 2): m})
    assert act.at(0, 2) == m
    assert act.at(2, 0) == -m
    assert act.at(1, 1) is None
    assert act.at(0, 1) is None
    with pytest.raises(InputError):
        PairAction(V3, Space("W", 2), {(2, 0): m})
    with pytest.raises(InputError):
        PairAction(V3, Space("W", 2), {(0, 1): Matrix([[1, 2, 3]])})


@settings(max_examples=30, deadline=None)
@given(st.lists(fracs, min_size=3, max_size=3), st.lists(fracs, min_size=3, max_size=3))
def test_pair_action_eval_is_alternating_bilinear(xs, ys):
    rng = random.Random(11)
    act = PairAction(
        V3, V3,
        {(0, 1): rand_matrix(rng, 3, 3), (1, 2): rand_matrix(rng, 3, 3)},
    )
    x, y = Vector(tuple(xs)), Vector(tuple(ys))
    assert act.eval(x, y) == -act.eval(y, x)
    assert act.eval(x, x).is_zero()
    h = rand_vector(rng, 3)
    assert act.apply(x, y, h) == act.eval(x, y).mul_vec(h)
    assert act.apply_pair(1, 2, h) == act.at(1, 2).mul_vec(h)


def test_wedge_pair_basis_positions_and_expand():
    w = WedgePairBasis(V4)
    assert w.dim == 6
    assert w.pairs[0] == (0, 1) and w.pairs[-1] == (2, 3)
    for pos, (i, j) in enumerate(w.pairs):
        assert w.position(i, j) == pos
    x, y = Vector((1, 0, 2, 0)), Vector((0, 1, 0, -1))
    exp = w.wedge_expand(x, y)
    # entry at pair (i, j) must be x_i y_j - x_j y_i
    for pos, (i, j) in enumerate(w.pairs):
        assert exp[pos] == x[i] * y[j] - x[j] * y[i]
    assert w.wedge_expand(x, x).is_zero()
    assert w.wedge_expand(x, y) == -w.wedge_expand(y, x)
    assert w.label(0) == "a^b"


def test_format_helpers():
    assert format_vector(V4, Vector((1, 0, Fraction(-1, 2), 0))) == "a - 1/2*c"
    assert format_vector(V4, None) == "0"
    assert format_vector(V4, Vector((0, 0, 0, 0))) == "0"
    m = Matrix([[0, 1], [Fraction(1, 2), 0]])
    assert format_matrix(m) == "[1,2]=1, [2,1]=1/2"
    assert format_matrix(Matrix.zeros(2, 2)) == "0"
