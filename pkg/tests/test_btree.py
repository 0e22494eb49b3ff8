"""Batanin trees: Delta diagrams, enumeration, boundary, substitution."""

from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from opetope_forge.batanin import (BTree, BTreeError, boundary, from_delta, maximal_cells, promote, substitute,
                                   tensor, to_delta, trees, upsilon)
from opetope_forge.batanin.btree import binary_tree, from_json, size, to_json
from opetope_forge.batanin.globset import _tree_comp


def delta_diagrams(n, s):
    """Chains of monotone maps tau(n) -> ... -> tau(1) -> 1 with sum |tau(k)| <= s."""
    out = []

    def go(k, prev, used, acc):
        if k == n:
            out.append(tuple(acc))
            return
        for m in range(s - used + 1):
            for parents in combinations_with_replacement(range(prev), m):
                go(k + 1, m, used + m, acc + [parents])

    go(0, 1, 0, [])
    return out


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("s", range(6))
def test_tree_counts_match_delta_enumeration(n, s):
    diagrams = delta_diagrams(n, s)
    assert len(trees(n, s)) == len(diagrams)
    assert {from_delta(d) for d in diagrams} == set(trees(n, s))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_round_trip_up_to_size_6(n):
    for t in trees(n, 6):
        d = to_delta(t)
        assert from_delta(d) == t
        assert sum(len(m) for m in d) == size(t)


def test_from_delta_rejects_non_monotone():
    with pytest.raises(BTreeError):
        from_delta([(0, 0), (1, 0)])
    with pytest.raises(BTreeError):
        from_delta([(0,), (1,)])


def test_three_column_tree_boundary():
    t = from_json([[0, 0, 0], [], [0]])
    assert t.stage == 2
    assert boundary(t) == from_json([0, 0, 0])
    assert size(boundary(t)) == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_boundary_of_upsilon(n):
    assert boundary(upsilon(n)) == upsilon(n - 1)


def test_boundary_of_stage_zero_raises():
    with pytest.raises(BTreeError):
        boundary(upsilon(0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boundary_is_delta_truncation(n):
    for t in trees(n, 5):
        b = boundary(t)
        assert b.stage == n - 1
        assert to_delta(b) == to_delta(t)[:-1]


def test_upsilon_substitution():
    for n in range(4):
        u = upsilon(n)
        labels = {c: upsilon(n) for c in maximal_cells(u)}
        assert substitute(u, labels)[0] == u


def test_nullary_composite_is_promotion():
    p3 = from_json([0, 0, 0])
    assert promote(p3) == from_json([[], [], []])
    assert promote(p3).stage == 2


def _path(k):
    return from_json([0] * k, 1)


def test_associativity_tree_equation():
    # f over a 2-edge path, f1 over 3 edges, f2 over 1 edge, f11..f13 over 1 edge.
    # Gluing globs of arrows: lengths add, so both sides sit over the 4-edge path.
    f, f1, f2 = _path(2), _path(3), _path(1)
    a, b = maximal_cells(f)
    inner, _ = substitute(f1, dict.fromkeys(maximal_cells(f1), _path(1)))
    lhs, _ = substitute(f, {a: inner, b: f2})
    mid, _ = substitute(f, {a: f1, b: f2})
    rhs, _ = substitute(mid, dict.fromkeys(maximal_cells(mid), _path(1)))
    assert lhs == rhs == _path(4)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_stage_one_substitution_adds_lengths(lengths):
    t = _path(len(lengths))
    r, _ = substitute(t, dict(zip(maximal_cells(t), map(_path, lengths))))
    assert r == _path(sum(lengths))


def _stage(n, bound):
    return st.sampled_from(trees(n, bound))


@settings(max_examples=60)
@given(st.data())
def test_tensor_matches_direct_gluing(data):
    n = data.draw(st.integers(1, 3))
    k = data.draw(st.integers(0, n - 1))
    a = data.draw(_stage(n, 4))
    b = data.draw(_stage(n, 4))
    try:
        glued = _tree_comp(k, a, b)
    except ValueError:
        glued = None
    if glued is None:
        with pytest.raises(BTreeError):
            tensor(a, b, k)
    else:
        assert tensor(a, b, k) == glued


def test_binary_tree_shapes():
    assert binary_tree(1, 0) == _path(2)
    assert binary_tree(2, 1) == from_json([[0, 0]])
    assert binary_tree(2, 0) == from_json([[0], [0]])


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_json_round_trip(n):
    for t in trees(n, 4):
        assert from_json(to_json(t), n) == t


def test_json_least_stage():
    assert from_json(0).stage == 0
    assert from_json([]).stage == 1
    assert from_json([[0, 0, 0], [], [0]]).stage == 2
