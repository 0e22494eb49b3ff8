"""Globular sets, globs of trees, labellings and strict pasting."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from opetope_forge.batanin import (BTreeError, GlobError, GlobSet, TREE_OPS, labellings, maximal_cells, omega_free,
                                   paste, substitute, tau_hat, terminal_globset, to_delta, trees)
from opetope_forge.batanin.btree import complete_labels, from_json, glob_cells
from opetope_forge.cli import two_objects_globset


def heights(t):
    return [1] + [len(m) for m in to_delta(t)]


def expected_counts(t):
    h = heights(t)
    n = t.stage
    return tuple(h[k] + h[k + 1] for k in range(n)) + (h[n],)


def test_known_globs():
    assert tau_hat(from_json([0, 0, 0])).counts() == (4, 3)
    assert tau_hat(from_json([[0]])).counts() == (2, 2, 1)
    assert tau_hat(from_json([[], [0, 0, 0], [0, 0]])).counts() == (4, 8, 5)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_glob_counts_read_off_tree(n):
    for t in trees(n, 5):
        assert tau_hat(t).counts() == expected_counts(t)


def test_globularity_is_enforced():
    with pytest.raises(GlobError):
        GlobSet(2, (["a", "b"], ["f", "g"], ["x"]),
                ({"f": "a", "g": "b"}, {"x": "f"}), ({"f": "b", "g": "a"}, {"x": "g"}))


def test_json_round_trip():
    X, _ = two_objects_globset()
    Y = GlobSet.from_json(X.to_json())
    assert Y.counts() == X.counts()
    assert Y.to_json() == X.to_json()


def brute_labellings(X, t):
    G = tau_hat(t)
    cells = [(k, c) for k in range(G.N + 1) for c in G.cells[k]]
    pools = [list(X.cells[k]) for k, _ in cells]
    out = []
    for combo in product(*pools):
        lab = {c: x for (_, c), x in zip(cells, combo)}
        if all(X.s[k][lab[c]] == lab[G.s[k][c]] and X.t[k][lab[c]] == lab[G.t[k][c]]
               for k in range(G.N) for c in G.cells[k + 1]):
            out.append(lab)
    return out


def small_X():
    objs = ["p", "q"]
    arrows = {"u": ("p", "q"), "v": ("p", "q"), "w": ("q", "q")}
    twos = {"A": ("u", "v"), "B": ("v", "u"), "C": ("w", "w")}
    return GlobSet(2, (objs, list(arrows), list(twos)),
                   ({a: s for a, (s, _) in arrows.items()}, {a: s for a, (s, _) in twos.items()}),
                   ({a: t for a, (_, t) in arrows.items()}, {a: t for a, (_, t) in twos.items()}))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_labellings_match_brute_force(n):
    X = small_X()
    key = lambda lab: sorted(lab.items(), key=repr)
    for t in trees(n, 3):
        fast = sorted(map(key, labellings(X, t)))
        slow = sorted(map(key, brute_labellings(X, t)))
        assert fast == slow


def test_labellings_of_a_path_in_codiscrete_X():
    X, _ = two_objects_globset()
    # 2^4 vertex choices, each of the 3 edges has 2 parallel arrows
    assert len(labellings(X, from_json([0, 0, 0]))) == 2 ** 4 * 2 ** 3


def test_labellings_terminal_and_point():
    one = terminal_globset(3)
    for n in range(4):
        for t in trees(n, 4):
            assert len(labellings(one, t)) == 1
    X = small_X()
    assert len(labellings(X, from_json(0))) == 2


def test_labellings_stage_too_high():
    with pytest.raises(GlobError):
        labellings(terminal_globset(1), from_json([[0]]))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_omega_free_of_terminal_is_trees(n):
    fam = omega_free(terminal_globset(3), n, 4)
    assert [t for t, _ in fam] == trees(n, 4)


def test_omega_free_discrete():
    X = GlobSet(1, (["a", "b"], []), ({},), ({},))
    fam = omega_free(X, 1, 3)
    # only the empty path survives, once per object
    assert len(fam) == 2
    assert all(t == from_json([]) for t, _ in fam)


@settings(max_examples=80)
@given(st.data())
def test_paste_in_trees_is_substitution(data):
    n = data.draw(st.integers(1, 3))
    t = data.draw(st.sampled_from(trees(n, 4)))
    maxc = maximal_cells(t)
    dims = {c: d for c, d, _, _ in glob_cells(t)}
    labels = {c: data.draw(st.sampled_from(trees(dims[c], 3))) for c in maxc}
    try:
        full = complete_labels(t, labels)
    except BTreeError:
        return
    assert paste(t, full, TREE_OPS) == substitute(t, labels)[0]

