"""ASCII and DOT rendering."""

import pytest

from opetope_forge.batanin.btree import from_json, trees
from opetope_forge.batanin.globset import tau_hat
from opetope_forge.opetopia.tower import opetopes
from opetope_forge.render import RenderError, render


def test_leaf():
    assert render("*") == "*"


def test_binary_corolla_dot():
    out = render(("*", "*"), "dot")
    assert out.startswith("digraph")
    assert out.count("[label=") == 3
    assert out.count("->") == 2


def test_three_column_tree():
    pic = render(from_json([[0, 0, 0], [], [0]]))
    assert [row.strip() for row in pic.splitlines()] == ["ooo . o", "ooo", "o"]


def test_btree_dot_counts_nodes():
    t = from_json([[0, 0, 0], [], [0]])
    out = render(t, "dot")
    assert out.count("[label=") == 1 + 3 + 4
    assert out.count("->") == 7


def test_glob_render_lists_cells():
    out = render(tau_hat(from_json([0, 0, 0])))
    assert "dim 0: 4 cell(s)" in out and "dim 1: 3 cell(s)" in out
    dot = render(tau_hat(from_json([[0]])), "dot")
    # 5 cells, each positive-dimensional cell has a source and a target edge
    assert dot.count("dim=") == 5 and dot.count("->") == 6


@pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
def test_every_small_opetope_renders(d):
    for o in opetopes(d, 3):
        for fmt in ("ascii", "dot"):
            assert render(o, fmt)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_renders_are_stable(n):
    for t in trees(n, 4):
        assert render(t) == render(t)
        assert render(t, "dot") == render(t, "dot")


def test_unsupported():
    with pytest.raises(RenderError):
        render(3.5)
    with pytest.raises(RenderError):
        render("*", "svg")
