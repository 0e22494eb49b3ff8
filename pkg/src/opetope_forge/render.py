"""ASCII and DOT pictures of planar trees, Batanin trees, opetopes and globular sets."""

from __future__ import annotations

from .batanin.btree import TOKEN, BTree
from .batanin.globset import GlobSet
from .finbase import atom_to_str
from .opetopia import ptree
from .opetopia.tower import Opetope

FORMATS = ("ascii", "dot")


class RenderError(ValueError):
    pass


def render(obj, fmt: str = "ascii") -> str:
    if fmt not in FORMATS:
        raise RenderError(f"unknown format {fmt!r}")
    if isinstance(obj, BTree):
        return _btree_ascii(obj) if fmt == "ascii" else _btree_dot(obj)
    if isinstance(obj, GlobSet):
        return _glob_ascii(obj) if fmt == "ascii" else _glob_dot(obj)
    if isinstance(obj, Opetope):
        return _opetope(obj, fmt)
    if ptree.is_ptree(obj):
        return _ptree_ascii(obj) if fmt == "ascii" else _ptree_dot(obj)
    raise RenderError(f"cannot render {type(obj).__name__}")


# -- planar trees ---------------------------------------------------------------

def _outline(label_of, children_of, root) -> str:
    lines = [label_of(root)]

    def go(node, prefix):
        kids = children_of(node)
        for i, c in enumerate(kids):
            last = i == len(kids) - 1
            lines.append(prefix + ("`-- " if last else "|-- ") + label_of(c))
            go(c, prefix + ("    " if last else "|   "))

    go(root, "")
    return "\n".join(lines)


def _ptree_ascii(t) -> str:
    return _outline(lambda u: "*" if u == ptree.LEAF else "o", lambda u: () if u == ptree.LEAF else u, t)


def _dot(label_of, children_of, root, name="tree") -> str:
    lines = [f"digraph {name} {{"]
    counter = [0]

    def go(node):
        me = f"n{counter[0]}"
        counter[0] += 1
        lines.append(f'  {me} [label="{label_of(node)}"];')
        for c in children_of(node):
            child = go(c)
            lines.append(f"  {me} -> {child};")
        return me

    go(root)
    lines.append("}")
    return "\n".join(lines)


def _ptree_dot(t) -> str:
    return _dot(lambda u: "*" if u == ptree.LEAF else "o", lambda u: () if u == ptree.LEAF else u, t, "ptree")


# -- Batanin trees --------------------------------------------------------------

def _btree_ascii(t: BTree) -> str:
    """Levels drawn top (leaves) to bottom (root); nodes sharing a parent are
    grouped, an empty group is shown as '.'."""
    if t.stage == 0 or t.shape == TOKEN:
        return "o"
    levels = []
    frontier = [t.shape]
    for _ in range(t.stage):
        groups, nxt = [], []
        for node in frontier:
            kids = () if node == TOKEN else node
            groups.append("o" * len(kids) if kids else ".")
            nxt.extend(kids)
        levels.append(groups)
        frontier = nxt
    rows = [" ".join(g) for g in reversed(levels)]
    rows.append("o")
    width = max(len(r) for r in rows)
    return "\n".join(r.center(width).rstrip() for r in rows)


def _btree_dot(t: BTree) -> str:
    return _dot(lambda u: "o", lambda u: () if u == TOKEN else u, t.shape, "btree")


# -- opetopes -------------------------------------------------------------------

def _term_children(d):
    def kids(node):
        p = node[1]
        if isinstance(p, tuple) and p and p[0] == "n":
            return [(d, c) for c in p[2]]
        return []
    return kids


def _term_label(node) -> str:
    d, p = node
    if p[0] == "u":
        return f"unit({atom_to_str(p[1])})"
    return f"node({atom_to_str(p[1])})"


def _opetope(o: Opetope, fmt: str) -> str:
    d, p = o.dim, o.payload
    if d <= 1:
        return "*" if fmt == "ascii" else 'digraph opetope {\n  n0 [label="*"];\n}'
    if d == 2:
        return render((ptree.LEAF,) * p, fmt)
    if d == 3:
        return render(p, fmt)
    if fmt == "ascii":
        return _outline(_term_label, _term_children(d), (d, p))
    return _dot(_term_label, _term_children(d), (d, p), "opetope")


# -- globular sets ---------------------------------------------------------------

def _glob_ascii(X: GlobSet) -> str:
    lines = []
    for k, cells in enumerate(X.cells):
        lines.append(f"dim {k}: {len(cells)} cell(s)")
        for x in cells:
            if k == 0:
                lines.append(f"  {atom_to_str(x)}")
            else:
                lines.append(f"  {atom_to_str(x)}: {atom_to_str(X.s[k - 1][x])} => {atom_to_str(X.t[k - 1][x])}")
    return "\n".join(lines)


def _glob_dot(X: GlobSet) -> str:
    ids = {}
    lines = ["digraph globset {"]
    for k, cells in enumerate(X.cells):
        for x in cells:
            ids[(k, x)] = f"c{len(ids)}"
            label = atom_to_str(x).replace('"', "'")
            lines.append(f'  {ids[(k, x)]} [label="{label}", dim={k}];')
    for k in range(X.N):
        for x in X.cells[k + 1]:
            me = ids[(k + 1, x)]
            lines.append(f'  {ids[(k, X.s[k][x])]} -> {me} [label="s"];')
            lines.append(f'  {me} -> {ids[(k, X.t[k][x])]} [label="t"];')
    lines.append("}")
    return "\n".join(lines)
