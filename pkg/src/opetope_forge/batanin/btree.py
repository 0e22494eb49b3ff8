"""Batanin trees and their globs.

An n-stage tree is stored as its nested-sequence form: the stage-0 tree is
the token ``0`` and an (n+1)-stage tree is a tuple of n-stage trees.  The
stage is kept explicitly because ``()`` exists at every stage >= 1.

The glob of a tree has cells named recursively: ``("v", i)`` for the i-th
0-cell and ``("c", i, c)`` for cell c of the glob of the i-th subtree, raised
one dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Mapping

from ..finbase import atom_key

TOKEN = 0


class BTreeError(ValueError):
    pass


@dataclass(frozen=True)
class BTree:
    stage: int
    shape: Any

    def __post_init__(self):
        if not _valid(self.stage, self.shape):
            raise BTreeError(f"{self.shape!r} is not a {self.stage}-stage tree")

    def sort_key(self):
        return (self.stage, size(self), atom_key(self.shape))

    @property
    def size(self) -> int:
        return size(self)

    @property
    def children(self) -> tuple:
        if self.stage == 0:
            return ()
        return tuple(BTree(self.stage - 1, c) for c in self.shape)

    def to_json(self):
        return to_json(self)

    def __repr__(self):
        return f"BTree({self.stage}, {_show(self.shape)})"


def _show(shape) -> str:
    if shape == TOKEN:
        return "0"
    return "[" + ",".join(_show(c) for c in shape) + "]"


def _valid(stage, shape) -> bool:
    if stage == 0:
        return shape == TOKEN and not isinstance(shape, bool)
    return isinstance(shape, tuple) and all(_valid(stage - 1, c) for c in shape)


def size(t: BTree) -> int:
    """Number of edges (non-root nodes)."""
    return _size(t.shape) if t.stage else 0


def _size(shape) -> int:
    if shape == TOKEN:
        return 0
    return sum(1 + _size(c) for c in shape)


def upsilon(n: int) -> BTree:
    """The straight tree: a single n-cell."""
    shape = TOKEN
    for _ in range(n):
        shape = (shape,)
    return BTree(n, shape)


def boundary(t: BTree) -> BTree:
    """Remove every node at height n."""
    if t.stage == 0:
        raise BTreeError("a 0-stage tree has no boundary")
    return BTree(t.stage - 1, _bd(t.stage, t.shape))


def _bd(stage, shape):
    if stage == 1:
        return TOKEN
    return tuple(_bd(stage - 1, c) for c in shape)


def promote(t: BTree) -> BTree:
    """The same tree regarded one stage up (its identity cell)."""
    return BTree(t.stage + 1, _promote(t.shape))


def _promote(shape):
    if shape == TOKEN:
        return ()
    return tuple(_promote(c) for c in shape)


# -- diagrams in Delta ---------------------------------------------------------

def to_delta(t: BTree) -> tuple:
    """The diagram tau(n) -> ... -> tau(0) = 1 as a tuple of parent maps: entry
    k-1 lists, for each height-k node in order, the index of its parent."""
    maps = []
    level = [t.shape]
    for _ in range(t.stage):
        parents, nxt = [], []
        for i, node in enumerate(level):
            for c in node:
                parents.append(i)
                nxt.append(c)
        maps.append(tuple(parents))
        level = nxt
    return tuple(maps)


def from_delta(maps) -> BTree:
    maps = [tuple(m) for m in maps]
    n = len(maps)
    prev_len = 1
    for m in maps:
        if any(not 0 <= p < prev_len for p in m) or list(m) != sorted(m):
            raise BTreeError("parent maps must be monotone into the previous level")
        prev_len = len(m)

    def build(k, i):
        if k == n:
            return TOKEN
        return tuple(build(k + 1, j) for j, p in enumerate(maps[k]) if p == i)

    return BTree(n, build(0, 0))


# -- enumeration ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _shapes(stage: int, bound: int) -> tuple:
    if bound < 0:
        return ()
    if stage == 0:
        return (TOKEN,)
    out = [()]
    for first in range(bound):
        for head in _shapes(stage - 1, first):
            if _size(head) != first:
                continue
            for tail in _shapes(stage, bound - 1 - first):
                out.append((head,) + tail)
    return tuple(sorted(set(out), key=lambda s: (_size(s), atom_key(s))))


def trees(stage: int, bound: int) -> list[BTree]:
    """All stage-n trees with at most bound edges (free-monoid recursion)."""
    return [BTree(stage, s) for s in _shapes(stage, bound)]


# -- globs ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def glob_cells(t: BTree) -> tuple:
    """Cells of the glob of t as (name, dim, source, target), sources/targets
    None in dimension 0."""
    if t.stage == 0:
        return ((("v", 0), 0, None, None),)
    k = len(t.shape)
    out = [(("v", i), 0, None, None) for i in range(k + 1)]
    for i, child in enumerate(t.children):
        for name, dim, s, tt in glob_cells(child):
            if dim == 0:
                out.append((("c", i, name), 1, ("v", i), ("v", i + 1)))
            else:
                out.append((("c", i, name), dim + 1, ("c", i, s), ("c", i, tt)))
    return tuple(out)


@lru_cache(maxsize=None)
def glob_index(t: BTree) -> dict:
    return {name: (dim, s, tt) for name, dim, s, tt in glob_cells(t)}


@lru_cache(maxsize=None)
def maximal_cells(t: BTree) -> tuple:
    """Cells that are no other cell's source or target, in canonical order."""
    cells = glob_cells(t)
    faces = {x for _, _, s, tt in cells for x in (s, tt) if x is not None}
    return tuple(sorted((name for name, *_ in cells if name not in faces), key=atom_key))


def top_cell(n: int):
    """The single n-cell of the glob of upsilon_n."""
    name = ("v", 0)
    for _ in range(n):
        name = ("c", 0, name)
    return name


@lru_cache(maxsize=None)
def face_inclusion(t: BTree, which: str) -> dict:
    """The source ('s') or target ('t') inclusion of glob(boundary t) into glob(t)."""
    if t.stage == 0:
        raise BTreeError("no faces in stage 0")
    if t.stage == 1:
        return {("v", 0): ("v", 0) if which == "s" else ("v", len(t.shape))}
    out = {}
    for i in range(len(t.shape) + 1):
        out[("v", i)] = ("v", i)
    for i, child in enumerate(t.children):
        for x, y in face_inclusion(child, which).items():
            out[("c", i, x)] = ("c", i, y)
    return out


# -- substitution --------------------------------------------------------------

def complete_labels(t: BTree, labels: Mapping) -> dict:
    """Extend tree labels given on the maximal cells of glob(t) to every cell:
    both faces of a cell labelled x are labelled by the boundary of x."""
    return complete_labels_st(t, labels, boundary, boundary)


def complete_labels_st(t: BTree, labels: Mapping, src, tgt) -> dict:
    """Extend labels on the maximal cells of glob(t) to every cell, giving the
    source and target faces of a cell labelled x the labels src(x), tgt(x).
    Raises when two cells disagree on a shared face."""
    idx = glob_index(t)
    full = dict(labels)
    for name, dim, _, _ in sorted(glob_cells(t), key=lambda c: -c[1]):
        if name not in full:
            raise BTreeError(f"cell {name!r} is neither labelled nor a face of a labelled cell")
        if dim == 0:
            continue
        _, s, tt = idx[name]
        for face, val in ((s, src(full[name])), (tt, tgt(full[name]))):
            if face in full and full[face] != val:
                raise BTreeError(f"labels disagree at face {face!r}")
            full[face] = val
    return full


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=atom_key)] = min(ra, rb, key=atom_key)


def substitute(t: BTree, labels: Mapping) -> tuple[BTree, dict]:
    """Paste the trees labelling the cells of glob(t) (labels on the maximal
    cells suffice).  Returns the composite tree and, for every cell c of
    glob(t), the embedding of glob(labels[c]) into the glob of the result."""
    full = complete_labels_st(t, {c: labels[c] for c in maximal_cells(t)}, boundary, boundary)
    for name, dim, _, _ in glob_cells(t):
        lab = full[name]
        if not isinstance(lab, BTree) or lab.stage != dim:
            raise BTreeError(f"cell {name!r} of dimension {dim} needs a {dim}-stage tree")
    uf = _UnionFind()
    info: dict = {}
    for name, dim, s, tt in glob_cells(t):
        lab = full[name]
        for x, xd, xs, xt in glob_cells(lab):
            uf.find((name, x))
            info[(name, x)] = (xd, xs, xt)
        if dim >= 1:
            for face, which in ((s, "s"), (tt, "t")):
                for y, z in face_inclusion(lab, which).items():
                    uf.union((face, y), (name, z))
    classes: dict = {}
    for key, (xd, xs, xt) in info.items():
        r = uf.find(key)
        name = key[0]
        src = None if xs is None else uf.find((name, xs))
        tgt = None if xt is None else uf.find((name, xt))
        prev = classes.get(r)
        if prev is not None and prev != (xd, src, tgt):
            raise BTreeError("labels are not compatible on shared faces")
        classes[r] = (xd, src, tgt)
    result, naming = decode_glob(classes, t.stage)
    embeddings = {}
    for name, *_ in glob_cells(t):
        embeddings[name] = {x: naming[uf.find((name, x))] for x, *_ in glob_cells(full[name])}
    return result, embeddings


def decode_glob(cells: Mapping, stage: int) -> tuple[BTree, dict]:
    """Read a glob back as a tree.  cells maps a cell to (dim, source, target).
    Returns the tree and the canonical name of every cell."""
    if any(d > stage for d, _, _ in cells.values()):
        raise BTreeError("glob has cells above its stage")

    def down(c, d0):
        while cells[c][0] > d0:
            c = cells[c][1]
        return c

    def go(S, d0):
        verts = [c for c in S if cells[c][0] == d0]
        if d0 == stage:
            if len(verts) != 1 or len(S) != 1:
                raise BTreeError("not a glob: extra top cells")
            return TOKEN, {verts[0]: ("v", 0)}
        edges = [c for c in S if cells[c][0] == d0 + 1]
        targets = {cells[e][2] for e in edges}
        starts = [v for v in verts if v not in targets]
        if len(starts) != 1:
            raise BTreeError("not a glob: 0-cells do not form a path")
        succ: dict = {}
        for e in edges:
            s, tt = cells[e][1], cells[e][2]
            if succ.setdefault(s, tt) != tt:
                raise BTreeError("not a glob: branching path")
        order = [starts[0]]
        while order[-1] in succ:
            order.append(succ[order[-1]])
        if len(order) != len(verts):
            raise BTreeError("not a glob: disconnected 0-cells")
        names = {v: ("v", i) for i, v in enumerate(order)}
        pos = {v: i for i, v in enumerate(order)}
        cols: list[list] = [[] for _ in order[:-1]]
        for c in S:
            if cells[c][0] > d0:
                cols[pos[down(c, d0)]].append(c)
        kids = []
        for i, col in enumerate(cols):
            sub, sub_names = go(col, d0 + 1)
            kids.append(sub)
            for c, nm in sub_names.items():
                names[c] = ("c", i, nm)
        return tuple(kids), names

    shape, names = go(list(cells), 0)
    return BTree(stage, shape), names


def binary_tree(n: int, k: int) -> BTree:
    """The tree of two n-cells glued along a k-cell."""
    if not 0 <= k < n:
        raise BTreeError("need 0 <= k < n")
    if k == 0:
        u = upsilon(n - 1).shape
        return BTree(n, (u, u))
    return BTree(n, (binary_tree(n - 1, k - 1).shape,))


def tensor(a: BTree, b: BTree, k: int) -> BTree:
    """Binary composite of two n-stage trees along dimension k, as the
    two-cell special case of substitution."""
    if a.stage != b.stage:
        raise BTreeError("tensor needs trees of equal stage")
    shape = binary_tree(a.stage, k)
    first, second = maximal_cells(shape)
    return substitute(shape, {first: a, second: b})[0]


# -- JSON ---------------------------------------------------------------------

def to_json(t: BTree):
    def go(shape):
        return 0 if shape == TOKEN else [go(c) for c in shape]

    return go(t.shape)


def from_json(data, stage: int | None = None) -> BTree:
    """Parse nested arrays; the stage defaults to the least one that fits."""
    def need(x):
        if x == 0 and not isinstance(x, bool):
            return 0
        if not isinstance(x, list):
            raise BTreeError(f"not a tree: {x!r}")
        return 1 + max((need(c) for c in x), default=0)

    def go(x):
        return TOKEN if x == 0 else tuple(go(c) for c in x)

    return BTree(need(data) if stage is None else stage, go(data))
