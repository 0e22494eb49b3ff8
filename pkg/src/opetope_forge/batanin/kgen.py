"""Bounded generation of the initial operad with contraction K, and its truncations K_n.

Cells of K are terms:

* ``KId(n)``: the identity over the n-stage linear tree;
* ``KNode(gen, args)``: a contraction generator ``gen = Gen(tree, src, tgt)``
  composed with one argument per maximal cell of glob(tree).  A bare
  generator has identity arguments.

Each term is in normal form (generator on top, arguments below), so distinct
terms are distinct cells.  Generation proceeds stage by stage, bounded by
tree size and by the number of generator occurrences in the term hierarchy
(occurrences inside a generator's own source and target are not counted).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator

from ..finbase import atom_key
from .btree import (BTree, BTreeError, boundary, complete_labels_st, face_inclusion, glob_cells, glob_index,
                    maximal_cells, size, substitute, top_cell, trees, upsilon)
from .operad import OperadError, _bound_at


@dataclass(frozen=True)
class KId:
    n: int

    def __repr__(self):
        return f"id{self.n}"


@dataclass(frozen=True)
class Gen:
    tree: BTree
    src: object
    tgt: object

    def __repr__(self):
        return f"psi[{self.tree!r}]({self.src!r} => {self.tgt!r})"


@dataclass(frozen=True)
class KNode:
    gen: Gen
    args: tuple

    def __repr__(self):
        if all(isinstance(a, KId) for a in self.args):
            return repr(self.gen)
        return f"{self.gen!r}.({', '.join(map(repr, self.args))})"


def kkey(x):
    if isinstance(x, KId):
        return (0, x.n)
    return (1, gcount(x), atom_key(repr(x)))


# -- structure ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def shape(x) -> BTree:
    if isinstance(x, KId):
        return upsilon(x.n)
    return substitute(x.gen.tree, _arg_map(x, lambda a: shape(a)))[0]


def stage(x) -> int:
    return x.n if isinstance(x, KId) else x.gen.tree.stage


@lru_cache(maxsize=None)
def gcount(x) -> int:
    if isinstance(x, KId):
        return 0
    return 1 + sum(gcount(a) for a in x.args)


def _arg_map(x, f=lambda a: a) -> dict:
    return {c: f(a) for c, a in zip(maximal_cells(x.gen.tree), x.args)}


@lru_cache(maxsize=None)
def full_args(x) -> dict:
    """Arguments of a node extended to every cell of glob(gen.tree)."""
    return complete_labels_st(x.gen.tree, _arg_map(x), src, tgt)


def _face(x, which: str):
    if isinstance(x, KId):
        if x.n == 0:
            raise OperadError("stage-0 cells have no faces")
        return KId(x.n - 1)
    g = x.gen
    full = full_args(x)
    inc = face_inclusion(g.tree, which)
    b = boundary(g.tree)
    restricted = tuple(full[inc[c]] for c in maximal_cells(b))
    return _compose(g.src if which == "s" else g.tgt, restricted)


@lru_cache(maxsize=None)
def src(x):
    return _face(x, "s")


@lru_cache(maxsize=None)
def tgt(x):
    return _face(x, "t")


def compose(x, labels) -> object:
    """x composed with cells on the maximal cells of glob(shape(x))."""
    t = shape(x)
    return _compose(x, tuple(labels[c] for c in maximal_cells(t)))


@lru_cache(maxsize=None)
def _compose(x, labels: tuple):
    t = shape(x)
    maxc = maximal_cells(t)
    idx = glob_index(t)
    for c, v in zip(maxc, labels):
        if stage(v) != idx[c][0]:
            raise OperadError(f"label of cell {c!r} has the wrong stage")
    L = complete_labels_st(t, dict(zip(maxc, labels)), src, tgt)
    if isinstance(x, KId):
        return L[top_cell(x.n)]
    A = full_args(x)
    _, emb = substitute(x.gen.tree, {c: shape(a) for c, a in A.items() if c in maximal_cells(x.gen.tree)})
    new = []
    for c in maximal_cells(x.gen.tree):
        a = A[c]
        new.append(_compose(a, tuple(L[emb[c][y]] for y in maximal_cells(shape(a)))))
    return KNode(x.gen, tuple(new))


def matching(f, g) -> bool:
    if shape(f) != shape(g):
        return False
    if stage(f) == 0:
        return True
    return src(f) == src(g) and tgt(f) == tgt(g)


def bare(g: Gen) -> KNode:
    return KNode(g, tuple(KId(glob_index(g.tree)[c][0]) for c in maximal_cells(g.tree)))


# -- bounded generation ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KFragment:
    """Cells of K up to stage dim_bound; by_stage[m] maps a generator count to cells."""

    dim_bound: int
    size_bound: object
    gen_bound: object
    by_stage: tuple
    generators: tuple
    _trees: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        cells_by_tree: dict = {}
        for layer in self.by_stage:
            for xs in layer.values():
                for x in xs:
                    cells_by_tree.setdefault(shape(x), []).append(x)
        for k in cells_by_tree:
            cells_by_tree[k].sort(key=kkey)
        self._trees.update(cells_by_tree)

    def trees(self) -> list[BTree]:
        return sorted(self._trees, key=BTree.sort_key)

    def cells(self, t: BTree) -> list:
        return list(self._trees.get(t, ()))

    def all_cells(self, m: int | None = None) -> list:
        stages = range(self.dim_bound + 1) if m is None else (m,)
        return [x for s in stages for k in sorted(self.by_stage[s]) for x in self.by_stage[s][k]]

    def counts(self, m: int) -> dict:
        """Number of cells over each m-stage tree."""
        return {t: len(v) for t, v in self._trees.items() if t.stage == m}

    def __contains__(self, x) -> bool:
        return x in self._trees.get(shape(x), ())

    shape = staticmethod(shape)
    src = staticmethod(src)
    tgt = staticmethod(tgt)

    def identity(self, n: int):
        return KId(n)

    def compose(self, x, labels):
        y = compose(x, labels)
        return y if y in self else None

    def contraction(self, t: BTree, f, g):
        return bare(Gen(t, f, g))

    def check_contraction_laws(self) -> list[str]:
        """Faces lie over the boundary tree, and bare generators have their declared faces."""
        problems = []
        for x in self.all_cells():
            if stage(x) == 0:
                continue
            b = boundary(shape(x))
            if shape(src(x)) != b or shape(tgt(x)) != b:
                problems.append(f"faces of {x!r} are not over the boundary")
            if stage(x) >= 2 and (src(src(x)) != src(tgt(x)) or tgt(src(x)) != tgt(tgt(x))):
                problems.append(f"globularity fails at {x!r}")
        for g in self.generators:
            if src(bare(g)) != g.src or tgt(bare(g)) != g.tgt:
                problems.append(f"contraction law fails at {g!r}")
        return problems


def _distributions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _distributions(total - first, parts - 1):
            yield (first,) + rest


def generate_K(dim_bound: int, size_bound=4, gen_bound=2,
               gen_filter: Callable[[Gen], bool] | None = None) -> KFragment:
    """Cells of K of stage <= dim_bound whose tree has at most size_bound edges
    and whose term has at most gen_bound generator occurrences.  Both bounds
    may be per-stage tuples."""
    by_stage: list[dict] = [{0: [KId(0)]}]
    generators: list[Gen] = []
    for m in range(1, dim_bound + 1):
        sb, gb = _bound_at(size_bound, m), _bound_at(gen_bound, m)
        below = {t: [x for layer in (by_stage[m - 1],) for xs in layer.values() for x in xs if shape(x) == t]
                 for t in {boundary(u) for u in trees(m, sb)}}
        gens = []
        for t in trees(m, sb):
            pool = below.get(boundary(t), [])
            for f in pool:
                for g in pool:
                    if matching(f, g):
                        gen = Gen(t, f, g)
                        if gen_filter is None or gen_filter(gen):
                            gens.append(gen)
        generators.extend(gens)
        layer: dict = {0: [KId(m)] if size(upsilon(m)) <= sb else []}
        for k in range(1, gb + 1):
            found = set()
            for gen in gens:
                maxc = maximal_cells(gen.tree)
                dims = [glob_index(gen.tree)[c][0] for c in maxc]
                for alloc in _distributions(k - 1, len(maxc)):
                    grouped = []
                    for d, a in zip(dims, alloc):
                        src_layer = by_stage[d] if d < m else layer
                        groups: dict = {}
                        for y in src_layer.get(a, []):
                            groups.setdefault(shape(y), []).append(y)
                        grouped.append(groups)
                    # prune on the composite tree before trying individual cells
                    for shapes in product(*grouped):
                        try:
                            r, _ = substitute(gen.tree, dict(zip(maxc, shapes)))
                        except BTreeError:
                            continue
                        if size(r) > sb:
                            continue
                        for args in product(*(g[u] for g, u in zip(grouped, shapes))):
                            x = KNode(gen, args)
                            try:
                                full_args(x)
                                shape(x)
                            except (BTreeError, OperadError):
                                continue
                            found.add(x)
            layer[k] = sorted(found, key=kkey)
        by_stage.append(layer)
    return KFragment(dim_bound, size_bound, gen_bound, tuple(by_stage), tuple(generators))


# -- truncation K_n --------------------------------------------------------------------------

@dataclass(frozen=True)
class KClass:
    """A top-stage cell of K_n: all n-cells of K with this tree and these faces."""

    tree: BTree
    src: object
    tgt: object

    def __repr__(self):
        return f"[{self.tree!r}: {self.src!r} => {self.tgt!r}]"


@dataclass(frozen=True, eq=False)
class KnFragment:
    n: int
    base: KFragment
    top: tuple

    def trees(self) -> list[BTree]:
        return [t for t in self.base.trees() if t.stage <= self.n]

    def cells(self, t: BTree) -> list:
        if t.stage < self.n:
            return self.base.cells(t)
        if t.stage == self.n:
            return [c for c in self.top if c.tree == t]
        return []

    def shape(self, x):
        return x.tree if isinstance(x, KClass) else shape(x)

    def src(self, x):
        return x.src if isinstance(x, KClass) else src(x)

    def tgt(self, x):
        return x.tgt if isinstance(x, KClass) else tgt(x)

    def identity(self, m: int):
        if m == self.n:
            return KClass(upsilon(m), KId(m - 1), KId(m - 1)) if m else KClass(upsilon(0), None, None)
        return KId(m)

    def classify(self, x) -> KClass:
        if self.n == 0:
            return KClass(shape(x), None, None)
        return KClass(shape(x), src(x), tgt(x))

    def compose(self, x, labels):
        if not isinstance(x, KClass):
            y = self.base.compose(x, labels)
            return y
        t = x.tree
        full = complete_labels_st(t, {c: labels[c] for c in maximal_cells(t)}, self.src, self.tgt)
        r, _ = substitute(t, {c: self.shape(v) for c, v in full.items() if c in maximal_cells(t)})
        if self.n == 0:
            y = KClass(r, None, None)
        else:
            faces = []
            for which, face in (("s", x.src), ("t", x.tgt)):
                inc = face_inclusion(t, which)
                b = boundary(t)
                faces.append(compose(face, {c: full[inc[c]] for c in maximal_cells(b)}))
            y = KClass(r, faces[0], faces[1])
        return y if y in self.top else None

    def contraction(self, t: BTree, f, g):
        return KClass(t, f, g)


def generate_K_n(n: int, size_bound=4, gen_bound=2,
                 gen_filter: Callable[[Gen], bool] | None = None) -> KnFragment:
    """K_n: stages below n as in K, stage n identified by (tree, source, target)."""
    base = generate_K(n, size_bound, gen_bound, gen_filter)
    frag = KnFragment(n, base, ())
    top = {frag.classify(x) for x in base.all_cells(n)}
    return KnFragment(n, base, tuple(sorted(top, key=lambda c: (c.tree.sort_key(), atom_key(repr(c))))))


# -- maps out of K ---------------------------------------------------------------------

def count_contraction_maps(K: KFragment, target, limit: int = 2) -> int:
    """Number of maps from the fragment K into target (an operad exposing
    ``contraction(tree, f, g)``) preserving shapes, faces, identities, the
    chosen contraction and composition.  Exhaustive over the cells of target;
    stops once ``limit`` maps are found."""
    cells = sorted(K.all_cells(), key=lambda x: (stage(x), gcount(x), atom_key(repr(x))))
    phi: dict = {}
    found = 0

    def allowed(x, y) -> bool:
        if target.shape(y) != shape(x):
            return False
        if stage(x) >= 1:
            for face, tface in ((src, target.src), (tgt, target.tgt)):
                f = face(x)
                if f in phi and tface(y) != phi[f]:
                    return False
        if isinstance(x, KId):
            return y == target.identity(x.n)
        g = x.gen
        b = bare(g)
        if x == b:
            if g.src in phi and g.tgt in phi:
                return y == target.contraction(g.tree, phi[g.src], phi[g.tgt])
            return True
        args = _arg_map(x)
        if b in phi and all(a in phi for a in args.values()):
            return y == target.compose(phi[b], {c: phi[a] for c, a in args.items()})
        return True

    # iterative depth-first search; the fragment can hold thousands of cells
    stack = [iter([y for y in target.cells(shape(cells[0])) if allowed(cells[0], y)])] if cells else []
    chosen: list = []
    if not cells:
        return 1
    while stack and found < limit:
        i = len(stack) - 1
        y = next(stack[-1], None)
        if len(chosen) > i:
            del phi[cells[i]]
            chosen.pop()
        if y is None:
            stack.pop()
            continue
        phi[cells[i]] = y
        chosen.append(y)
        if i + 1 == len(cells):
            found += 1
            continue
        x = cells[i + 1]
        stack.append(iter([z for z in target.cells(shape(x)) if allowed(x, z)]))
    return found


# -- JSON -----------------------------------------------------------------------------

def kcell_to_json(x):
    if isinstance(x, KId):
        return {"id": x.n}
    if isinstance(x, KClass):
        return {"class": x.tree.to_json(), "stage": x.tree.stage,
                "src": None if x.src is None else kcell_to_json(x.src),
                "tgt": None if x.tgt is None else kcell_to_json(x.tgt)}
    g = x.gen
    return {"gen": {"tree": g.tree.to_json(), "stage": g.tree.stage,
                    "src": kcell_to_json(g.src), "tgt": kcell_to_json(g.tgt)},
            "args": [kcell_to_json(a) for a in x.args]}


def kcell_from_json(data):
    from .btree import from_json as tree_from_json
    if "id" in data:
        return KId(data["id"])
    if "class" in data:
        t = tree_from_json(data["class"], data["stage"])
        face = lambda v: None if v is None else kcell_from_json(v)  # noqa: E731
        return KClass(t, face(data["src"]), face(data["tgt"]))
    g = data["gen"]
    gen = Gen(tree_from_json(g["tree"], g["stage"]), kcell_from_json(g["src"]), kcell_from_json(g["tgt"]))
    x = KNode(gen, tuple(kcell_from_json(a) for a in data["args"]))
    full_args(x)
    return x
