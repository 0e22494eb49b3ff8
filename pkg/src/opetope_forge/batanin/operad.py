"""Globular operads, collections, contractions and algebras over bounded fragments.

An operad is anything providing

* ``trees()`` / ``cells(tree)``: the trees of the fragment and the cells over each;
* ``shape(x)``, ``src(x)``, ``tgt(x)``: src and tgt of a cell over a tree t with
  t.stage >= 1 are cells over the boundary of t;
* ``identity(n)``: the identity over the n-stage linear tree;
* ``compose(x, labels)``: labels on the maximal cells of glob(shape(x)).

Fragments may be partial: ``compose`` returns None when the composite falls
outside the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterator, Mapping

from ..finbase import atom_key
from .btree import (BTree, BTreeError, boundary, complete_labels_st, face_inclusion, glob_cells, maximal_cells, size,
                    substitute, top_cell, trees, upsilon)
from .globset import GlobSet, StrictOps, labellings, paste


class OperadError(ValueError):
    pass


def _bound_at(bound, stage: int) -> int:
    if isinstance(bound, int):
        return bound
    return bound[min(stage, len(bound) - 1)]


def full_labels(op, t: BTree, labels: Mapping) -> dict:
    """Labels on maximal cells extended to all of glob(t) using op's src/tgt."""
    return complete_labels_st(t, labels, op.src, op.tgt)


def argument_labellings(op, x) -> Iterator[dict]:
    """Consistent labellings of the maximal cells of glob(shape(x)) by cells of op
    whose composite tree is still one of op's trees."""
    t = op.shape(x)
    idx = {name: dim for name, dim, _, _ in glob_cells(t)}
    maxc = maximal_cells(t)
    inside = set(op.trees())
    by_tree = {u: op.cells(u) for u in inside}
    shape_pools = [[u for u in by_tree if u.stage == idx[c] and by_tree[u]] for c in maxc]
    for shapes in product(*shape_pools):
        try:
            r, _ = substitute(t, dict(zip(maxc, shapes)))
        except BTreeError:
            continue
        if r not in inside:
            continue
        for combo in product(*(by_tree[u] for u in shapes)):
            labels = dict(zip(maxc, combo))
            try:
                full_labels(op, t, labels)
            except BTreeError:
                continue
            yield labels


# -- the terminal operad -------------------------------------------------------------

@dataclass(frozen=True)
class TerminalOperad:
    """One cell per tree; composition is substitution."""

    max_stage: int
    size_bound: object = 4

    def trees(self) -> list[BTree]:
        return [t for n in range(self.max_stage + 1) for t in trees(n, _bound_at(self.size_bound, n))]

    def cells(self, t: BTree) -> list:
        if t.stage > self.max_stage or size(t) > _bound_at(self.size_bound, t.stage):
            return []
        return [t]

    def shape(self, x: BTree) -> BTree:
        return x

    def src(self, x: BTree) -> BTree:
        return boundary(x)

    tgt = src

    def identity(self, n: int) -> BTree:
        return upsilon(n)

    def compose(self, x: BTree, labels: Mapping):
        r, _ = substitute(x, labels)
        return r if self.cells(r) else None

    def contraction(self, t: BTree, f, g):
        return t


# -- finite collections ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteCollection:
    """Explicit cells over a finite set of trees.  Cells are pairs (tree, label)."""

    cells_by_tree: Mapping
    src_map: Mapping = field(default_factory=dict)
    tgt_map: Mapping = field(default_factory=dict)

    def trees(self) -> list[BTree]:
        return sorted(self.cells_by_tree, key=BTree.sort_key)

    def cells(self, t: BTree) -> list:
        return [(t, lab) for lab in self.cells_by_tree.get(t, ())]

    def shape(self, x):
        return x[0]

    def src(self, x):
        return self.src_map[x]

    def tgt(self, x):
        return self.tgt_map[x]


def check_collection(C) -> list[str]:
    """Globularity and fibre checks; returns the list of violations."""
    problems = []
    for t in C.trees():
        for x in C.cells(t):
            if t.stage == 0:
                continue
            b = boundary(t)
            s, tt = C.src(x), C.tgt(x)
            if C.shape(s) != b or C.shape(tt) != b:
                problems.append(f"faces of {x!r} are not over the boundary tree")
                continue
            if t.stage >= 2 and (C.src(s) != C.src(tt) or C.tgt(s) != C.tgt(tt)):
                problems.append(f"globularity fails at {x!r}")
    return problems


def check_operad(op, limit: int | None = None) -> list[str]:
    """Unit, face and associativity laws on every composite inside the fragment.
    ``limit`` caps the number of argument labellings tried per cell."""
    problems = []
    for t in op.trees():
        for x in op.cells(t):
            n = t.stage
            checked = 0
            ids = {c: op.identity(dim) for c, dim, _, _ in glob_cells(t) if c in maximal_cells(t)}
            if op.compose(x, ids) != x:
                problems.append(f"right unit fails at {x!r}")
            if op.compose(op.identity(n), {top_cell(n): x}) != x:
                problems.append(f"left unit fails at {x!r}")
            for L in argument_labellings(op, x):
                checked += 1
                if limit is not None and checked > limit:
                    break
                y = op.compose(x, L)
                if y is None:
                    continue
                r, emb = substitute(t, {c: op.shape(v) for c, v in L.items()})
                if op.shape(y) != r:
                    problems.append(f"composite {y!r} lies over the wrong tree")
                if n >= 1:
                    problems.extend(_face_law(op, x, L, y))
                for inner_labels in _second_layer(op, t, L, emb, r):
                    lhs = op.compose(y, inner_labels)
                    mid = _compose_args(op, t, L, emb, inner_labels)
                    if lhs is None or mid is None:
                        continue
                    rhs = op.compose(x, mid)
                    if rhs is not None and lhs != rhs:
                        problems.append(f"associativity fails at {x!r}")
    return problems


def _face_law(op, x, L, y):
    t = op.shape(x)
    full = full_labels(op, t, L)
    out = []
    for which, face in (("s", op.src), ("t", op.tgt)):
        inc = face_inclusion(t, which)
        b = boundary(t)
        restricted = {c: full[inc[c]] for c in maximal_cells(b)}
        expect = op.compose(face(x), restricted)
        if expect is not None and face(y) != expect:
            out.append(f"{which}-face law fails at {x!r}")
    return out


def _second_layer(op, t, L, emb, r, cap: int = 4):
    """A few labellings of glob(r) by op cells, enough to exercise associativity."""
    maxc = maximal_cells(r)
    dims = {name: dim for name, dim, _, _ in glob_cells(r)}
    pools = [[y for u in op.trees() if u.stage == dims[c] for y in op.cells(u)] for c in maxc]
    n = 0
    for combo in product(*pools):
        labels = dict(zip(maxc, combo))
        try:
            full_labels(op, r, labels)
        except BTreeError:
            continue
        yield labels
        n += 1
        if n >= cap:
            return


def _compose_args(op, t, L, emb, inner):
    full_inner = full_labels(op, substitute(t, {c: op.shape(v) for c, v in L.items()})[0], inner)
    full_L = full_labels(op, t, L)
    out = {}
    for c in maximal_cells(t):
        u = op.shape(full_L[c])
        sub = {y: full_inner[emb[c][y]] for y in maximal_cells(u)}
        v = op.compose(full_L[c], sub)
        if v is None:
            return None
        out[c] = v
    return out


# -- contractions ------------------------------------------------------------------

def matching(op, f, g) -> bool:
    t = op.shape(f)
    if op.shape(g) != t:
        return False
    if t.stage == 0:
        return True
    return op.src(f) == op.src(g) and op.tgt(f) == op.tgt(g)


def contraction_choices(C, max_stage: int | None = None) -> dict:
    """For every tree t of stage >= 1 and matching pair (f, g) over its boundary,
    the cells of C over t with source f and target g."""
    out = {}
    ts = [t for t in C.trees() if t.stage >= 1 and (max_stage is None or t.stage <= max_stage)]
    for t in ts:
        fibre = C.cells(t)
        below = C.cells(boundary(t))
        for f in below:
            for g in below:
                if matching(C, f, g):
                    out[(t, f, g)] = [x for x in fibre if C.src(x) == f and C.tgt(x) == g]
    return out


def count_contractions(C, max_stage: int | None = None) -> int:
    return prod(len(v) for v in contraction_choices(C, max_stage).values())


def contractions(C, max_stage: int | None = None) -> Iterator[dict]:
    choices = contraction_choices(C, max_stage)
    keys = sorted(choices, key=lambda k: (k[0].sort_key(), atom_key(k[1:])))
    for combo in product(*(choices[k] for k in keys)):
        yield dict(zip(keys, combo))


def describe_contractions(C, max_stage: int | None = None) -> str:
    n = count_contractions(C, max_stage)
    return "none" if n == 0 else "unique" if n == 1 else f"{n}"


# -- algebras ------------------------------------------------------------------------

def labelling_key(t: BTree, lab: Mapping) -> tuple:
    return tuple(lab[name] for name, *_ in glob_cells(t))


def algebra_eval(table: Mapping, f, t: BTree, lab: Mapping):
    try:
        return table[(f, labelling_key(t, lab))]
    except KeyError:
        raise OperadError(f"no value recorded for {f!r} at this labelling") from None


def terminal_algebra_table(op: TerminalOperad, X: GlobSet, ops: StrictOps) -> dict:
    """Algebra of the terminal operad induced by a strict omega-category on X."""
    table = {}
    for t in op.trees():
        if t.stage > X.N:
            continue
        for lab in labellings(X, t):
            table[(t, labelling_key(t, lab))] = paste(t, lab, ops)
    return table


def check_algebra_table(op, X: GlobSet, table: Mapping, max_compositions: int | None = None) -> list[str]:
    """Action axioms of an op-algebra on X, over every entry the table records."""
    problems = []
    for t in op.trees():
        if t.stage > X.N:
            continue
        labs = labellings(X, t)
        for f in op.cells(t):
            for lab in labs:
                key = (f, labelling_key(t, lab))
                if key not in table:
                    continue
                v = table[key]
                if v not in X.cells[t.stage]:
                    problems.append(f"value of {f!r} is not a {t.stage}-cell")
                    continue
                if t.stage >= 1:
                    problems.extend(_algebra_faces(op, X, table, f, t, lab, v))
                if f == op.identity(t.stage) and v != lab[top_cell(t.stage)]:
                    problems.append(f"unit axiom fails over {t!r}")
    done = 0
    for t in op.trees():
        if t.stage > X.N:
            continue
        for f in op.cells(t):
            for L in argument_labellings(op, f):
                y = op.compose(f, L)
                if y is None:
                    continue
                full_L = full_labels(op, t, L)
                r, emb = substitute(t, {c: op.shape(v) for c, v in L.items()})
                for lab in labellings(X, r):
                    done += 1
                    if max_compositions is not None and done > max_compositions:
                        return problems
                    inner = {}
                    try:
                        for c, *_ in glob_cells(t):
                            u = op.shape(full_L[c])
                            sub = {z: lab[emb[c][z]] for z, *_ in glob_cells(u)}
                            inner[c] = algebra_eval(table, full_L[c], u, sub)
                        lhs = algebra_eval(table, y, r, lab)
                        rhs = algebra_eval(table, f, t, inner)
                    except OperadError:
                        continue
                    if lhs != rhs:
                        problems.append(f"composition axiom fails at {f!r}")
    return problems


def _algebra_faces(op, X, table, f, t, lab, v):
    out = []
    b = boundary(t)
    for which, face, xface in (("s", op.src, X.s), ("t", op.tgt, X.t)):
        inc = face_inclusion(t, which)
        sub = {c: lab[inc[c]] for c, *_ in glob_cells(b)}
        key = (face(f), labelling_key(b, sub))
        if key in table and xface[t.stage - 1][v] != table[key]:
            out.append(f"{which}-face of the action fails at {f!r}")
    return out
