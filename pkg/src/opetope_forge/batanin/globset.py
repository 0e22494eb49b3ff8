"""Truncated globular sets, labellings of globs, and strict pasting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Mapping

from ..finbase import FinSet, atom_to_str
from .btree import BTree, glob_cells, promote, trees


class GlobError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GlobSet:
    """cells[k] is the set of k-cells; s[k], t[k] send (k+1)-cells to k-cells."""

    N: int
    cells: tuple
    s: tuple
    t: tuple

    def __post_init__(self):
        if len(self.cells) != self.N + 1 or len(self.s) != self.N or len(self.t) != self.N:
            raise GlobError("need N+1 cell sets and N source/target maps")
        cells = tuple(c if isinstance(c, FinSet) else FinSet.of(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        for k in range(self.N):
            for x in cells[k + 1]:
                if self.s[k].get(x) not in cells[k] or self.t[k].get(x) not in cells[k]:
                    raise GlobError(f"face of {x!r} is not a {k}-cell")
        for k in range(1, self.N):
            for x in cells[k + 1]:
                sx, tx = self.s[k][x], self.t[k][x]
                if self.s[k - 1][sx] != self.s[k - 1][tx] or self.t[k - 1][sx] != self.t[k - 1][tx]:
                    raise GlobError(f"globularity fails at {x!r}")

    def src(self, x, k: int):
        """Source of the (k+1)-cell x."""
        return self.s[k][x]

    def tgt(self, x, k: int):
        return self.t[k][x]

    def counts(self) -> tuple:
        return tuple(len(c) for c in self.cells)

    def to_json(self) -> dict:
        return {"N": self.N,
                "cells": [c.to_json() for c in self.cells],
                "s": [{atom_to_str(x): atom_to_str(y) for x, y in sorted(m.items(), key=lambda kv: atom_to_str(kv[0]))}
                      for m in self.s],
                "t": [{atom_to_str(x): atom_to_str(y) for x, y in sorted(m.items(), key=lambda kv: atom_to_str(kv[0]))}
                      for m in self.t]}

    @classmethod
    def from_json(cls, data: dict) -> "GlobSet":
        return cls(data["N"], tuple(FinSet.of(c) for c in data["cells"]),
                   tuple(dict(m) for m in data["s"]), tuple(dict(m) for m in data["t"]))


def terminal_globset(N: int) -> GlobSet:
    return GlobSet(N, tuple(FinSet(("*",)) for _ in range(N + 1)),
                   tuple({"*": "*"} for _ in range(N)), tuple({"*": "*"} for _ in range(N)))


def tau_hat(t: BTree) -> GlobSet:
    cells = glob_cells(t)
    by_dim: list[list] = [[] for _ in range(t.stage + 1)]
    s: list[dict] = [{} for _ in range(t.stage)]
    tt: list[dict] = [{} for _ in range(t.stage)]
    for name, dim, src, tgt in cells:
        by_dim[dim].append(name)
        if dim:
            s[dim - 1][name] = src
            tt[dim - 1][name] = tgt
    return GlobSet(t.stage, tuple(FinSet.of(c) for c in by_dim), tuple(s), tuple(tt))


def labellings(X: GlobSet, t: BTree) -> list[dict]:
    """Every map of globular sets from the glob of t into X."""
    if t.stage > X.N:
        raise GlobError("tree stage exceeds the truncation of X")
    cells = sorted(glob_cells(t), key=lambda c: c[1])
    fibres: list[dict] = []
    for k in range(X.N):
        idx: dict = {}
        for x in X.cells[k + 1]:
            idx.setdefault((X.s[k][x], X.t[k][x]), []).append(x)
        fibres.append(idx)
    out = []
    lab: dict = {}

    def rec(i):
        if i == len(cells):
            out.append(dict(lab))
            return
        name, dim, src, tgt = cells[i]
        opts = X.cells[0] if dim == 0 else fibres[dim - 1].get((lab[src], lab[tgt]), ())
        for x in opts:
            lab[name] = x
            rec(i + 1)
        lab.pop(name, None)

    rec(0)
    return out


def omega_free(X: GlobSet, n: int, tree_bound: int) -> list[tuple]:
    """Pairs (tree, labelling) over every n-stage tree with <= tree_bound edges."""
    if n > X.N:
        raise GlobError("n exceeds the truncation of X")
    return [(t, lab) for t in trees(n, tree_bound) for lab in labellings(X, t)]


# -- strict pasting ---------------------------------------------------------------

@dataclass(frozen=True)
class StrictOps:
    """Composition data of a strict omega-category: comp(k, a, b) composes a
    then b along dimension k; ident(x) is the identity cell on x."""

    comp: Callable
    ident: Callable


def paste(t: BTree, labels: Mapping, ops: StrictOps):
    """Composite of a glob labelled in a strict omega-category (labels on all cells)."""

    def go(sub: BTree, wrap, shift):
        if sub.stage == 0:
            return labels[wrap(("v", 0))]
        if not sub.shape:
            x = labels[wrap(("v", 0))]
            for _ in range(sub.stage):
                x = ops.ident(x)
            return x
        parts = [go(child, (lambda c, i=i: wrap(("c", i, c))), shift + 1)
                 for i, child in enumerate(sub.children)]
        return reduce(lambda a, b: ops.comp(shift, a, b), parts)

    return go(t, lambda c: c, 0)


def _tree_comp(k: int, a: BTree, b: BTree) -> BTree:
    if a.stage != b.stage or a.stage <= k:
        raise GlobError("trees must share a stage above the composition dimension")
    if k == 0:
        return BTree(a.stage, a.shape + b.shape)
    if len(a.shape) != len(b.shape):
        raise GlobError("trees do not match along the composition face")
    return BTree(a.stage, tuple(_tree_comp(k - 1, x, y).shape for x, y in zip(a.children, b.children)))


TREE_OPS = StrictOps(_tree_comp, promote)
