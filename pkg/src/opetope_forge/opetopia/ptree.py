"""Planar trees: ``"*"`` is the bare edge, a tuple is a node with its children."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

LEAF = "*"


class TreeError(ValueError):
    pass


def is_ptree(t) -> bool:
    if t == LEAF:
        return True
    return isinstance(t, tuple) and all(is_ptree(c) for c in t)


def leaves(t) -> int:
    if t == LEAF:
        return 1
    return sum(leaves(c) for c in t)


def size(t) -> int:
    """Constructor count: every leaf and every node counts once."""
    if t == LEAF:
        return 1
    return 1 + sum(size(c) for c in t)


def node_count(t) -> int:
    if t == LEAF:
        return 0
    return 1 + sum(node_count(c) for c in t)


def arities(t) -> list[int]:
    """Arity of each node, in preorder."""
    if t == LEAF:
        return []
    out = [len(t)]
    for c in t:
        out.extend(arities(c))
    return out


def graft(base, parts: Sequence):
    """Put parts[i] on the i-th leaf of base (left to right)."""
    parts = list(parts)
    if len(parts) != leaves(base):
        raise TreeError(f"graft needs {leaves(base)} parts, got {len(parts)}")
    it = iter(parts)

    def go(t):
        if t == LEAF:
            return next(it)
        return tuple(go(c) for c in t)

    return go(base)


def substitute(t, labels: Sequence):
    """Replace the i-th node (preorder) of t by labels[i], a tree whose leaf
    count equals that node's arity."""
    labels = list(labels)
    if len(labels) != node_count(t):
        raise TreeError("one label per node is required")
    pos = 0

    def go(u):
        nonlocal pos
        if u == LEAF:
            return LEAF
        lab = labels[pos]
        pos += 1
        if leaves(lab) != len(u):
            raise TreeError(f"label with {leaves(lab)} leaves cannot replace a node of arity {len(u)}")
        return graft(lab, [go(c) for c in u])

    return go(t)


def prefixes(t) -> Iterator[tuple]:
    """Every way of writing t = graft(p, rest); yields (p, rest)."""
    yield LEAF, [t]
    if t == LEAF:
        return
    yield from _prefix_children(t, 0)


def _prefix_children(t, i):
    if i == len(t):
        yield (), []
        return
    for p, rest in prefixes(t[i]):
        for ps, rests in _prefix_children(t, i + 1):
            yield (p,) + ps, rest + rests


@lru_cache(maxsize=None)
def trees_of_size(n: int) -> tuple:
    """All planar trees with exactly n constructors, in canonical order."""
    if n <= 0:
        return ()
    out = [LEAF] if n == 1 else []
    out.extend(_forests(n - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _forests(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n + 1):
        for head in trees_of_size(k):
            for tail in _forests(n - k):
                out.append((head,) + tail)
    return tuple(out)


def trees_up_to(bound: int) -> list:
    return [t for n in range(1, bound + 1) for t in trees_of_size(n)]


def to_json(t):
    return LEAF if t == LEAF else [to_json(c) for c in t]


def from_json(data):
    if data == LEAF:
        return LEAF
    if isinstance(data, list):
        return tuple(from_json(c) for c in data)
    raise TreeError(f"not a tree: {data!r}")


def to_str(t) -> str:
    if t == LEAF:
        return "*"
    return "<" + ",".join(to_str(c) for c in t) + ">"
