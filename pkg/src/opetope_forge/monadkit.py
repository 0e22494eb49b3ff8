"""Cartesian monads on finite sets, with size-bounded windows onto T X.

Every shipped instance is *shape based*: an element of T X is a shape (an
element of T applied to a set of numbered slots) together with the atoms that
fill the slots, read left to right.  ``decompose``/``fill`` convert between the
two views, and that is all the generic multicategory code needs from a monad.

Sizes count constructors: a sequence element, a tree node and a tree leaf each
count one.  For nested elements (of T T X and T T T X) the relevant measure is
the *flat size*, the size of the fully multiplied element; bounding the flat
size and the outer size keeps every window finite.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Any, Callable, Iterable, Sequence

from .finbase import FinMap, FinSet, atom_key, atom_to_str, is_pullback, pullback
from .reports import Report


class MonadError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    """A labelled leaf of a tree element."""

    label: Any

    def sort_key(self):
        return atom_key(self.label)

    def __repr__(self):
        return f"Leaf({self.label!r})"


class MonadInstance(ABC):
    name: str = "abstract"
    #: whether shapes fill slots in an order-preserving way (false for multisets)
    planar: bool = True

    # -- structure -------------------------------------------------------
    @abstractmethod
    def size(self, e) -> int: ...

    @abstractmethod
    def unit(self, x): ...

    @abstractmethod
    def decompose(self, e) -> tuple[Any, list]:
        """Split e into (shape over slots 0..k-1, list of k atoms)."""

    @abstractmethod
    def fill(self, shape, atoms: Sequence):
        """Inverse of decompose."""

    @abstractmethod
    def shapes(self, max_size: int) -> list[tuple[Any, int, int]]:
        """All (shape, slot count, size) with size <= max_size."""

    @abstractmethod
    def _join(self, shape, inner: list):
        """Multiply: the outer shape's slots hold the inner elements."""

    @abstractmethod
    def is_shape(self, e) -> bool:
        """Is e a syntactically well-formed element (atoms unchecked)?"""

    # -- derived operations ---------------------------------------------------
    def fmap(self, f: Callable, e):
        shape, atoms = self.decompose(e)
        return self.fill(shape, [f(a) for a in atoms])

    def atoms(self, e) -> list:
        return self.decompose(e)[1]

    def shape_of(self, e):
        return self.decompose(e)[0]

    def arity(self, e) -> int:
        return len(self.atoms(e))

    def mult(self, ee):
        if not self.is_shape(ee):
            raise MonadError(f"malformed element: {ee!r}")
        shape, inner = self.decompose(ee)
        for x in inner:
            if not self.is_shape(x):
                raise MonadError(f"malformed nesting: {x!r} is not an element")
        return self._join(shape, list(inner))

    def is_element(self, e, X: FinSet | None = None) -> bool:
        if not self.is_shape(e):
            return False
        return X is None or all(a in X for a in self.atoms(e))

    def elem_key(self, e):
        return (self.size(e), atom_key(e))

    def same_shape(self, e1, e2) -> bool:
        return self.shape_of(e1) == self.shape_of(e2)

    def enumerate(self, X: FinSet, bound: int) -> list:
        return [e for e, _ in self.enumerate_weighted([(x, 1) for x in X], bound)]

    def enumerate_weighted(self, items: Sequence[tuple[Any, int]], bound: int) -> list:
        """Elements e of T(items) with size(e) <= bound and flat size <= bound.

        The flat size is size(e) - slots + sum of the weights in the slots,
        which is the size of the multiplied element when the weights are
        themselves sizes.  Returns (element, flat size) pairs in canonical order.
        """
        items = sorted(items, key=lambda p: (p[1], atom_key(p[0])))
        out = []
        for shape, k, s in self.shapes(bound):
            budget = bound - (s - k)
            if budget < 0:
                continue
            for chosen, w in _weighted_tuples(items, k, budget):
                out.append((self.fill(shape, chosen), s - k + w))
        out.sort(key=lambda p: (p[1], self.elem_key(p[0])))
        return out

    def fibre(self, target, preimages: Callable[[Any], Sequence]) -> list:
        """All e with T h (e) = target, given preimages(y) = h^{-1}(y)."""
        shape, atoms = self.decompose(target)
        choices = [list(preimages(y)) for y in atoms]
        return [self.fill(shape, list(c)) for c in product(*choices)]

    def unflatten(self, template, flat):
        """Regroup flat (in T A) along the nesting of template (in T T Z).

        Returns v in T T A with the same nested shape as template and
        mult(v) = flat, or raises if the shapes do not fit.
        """
        outer, inner = self.decompose(template)
        _, atoms = self.decompose(flat)
        pos = 0
        groups = []
        for z in inner:
            zs, za = self.decompose(z)
            groups.append(self.fill(zs, atoms[pos:pos + len(za)]))
            pos += len(za)
        if pos != len(atoms):
            raise MonadError("unflatten: slot counts do not match")
        v = self.fill(outer, groups)
        if self.mult(v) != flat:
            raise MonadError("unflatten: shapes do not match")
        return v

    # -- JSON -------------------------------------------------------------
    def to_json(self, e, atom: Callable = atom_to_str):
        raise NotImplementedError

    def from_json(self, data, atom: Callable = lambda s: s):
        raise NotImplementedError

    def __repr__(self):
        return f"<monad {self.name}>"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))


def _weighted_tuples(items, k, budget):
    """Sequences of k items (with repetition) whose weights sum to <= budget."""
    if k == 0:
        yield [], 0
        return
    for a, w in items:
        if w > budget:
            break
        for rest, wr in _weighted_tuples(items, k - 1, budget - w):
            yield [a] + rest, w + wr


class Identity(MonadInstance):
    name = "identity"

    def size(self, e):
        return 1

    def unit(self, x):
        return x

    def decompose(self, e):
        return 0, [e]

    def fill(self, shape, atoms):
        (x,) = atoms
        return x

    def shapes(self, max_size):
        return [(0, 1, 1)] if max_size >= 1 else []

    def _join(self, shape, inner):
        return inner[0]

    def is_shape(self, e):
        return True

    def to_json(self, e, atom=atom_to_str):
        return atom(e)

    def from_json(self, data, atom=lambda s: s):
        return atom(data)


class FreeMonoid(MonadInstance):
    name = "free-monoid"

    def size(self, e):
        return len(e)

    def unit(self, x):
        return (x,)

    def decompose(self, e):
        return tuple(range(len(e))), list(e)

    def fill(self, shape, atoms):
        if len(shape) != len(atoms):
            raise MonadError("wrong number of atoms for shape")
        return tuple(atoms)

    def shapes(self, max_size):
        return [(tuple(range(k)), k, k) for k in range(max_size + 1)]

    def _join(self, shape, inner):
        return tuple(a for seq in inner for a in seq)

    def is_shape(self, e):
        return isinstance(e, tuple)

    def to_json(self, e, atom=atom_to_str):
        return [atom(a) for a in e]

    def from_json(self, data, atom=lambda s: s):
        if not isinstance(data, list):
            raise MonadError("free-monoid element must be an array")
        return tuple(atom(a) for a in data)


class MaybePoint(MonadInstance):
    """X + 1: either inl(x) or the added point inr."""

    name = "maybe-point"
    INR = ("inr",)

    def size(self, e):
        return 1

    def unit(self, x):
        return ("inl", x)

    def decompose(self, e):
        if e == self.INR:
            return self.INR, []
        return ("inl", 0), [e[1]]

    def fill(self, shape, atoms):
        if shape == self.INR:
            if atoms:
                raise MonadError("inr has no slots")
            return self.INR
        (x,) = atoms
        return ("inl", x)

    def shapes(self, max_size):
        return [(self.INR, 0, 1), (("inl", 0), 1, 1)] if max_size >= 1 else []

    def _join(self, shape, inner):
        return self.INR if shape == self.INR else inner[0]

    def is_shape(self, e):
        return e == self.INR or (isinstance(e, tuple) and len(e) == 2 and e[0] == "inl")

    def to_json(self, e, atom=atom_to_str):
        return {"inr": None} if e == self.INR else {"inl": atom(e[1])}

    def from_json(self, data, atom=lambda s: s):
        if data == {"inr": None}:
            return self.INR
        if isinstance(data, dict) and set(data) == {"inl"}:
            return ("inl", atom(data["inl"]))
        raise MonadError(f"bad maybe-point element {data!r}")


@lru_cache(maxsize=None)
def _tree_shapes_exact(n: int) -> tuple:
    """Unlabelled trees of size exactly n; leaves are Leaf(None)."""
    if n <= 0:
        return ()
    out = []
    if n == 1:
        out.append(Leaf(None))
    out.extend(_tree_seqs(n - 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _tree_seqs(total: int) -> tuple:
    if total == 0:
        return ((),)
    out = []
    for s in range(1, total + 1):
        for t in _tree_shapes_exact(s):
            for rest in _tree_seqs(total - s):
                out.append((t,) + rest)
    return tuple(out)


class BDTree(MonadInstance):
    """Planar trees whose leaves carry atoms: one n-ary operation for every n."""

    name = "bd-tree"

    def size(self, e):
        if isinstance(e, Leaf):
            return 1
        return 1 + sum(self.size(c) for c in e)

    def unit(self, x):
        return Leaf(x)

    def decompose(self, e):
        atoms: list = []

        def go(t):
            if isinstance(t, Leaf):
                atoms.append(t.label)
                return Leaf(len(atoms) - 1)
            return tuple(go(c) for c in t)

        return go(e), atoms

    def fill(self, shape, atoms):
        def go(t):
            if isinstance(t, Leaf):
                return Leaf(atoms[t.label])
            return tuple(go(c) for c in t)

        return go(shape)

    def shapes(self, max_size):
        out = []
        for n in range(1, max_size + 1):
            for t in _tree_shapes_exact(n):
                counter = iter(range(n))
                out.append((_number_leaves(t, counter), _leaf_count(t), n))
        return out

    def _join(self, shape, inner):
        def go(t):
            if isinstance(t, Leaf):
                return inner[t.label]
            return tuple(go(c) for c in t)

        return go(shape)

    def is_shape(self, e):
        if isinstance(e, Leaf):
            return True
        return isinstance(e, tuple) and all(self.is_shape(c) for c in e)

    def to_json(self, e, atom=atom_to_str):
        if isinstance(e, Leaf):
            return atom(e.label)
        return [self.to_json(c, atom) for c in e]

    def from_json(self, data, atom=lambda s: s):
        if isinstance(data, list):
            return tuple(self.from_json(c, atom) for c in data)
        return Leaf(atom(data))


def _leaf_count(t) -> int:
    return 1 if isinstance(t, Leaf) else sum(_leaf_count(c) for c in t)


def _number_leaves(t, counter):
    if isinstance(t, Leaf):
        return Leaf(next(counter))
    return tuple(_number_leaves(c, counter) for c in t)


class FreeCommMonoid(MonadInstance):
    """Finite multisets, stored as sorted tuples.  Not cartesian; kept as a
    negative control and never used to build multicategories."""

    name = "free-comm-monoid"
    planar = False

    def _sort(self, xs):
        return tuple(sorted(xs, key=atom_key))

    def size(self, e):
        return len(e)

    def unit(self, x):
        return (x,)

    def decompose(self, e):
        return tuple(range(len(e))), list(e)

    def fill(self, shape, atoms):
        return self._sort(atoms)

    def shapes(self, max_size):
        return [(tuple(range(k)), k, k) for k in range(max_size + 1)]

    def _join(self, shape, inner):
        return self._sort(a for m in inner for a in m)

    def is_shape(self, e):
        return isinstance(e, tuple) and e == self._sort(e)

    def enumerate_weighted(self, items, bound):
        items = sorted(items, key=lambda p: (p[1], atom_key(p[0])))
        out = []
        for k in range(bound + 1):
            for combo in combinations_with_replacement(items, k):
                w = sum(p[1] for p in combo)
                if w <= bound:
                    out.append((self._sort(p[0] for p in combo), w))
        out.sort(key=lambda p: (p[1], self.elem_key(p[0])))
        return out

    def to_json(self, e, atom=atom_to_str):
        return [atom(a) for a in e]

    def from_json(self, data, atom=lambda s: s):
        return self._sort(atom(a) for a in data)


INSTANCES: dict[str, MonadInstance] = {
    m.name: m for m in (Identity(), FreeMonoid(), MaybePoint(), BDTree(), FreeCommMonoid())
}
CARTESIAN = ("identity", "free-monoid", "maybe-point", "bd-tree")


def get_instance(name: str) -> MonadInstance:
    try:
        return INSTANCES[name]
    except KeyError:
        raise MonadError(f"unknown monad instance {name!r}") from None


# -- module-level API --------------------------------------------------------

def unit(M: MonadInstance, X: FinSet, x):
    if x not in X:
        raise MonadError(f"{x!r} is not in the base set")
    return M.unit(x)


def mult(M: MonadInstance, e):
    return M.mult(e)


def enumerate_elements(M: MonadInstance, X: FinSet, bound: int) -> list:
    if bound < 0:
        raise MonadError("bound must be non-negative")
    return M.enumerate(X, bound)


def nested(M: MonadInstance, X: FinSet, depth: int, bound: int) -> list:
    """Elements of T^depth X with outer size and flat size <= bound, as
    (element, flat size) pairs.

    Inner elements of flat size 0 (empty sequences) are weighted 1, otherwise
    towers of empty sequences would make the window infinite.
    """
    level = [(e, M.size(e)) for e in M.enumerate(X, bound)]
    for _ in range(depth - 1):
        level = M.enumerate_weighted([(e, max(1, w)) for e, w in level], bound)
    return level


def check_monad_laws(M: MonadInstance, X: FinSet, bound: int) -> Report:
    rep = Report(f"monad laws for {M.name} on {len(X)} atoms, bound {bound}")
    for e in M.enumerate(X, bound):
        rep.tick()
        left = M.mult(M.unit(e))
        if left != e:
            rep.fail("left-unit", e, f"mult(unit(e)) = {left!r}")
        right = M.mult(M.fmap(M.unit, e))
        if right != e:
            rep.fail("right-unit", e, f"mult(T unit(e)) = {right!r}")
    for E, _ in nested(M, X, 3, bound):
        rep.tick()
        a = M.mult(M.mult(E))
        b = M.mult(M.fmap(M.mult, E))
        if a != b:
            rep.fail("associativity", E, f"{a!r} != {b!r}")
    return rep


def _bounded_square(rep: Report, law: str, P, A, B, C, p1, p2, f, g) -> None:
    """Check a commuting square of finite windows is a pullback; record witnesses."""
    sets = {name: FinSet.of(xs) for name, xs in (("P", P), ("A", A), ("B", B), ("C", C))}
    maps = []
    for (src, dst, fn) in (("P", "A", p1), ("P", "B", p2), ("A", "C", f), ("B", "C", g)):
        maps.append(FinMap.from_function(sets[src], sets[dst], fn))
    rep.tick()
    if is_pullback(*maps):
        return
    apex, _, _ = pullback(maps[2], maps[3])
    seen: dict = {}
    for x in sets["P"]:
        key = (maps[0](x), maps[1](x))
        if key in seen:
            rep.fail(law, (seen[key], x), "two elements with the same image in the fibre product")
            return
        seen[key] = x
    for pair in apex:
        if pair not in seen:
            rep.fail(law, pair, "fibre-product element with no preimage")
            return


def check_cartesian(M: MonadInstance, f: FinMap, bound: int) -> Report:
    """Bounded check that eta and mu are cartesian at f and that T preserves
    the kernel-pair pullback of f."""
    rep = Report(f"cartesianness of {M.name} at a map {len(f.dom)}->{len(f.cod)}, bound {bound}")
    X, Y = f.dom, f.cod
    TX = M.enumerate(X, bound)
    TY = M.enumerate(Y, bound)
    Tf = lambda u: M.fmap(f, u)

    # eta-naturality: X -> TX over Y -> TY
    _bounded_square(rep, "eta-naturality", list(X), TX, list(Y), TY,
                    M.unit, f, Tf, M.unit)

    # mu-naturality: TTX -> TX over TTY -> TY
    TTX = [v for v, _ in nested(M, X, 2, bound)]
    TTY = [w for w, _ in nested(M, Y, 2, bound)]
    _bounded_square(rep, "mu-naturality", TTX, TX, TTY, TY,
                    M.mult, lambda v: M.fmap(Tf, v), Tf, M.mult)

    # pullback preservation on the kernel pair of f
    P, pA, pB = pullback(f, f)
    TP = M.enumerate(P, bound)
    _bounded_square(rep, "pullback-preservation", TP, TX, TX, TY,
                    lambda e: M.fmap(pA, e), lambda e: M.fmap(pB, e), Tf, Tf)
    return rep
