"""Free multicategories on graphs, and the structured-category adjunction.

Arrows of a free multicategory are well-founded terms:

* ``FId(s)``: the identity on an object,
* ``FGen(g)``: a bare generator,
* ``FNode(g, inner)``: a generator whose domain slots carry further arrows.

``FNode(g, inner)`` with every inner arrow an identity is normalised to
``FGen(g)``, so structural equality is equality of arrows.  Composition is
grafting into the identity leaves, which keeps terms in this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Mapping

from .finbase import FinMap, FinSet, atom_key, atom_to_str
from .monadkit import MonadInstance
from .multicat import MGraph, Multicat, MulticatError, MultiMap, arity_bounded_configurations
from .reports import Report


@dataclass(frozen=True)
class FId:
    obj: Any

    def sort_key(self):
        return (0, atom_key(self.obj))


@dataclass(frozen=True)
class FGen:
    gen: Any

    def sort_key(self):
        return (1, atom_key(self.gen))


@dataclass(frozen=True)
class FNode:
    gen: Any
    inner: Any  # element of T(FreeArrow)

    def sort_key(self):
        return (2, atom_key(self.gen), atom_key(self.inner))


FreeArrow = FId | FGen | FNode


class FreeMulticat:
    """Grafting calculus for the free multicategory on a graph G."""

    def __init__(self, G: MGraph, gen_weight: Callable | None = None, id_weight: int = 0):
        """Sizes count gen_weight(g) per generator occurrence (default 1) and
        id_weight per identity leaf (default 0)."""
        if not G.monad.planar:
            raise MulticatError("free multicategories need a planar (cartesian) instance")
        self.G = G
        self.M = G.monad
        self.gen_weight = gen_weight or (lambda g: 1)
        self.id_weight = id_weight
        if any(self.gen_weight(g) < 1 for g in G.C1):
            raise MulticatError("generator weights must be positive")

    # -- structure of terms ------------------------------------------------------
    def node(self, g, inner) -> FreeArrow:
        M = self.M
        if [self.cod(x) for x in M.atoms(inner)] != M.atoms(self.G.d[g]) or \
                M.shape_of(inner) != M.shape_of(self.G.d[g]):
            raise MulticatError("inner arrows do not match the generator's domain")
        if all(isinstance(x, FId) for x in M.atoms(inner)):
            return FGen(g)
        return FNode(g, inner)

    def dom(self, f: FreeArrow):
        M = self.M
        if isinstance(f, FId):
            return M.unit(f.obj)
        if isinstance(f, FGen):
            return self.G.d[f.gen]
        return M.mult(M.fmap(self.dom, f.inner))

    def cod(self, f: FreeArrow):
        return f.obj if isinstance(f, FId) else self.G.c[f.gen]

    def size(self, f: FreeArrow) -> int:
        if isinstance(f, FId):
            return self.id_weight
        if isinstance(f, FGen):
            return self.gen_weight(f.gen) + self.id_weight * len(self.M.atoms(self.G.d[f.gen]))
        return self.gen_weight(f.gen) + sum(self.size(x) for x in self.M.atoms(f.inner))

    def depth(self, f: FreeArrow) -> int:
        if isinstance(f, FId):
            return 0
        if isinstance(f, FGen):
            return 1
        return 1 + max(self.depth(x) for x in self.M.atoms(f.inner))

    def inner_of(self, f: FreeArrow):
        """The inner configuration of a generator term (identities for FGen)."""
        if isinstance(f, FGen):
            return self.M.fmap(FId, self.G.d[f.gen])
        return f.inner

    # -- composition ---------------------------------------------------------
    def compose(self, f: FreeArrow, config) -> FreeArrow:
        """Graft config (an element of T(arrows) over dom f) onto f."""
        M = self.M
        if M.fmap(self.cod, config) != self.dom(f):
            raise MulticatError("configuration does not match the domain")
        if isinstance(f, FId):
            (x,) = M.atoms(config)
            return x
        inner = self.inner_of(f)
        groups = M.unflatten(M.fmap(self.dom, inner), config)
        shape, parts = M.decompose(inner)
        _, gs = M.decompose(groups)
        return self.node(f.gen, M.fill(shape, [self.compose(p, q) for p, q in zip(parts, gs)]))

    # -- enumeration ---------------------------------------------------------
    def arrows(self, bound: int) -> list:
        """All arrows of size <= bound, in canonical order."""
        by_size: list[list] = [[] for _ in range(max(bound, 0) + 1)]
        if self.id_weight <= bound:
            by_size[self.id_weight].extend(FId(s) for s in self.G.C0)
        for n in range(1, bound + 1):
            for g in self.G.C1:
                rest = n - self.gen_weight(g)
                if rest < 0:
                    continue
                shape, slots = self.M.decompose(self.G.d[g])
                for parts in self._fill_slots(slots, rest, by_size):
                    by_size[n].append(self.node(g, self.M.fill(shape, parts)))
        out = [f for lvl in by_size for f in lvl]
        return sorted(set(out), key=lambda f: (self.size(f), atom_key(f)))

    def _fill_slots(self, slots, total, by_size):
        """Choices of one arrow per slot (matching codomains) with sizes summing to total."""
        if not slots:
            if total == 0:
                yield []
            return
        first, rest = slots[0], slots[1:]
        for k in range(total + 1):
            for f in by_size[k]:
                if self.cod(f) != first:
                    continue
                for tail in self._fill_slots(rest, total - k, by_size):
                    yield [f] + tail

    def iterates(self, n: int, bound: int) -> list[set]:
        """A(0) = identities, A(k+1) = identities + G1 applied to A(k); each
        stage restricted to arrows of size <= bound."""
        stages = [{FId(s) for s in self.G.C0}]
        for _ in range(n):
            prev = stages[-1]
            nxt = {FId(s) for s in self.G.C0}
            by_cod: dict = {}
            for f in prev:
                by_cod.setdefault(self.cod(f), []).append(f)
            for g in self.G.C1:
                shape, slots = self.M.decompose(self.G.d[g])
                for parts in product(*(by_cod.get(s, ()) for s in slots)):
                    if self.gen_weight(g) + sum(self.size(p) for p in parts) <= bound:
                        nxt.add(self.node(g, self.M.fill(shape, list(parts))))
            stages.append(nxt)
        return stages

    # -- JSON ---------------------------------------------------------------
    def to_json(self, f: FreeArrow):
        if isinstance(f, FId):
            return {"id": atom_to_str(f.obj)}
        if isinstance(f, FGen):
            return {"gen": atom_to_str(f.gen)}
        return {"outer": atom_to_str(f.gen), "inner": self.M.to_json(f.inner, atom=self.to_json)}

    def from_json(self, data) -> FreeArrow:
        if "id" in data:
            return FId(data["id"])
        if "gen" in data:
            return FGen(data["gen"])
        return FNode(data["outer"], self.M.from_json(data["inner"], atom=self.from_json))


def free_multicategory(G: MGraph, bound: int) -> Multicat:
    """The fragment of the free multicategory on G with arrows of size <= bound.

    Composites larger than the bound are left out of the table but remain
    computable through ``meta["free"].compose``.
    """
    F = FreeMulticat(G)
    arrows = F.arrows(bound)
    C1 = FinSet(tuple(arrows))
    graph = MGraph(G.monad, G.C0, C1, {f: F.dom(f) for f in C1}, {f: F.cod(f) for f in C1})

    def composer(f, config):
        r = F.compose(f, config)
        return r if r in C1 else None

    by_size: list[list] = [[] for _ in range(bound + 1)]
    for f in arrows:
        by_size[F.size(f)].append(f)

    def configs(f):
        # grafting adds sizes, so only configurations within the remaining budget matter
        shape, slots = G.monad.decompose(F.dom(f))
        for r in range(bound - F.size(f) + 1):
            for parts in F._fill_slots(slots, r, by_size):
                yield G.monad.fill(shape, parts)

    return Multicat.build(graph, {s: FId(s) for s in G.C0}, composer,
                          meta={"kind": "free", "free": F, "bound": bound}, configs=configs)


def extend_graph_map(F: FreeMulticat, target: Multicat, phi0: Callable, phi1: Callable,
                     f: FreeArrow):
    """The value on f of the multicategory map induced by a graph map; None when
    a needed composite is not represented in the target."""
    M = F.M
    if isinstance(f, FId):
        return target.ids[phi0(f.obj)]
    if isinstance(f, FGen):
        return phi1(f.gen)
    parts = [extend_graph_map(F, target, phi0, phi1, x) for x in M.atoms(f.inner)]
    if any(p is None for p in parts):
        return None
    return target.comp.get((phi1(f.gen), M.fill(M.shape_of(f.inner), parts)))


# -- structured categories ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructCat:
    """A category object in T-algebras, given on finite windows.

    ``tensor0``/``tensor1`` multiply elements of T(objects)/T(arrows); they
    return None when the result falls outside the window.
    """

    monad: MonadInstance
    objects: FinSet
    arrows: FinSet
    dom: Mapping
    cod: Mapping
    ids: Mapping
    comp: Callable  # (g, f) -> g . f or None
    tensor0: Callable
    tensor1: Callable

    def hom(self, x, y) -> list:
        return [a for a in self.arrows if self.dom[a] == x and self.cod[a] == y]


def check_structured(D: StructCat, tensor_bound: int = 2) -> Report:
    M = D.monad
    rep = Report("structured category")
    for a in D.arrows:
        rep.tick()
        s, t = D.dom[a], D.cod[a]
        if D.comp(D.ids[t], a) != a or D.comp(a, D.ids[s]) != a:
            rep.fail("category-unit", a, "identity law fails")
    out_of: dict = {}
    for a in D.arrows:
        out_of.setdefault(D.dom[a], []).append(a)
    for f in D.arrows:
        for g in out_of.get(D.cod[f], ()):
            gf = D.comp(g, f)
            if gf is None:
                continue
            if gf not in D.arrows or D.dom[gf] != D.dom[f] or D.cod[gf] != D.cod[g]:
                rep.fail("category-typing", (g, f), "composite has wrong ends")
                continue
            for h in out_of.get(D.cod[g], ()):
                hg = D.comp(h, g)
                if hg is None:
                    continue
                l, r = D.comp(h, gf), D.comp(hg, f)
                if l is None or r is None:
                    continue
                rep.tick()
                if l != r:
                    rep.fail("category-associativity", (h, g, f), f"{l!r} != {r!r}")
    for x in M.enumerate(D.objects, tensor_bound):
        t = D.tensor0(x)
        if t is None:
            continue
        rep.tick()
        if D.tensor0(M.unit(t)) != t:
            rep.fail("tensor-unit", x, "tensor of a singleton is not itself")
    for a in M.enumerate(D.arrows, tensor_bound):
        t = D.tensor1(a)
        if t is None:
            continue
        rep.tick()
        if D.dom[t] != D.tensor0(M.fmap(D.dom.__getitem__, a)) or \
                D.cod[t] != D.tensor0(M.fmap(D.cod.__getitem__, a)):
            rep.fail("tensor-functorial", a, "tensor does not commute with dom/cod")
    return rep


def free_structured(C: Multicat, bound: int) -> StructCat:
    """Objects: elements of T C0 of size <= bound; arrows: elements x of T C1
    whose domain mult(T d x) and codomain T c x both have size <= bound."""
    M = C.monad
    objects = FinSet(tuple(M.enumerate(C.C0, bound)))
    arrows, dom, cod = [], {}, {}
    for x in M.enumerate(C.C1, bound):
        s = M.mult(M.fmap(C.d, x))
        if s in objects:
            arrows.append(x)
            dom[x], cod[x] = s, M.fmap(C.c, x)
    arrows_fs = FinSet(tuple(arrows))

    def comp(y, x):
        if cod[x] != dom[y]:
            raise MulticatError("arrows are not composable")
        groups = M.unflatten(M.fmap(C.d, y), x)
        shape, outer = M.decompose(y)
        parts = []
        for a, g in zip(outer, M.atoms(groups)):
            r = C.comp.get((a, g))
            if r is None:
                return None
            parts.append(r)
        r = M.fill(shape, parts)
        return r if r in arrows_fs else None

    def tensor0(e):
        r = M.mult(e)
        return r if r in objects else None

    def tensor1(e):
        r = M.mult(e)
        return r if r in arrows_fs else None

    ids = {s: M.fmap(C.ids.__getitem__, s) for s in objects}
    return StructCat(M, objects, arrows_fs, dom, cod, ids, comp, tensor0, tensor1)


def forget_structured(D: StructCat, bound: int) -> Multicat:
    """The underlying multicategory: arrows (xi, a) with xi in T(objects) of size
    <= bound and a an arrow out of tensor0(xi)."""
    M = D.monad
    arrows, d, c = [], {}, {}
    for xi in M.enumerate(D.objects, bound):
        t = D.tensor0(xi)
        if t is None:
            continue
        for a in D.arrows:
            if D.dom[a] == t:
                arrows.append((xi, a))
                d[(xi, a)], c[(xi, a)] = xi, D.cod[a]
    C1 = FinSet(tuple(arrows))
    graph = MGraph(M, D.objects, C1, d, c)
    ids = {s: (M.unit(s), D.ids[s]) for s in D.objects}

    def composer(outer, y):
        xi, a = outer
        shape, parts = M.decompose(y)
        new_xi = M.mult(M.fill(shape, [p[0] for p in parts]))
        tens = D.tensor1(M.fill(shape, [p[1] for p in parts]))
        if tens is None:
            return None
        r = D.comp(a, tens)
        if r is None:
            return None
        key = (new_xi, r)
        return key if key in C1 else None

    top = max((len(M.atoms(x)) for x in d.values()), default=0)
    return Multicat.build(graph, ids, composer, meta={"kind": "underlying"},
                          configs=lambda a: arity_bounded_configurations(graph, a, top))


def unit_embedding(C: Multicat, UFC: Multicat) -> MultiMap:
    """The unit C -> U F C: s |-> <s>, a |-> (<<s1>..<sn>>, <a>)."""
    M = C.monad
    return MultiMap.from_functions(
        C, UFC, M.unit, lambda a: (M.fmap(M.unit, C.d(a)), M.unit(a)))


def discrete_monoidal(monad: MonadInstance, elements, op: Callable, unit) -> StructCat:
    """A monoid as a discrete strict monoidal category: only identity arrows."""
    M = monad
    objects = FinSet.of(elements)
    arrows = FinSet(tuple(("id", m) for m in objects))

    def tensor0(e):
        acc = unit
        for m in M.atoms(e):
            acc = op(acc, m)
        return acc

    def tensor1(e):
        return ("id", tensor0(M.fmap(lambda a: a[1], e)))

    def comp(g, f):
        return g if g == f else None

    return StructCat(M, objects, arrows, {a: a[1] for a in arrows}, {a: a[1] for a in arrows},
                     {m: ("id", m) for m in objects}, comp, tensor0, tensor1)


def additive_naturals(monad: MonadInstance, bound: int) -> StructCat:
    """(N, +) as a one-object strict monoidal category, arrows 0..bound."""
    M = monad
    objects = FinSet(("*",))
    arrows = FinSet(tuple(range(bound + 1)))

    def comp(g, f):
        r = g + f
        return r if r <= bound else None

    def tensor1(e):
        r = sum(M.atoms(e))
        return r if r <= bound else None

    return StructCat(M, objects, arrows, {n: "*" for n in arrows}, {n: "*" for n in arrows},
                     {"*": 0}, comp, lambda e: "*", tensor1)
