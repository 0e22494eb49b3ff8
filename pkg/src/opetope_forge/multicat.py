"""Multicategories over a cartesian monad, their maps, and their algebras.

A multicategory is stored concretely: finite object and arrow sets, the domain
map ``d`` into T(objects), the codomain map ``c``, identities, and a finite
composition table.  The table is keyed by ``(outer, configuration)`` where a
configuration is an element of T(arrows) whose image under T c is d(outer).

Fragments are allowed to be partial: a composite whose result is not among
the represented arrows is simply absent, and law checks skip instances that
would need it.  Unit-law composites are always required.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Callable, Iterable, Mapping

from .finbase import FinMap, FinSet, SliceObj, atom_key, atom_to_str
from .monadkit import MonadError, MonadInstance, get_instance
from .reports import Report


class MulticatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MGraph:
    monad: MonadInstance
    C0: FinSet
    C1: FinSet
    d: Mapping
    c: Mapping

    def __post_init__(self):
        M = self.monad
        for a in self.C1:
            if a not in self.d or a not in self.c:
                raise MulticatError(f"arrow {a!r} lacks a domain or codomain")
            if not M.is_element(self.d[a], self.C0):
                raise MulticatError(f"domain of {a!r} is not an element over the objects")
            if self.c[a] not in self.C0:
                raise MulticatError(f"codomain of {a!r} is not an object")

    @cached_property
    def by_cod(self) -> dict:
        out: dict = {s: [] for s in self.C0}
        for a in self.C1:
            out[self.c[a]].append(a)
        return out

    @cached_property
    def by_dom(self) -> dict:
        out: dict = {}
        for a in self.C1:
            out.setdefault(self.d[a], []).append(a)
        return out

    def configurations(self, a) -> list:
        """Elements x of T C1 with T c (x) = d(a)."""
        return self.monad.fibre(self.d[a], lambda s: self.by_cod.get(s, ()))


def arity_bounded_configurations(graph: MGraph, a, max_arity: int):
    """Configurations over d(a) whose inner arrows have at most max_arity inputs
    in total.  A composite's arity is that total, so this loses nothing when the
    represented arrows all have arity <= max_arity."""
    M = graph.monad
    shape, slots = M.decompose(graph.d[a])
    pools = [[(b, len(M.atoms(graph.d[b]))) for b in graph.by_cod.get(s, ())] for s in slots]

    def go(i, budget, acc):
        if i == len(pools):
            yield M.fill(shape, list(acc))
            return
        for b, k in pools[i]:
            if k <= budget:
                acc.append(b)
                yield from go(i + 1, budget - k, acc)
                acc.pop()

    yield from go(0, max_arity, [])


@dataclass(frozen=True, eq=False)
class Multicat:
    graph: MGraph
    ids: Mapping
    comp: Mapping
    meta: dict = field(default_factory=dict)

    @property
    def monad(self) -> MonadInstance:
        return self.graph.monad

    @property
    def C0(self) -> FinSet:
        return self.graph.C0

    @property
    def C1(self) -> FinSet:
        return self.graph.C1

    def d(self, a):
        return self.graph.d[a]

    def c(self, a):
        return self.graph.c[a]

    def configurations(self, a) -> list:
        return self.graph.configurations(a)

    def composite_domain(self, outer, inner):
        M = self.monad
        return M.mult(M.fmap(self.graph.d.__getitem__, inner))

    def is_configuration(self, outer, inner) -> bool:
        M = self.monad
        if not M.is_element(inner, self.C1):
            return False
        return M.fmap(self.graph.c.__getitem__, inner) == self.d(outer)

    def has_composite(self, outer, inner) -> bool:
        return (outer, inner) in self.comp

    def compose(self, outer, inner):
        if outer not in self.C1:
            raise MulticatError(f"{outer!r} is not an arrow")
        if not self.is_configuration(outer, inner):
            raise MulticatError("codomains of the inner arrows do not match the outer domain")
        try:
            return self.comp[(outer, inner)]
        except KeyError:
            raise MulticatError("composite lies outside the represented fragment") from None

    @cached_property
    def comp_by_outer(self) -> dict:
        out: dict = {}
        for (a, x), r in self.comp.items():
            out.setdefault(a, []).append((x, r))
        return out

    @classmethod
    def build(cls, graph: MGraph, ids: Mapping, composer: Callable, meta=None,
              configs: Callable | None = None) -> "Multicat":
        """Tabulate composer(outer, configuration) over every configuration.

        composer returns an arrow, or None when the composite is not represented.
        configs(a), when given, restricts the configurations tried for a; it
        must include every configuration whose composite is represented.
        """
        table = {}
        for a in graph.C1:
            for x in (configs(a) if configs else graph.configurations(a)):
                r = composer(a, x)
                if r is not None:
                    table[(a, x)] = r
        return cls(graph, dict(ids), table, dict(meta or {}))

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        M = self.monad
        return {
            "monad": M.name,
            "objects": self.C0.to_json(),
            "arrows": [{"id": atom_to_str(a), "dom": M.to_json(self.d(a)),
                        "cod": atom_to_str(self.c(a))} for a in self.C1],
            "ids": {atom_to_str(s): atom_to_str(self.ids[s]) for s in self.C0},
            "comp": [{"outer": atom_to_str(a), "inner": M.to_json(x),
                      "result": atom_to_str(r)}
                     for (a, x), r in sorted(self.comp.items(),
                                             key=lambda kv: (atom_key(kv[0][0]), atom_key(kv[0][1])))],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Multicat":
        M = get_instance(data["monad"])
        C0 = FinSet.of(data["objects"])
        arrows = data["arrows"]
        C1 = FinSet.of(a["id"] for a in arrows)
        d = {a["id"]: M.from_json(a["dom"]) for a in arrows}
        c = {a["id"]: a["cod"] for a in arrows}
        graph = MGraph(M, C0, C1, d, c)
        comp = {(e["outer"], M.from_json(e["inner"])): e["result"] for e in data["comp"]}
        return cls(graph, dict(data["ids"]), comp)


def compose_cells(C: Multicat, outer, inner):
    return C.compose(outer, inner)


def category_multicat(objects: Iterable, arrows: Mapping, ids: Mapping,
                      comp: Mapping | Callable) -> Multicat:
    """A small category as an (identity monad) multicategory.

    arrows maps arrow -> (source, target); comp maps (g, f) -> g.f or is a
    function of (g, f) returning the composite (None if unrepresented).
    """
    from .monadkit import Identity
    M = Identity()
    C0 = FinSet.of(objects)
    C1 = FinSet.of(arrows)
    graph = MGraph(M, C0, C1, {a: arrows[a][0] for a in C1}, {a: arrows[a][1] for a in C1})
    fn = comp if callable(comp) else (lambda g, f: comp.get((g, f)))
    return Multicat.build(graph, ids, fn)


def terminal_multicategory(M: MonadInstance, arity_bound: int) -> Multicat:
    """One object and one arrow for each element of T1 of size <= arity_bound."""
    star = "*"
    C0 = FinSet((star,))
    arrows = set(M.enumerate(C0, arity_bound)) | {M.unit(star)}
    C1 = FinSet.of(arrows)
    graph = MGraph(M, C0, C1, {e: e for e in C1}, {e: star for e in C1})

    def composer(a, x):
        r = M.mult(x)
        return r if r in C1 else None

    return Multicat.build(graph, {star: M.unit(star)}, composer,
                          meta={"kind": "terminal", "arity_bound": arity_bound})


# -- law checking -------------------------------------------------------------

def check_multicategory(C: Multicat) -> Report:
    M = C.monad
    rep = Report(f"multicategory over {M.name} with {len(C.C1)} arrows")
    for s in C.C0:
        rep.tick()
        i = C.ids.get(s)
        if i not in C.C1:
            rep.fail("identity", s, "no identity arrow")
            continue
        if C.d(i) != M.unit(s) or C.c(i) != s:
            rep.fail("identity", s, "identity has the wrong domain or codomain")
    if not rep.passed:
        return rep

    for (a, x), r in C.comp.items():
        rep.tick()
        if a not in C.C1 or not C.is_configuration(a, x):
            rep.fail("composition-typing", (a, x), "table entry is not a configuration")
            continue
        if r not in C.C1:
            rep.fail("composition-typing", (a, x), f"result {r!r} is not an arrow")
            continue
        if C.d(r) != C.composite_domain(a, x) or C.c(r) != C.c(a):
            rep.fail("composition-typing", (a, x), "result has the wrong domain or codomain")

    for a in C.C1:
        rep.tick(2)
        left = C.comp.get((C.ids[C.c(a)], M.unit(a)))
        if left != a:
            rep.fail("left-unit", a, f"id . a = {left!r}")
        right = C.comp.get((a, M.fmap(C.ids.__getitem__, C.d(a))))
        if right != a:
            rep.fail("right-unit", a, f"a . ids = {right!r}")

    # every triple is reached from its outer composite: regroup z along x
    by_outer = C.comp_by_outer
    for (a, x), ax in C.comp.items():
        if a not in C.C1 or ax not in C.C1 or not C.is_configuration(a, x):
            continue
        shape, inner = M.decompose(x)
        template = M.fmap(C.d, x)
        for z, lhs in by_outer.get(ax, ()):
            try:
                y = M.unflatten(template, z)
            except MonadError:
                continue
            parts = [C.comp.get((b, yb)) for b, yb in zip(inner, M.atoms(y))]
            if any(p is None for p in parts):
                continue
            rhs = C.comp.get((a, M.fill(shape, parts)))
            if rhs is None:
                continue
            rep.tick()
            if lhs != rhs:
                rep.fail("associativity", (a, x, y), f"{lhs!r} != {rhs!r}")
    return rep


def check_category_laws(objects, arrows: Mapping, ids: Mapping, comp: Mapping) -> bool:
    """Direct category-law checker (no monad machinery)."""
    for a, (s, t) in arrows.items():
        if comp.get((ids[t], a)) != a or comp.get((a, ids[s])) != a:
            return False
    for (g, f), gf in comp.items():
        if arrows[f][1] != arrows[g][0]:
            return False
        if arrows[gf] != (arrows[f][0], arrows[g][1]):
            return False
    for (g, f), gf in comp.items():
        for h in arrows:
            if arrows[h][0] != arrows[g][1]:
                continue
            hg = comp.get((h, g))
            if hg is None or (h, gf) not in comp or (hg, f) not in comp:
                continue
            if comp[(h, gf)] != comp[(hg, f)]:
                return False
    return True


# -- maps ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultiMap:
    dom: Multicat
    cod: Multicat
    f0: FinMap
    f1: FinMap

    def __post_init__(self):
        if self.f0.dom != self.dom.C0 or self.f0.cod != self.cod.C0:
            raise MulticatError("object map has the wrong endpoints")
        if self.f1.dom != self.dom.C1 or self.f1.cod != self.cod.C1:
            raise MulticatError("arrow map has the wrong endpoints")

    @classmethod
    def from_functions(cls, dom: Multicat, cod: Multicat, f0: Callable, f1: Callable) -> "MultiMap":
        return cls(dom, cod, FinMap.from_function(dom.C0, cod.C0, f0),
                   FinMap.from_function(dom.C1, cod.C1, f1))

    @classmethod
    def identity(cls, C: Multicat) -> "MultiMap":
        return cls(C, C, FinMap.identity(C.C0), FinMap.identity(C.C1))

    def then(self, g: "MultiMap") -> "MultiMap":
        return MultiMap(self.dom, g.cod, self.f0.then(g.f0), self.f1.then(g.f1))


def check_multimap(f: MultiMap) -> Report:
    D, C = f.dom, f.cod
    M = D.monad
    rep = Report("multicategory map")
    for b in D.C1:
        rep.tick()
        if C.d(f.f1(b)) != M.fmap(f.f0, D.d(b)):
            rep.fail("domain-square", b, "d' f1 != T f0 d")
        if C.c(f.f1(b)) != f.f0(D.c(b)):
            rep.fail("codomain-square", b, "c' f1 != f0 c")
    for s in D.C0:
        rep.tick()
        if f.f1(D.ids[s]) != C.ids[f.f0(s)]:
            rep.fail("identities", s, "identity not preserved")
    for (b, y), r in D.comp.items():
        target = C.comp.get((f.f1(b), M.fmap(f.f1, y)))
        if target is None:
            continue
        rep.tick()
        if target != f.f1(r):
            rep.fail("composition", (b, y), "composite not preserved")
    return rep


def is_discrete_opfibration(f: MultiMap) -> bool:
    """Every arrow a of the base and every lift of d(a) has exactly one arrow lift."""
    if not check_multimap(f):
        return False
    D, C = f.dom, f.cod
    M = D.monad
    pre0: dict = {}
    for s in D.C0:
        pre0.setdefault(f.f0(s), []).append(s)
    lifts: dict = {}
    for b in D.C1:
        key = (f.f1(b), D.d(b))
        if key in lifts:
            return False
        lifts[key] = b
    for a in C.C1:
        for xi in M.fibre(C.d(a), lambda s: pre0.get(s, ())):
            if (a, xi) not in lifts:
                return False
    return True


# -- the blob construction and algebras ------------------------------------------

def _blob_level(C: Multicat, items: list, budget: int | None):
    """Pairs (xi, a) with xi in T(items) over d(a).

    items are (element, object, weight) triples.  With a budget, only pairs
    whose flat weight s - k + sum(w) fits are produced; returns triples again.
    """
    M = C.monad
    by_obj: dict = {}
    for e, o, w in items:
        by_obj.setdefault(o, []).append((e, w))
    for lst in by_obj.values():
        lst.sort(key=lambda p: (p[1], atom_key(p[0])))
    out = []
    for a in C.C1:
        shape, objs = M.decompose(C.d(a))
        s = M.size(C.d(a))
        base = s - len(objs)
        if budget is not None and base > budget:
            continue

        def rec(i, acc, w):
            if i == len(objs):
                out.append(((M.fill(shape, acc), a), C.c(a), base + w))
                return
            for e, we in by_obj.get(objs[i], ()):
                if budget is not None and base + w + we > budget:
                    break
                rec(i + 1, acc + [e], w + we)

        rec(0, [], 0)
    return out


def blob_apply(C: Multicat, X: SliceObj) -> SliceObj:
    """The slice object of pairs (xi, a) with T p (xi) = d(a), projected by c."""
    if X.base != C.C0:
        raise MulticatError("carrier must lie over the objects")
    pairs = _blob_level(C, [(x, X.proj(x), 1) for x in X.total], None)
    total = FinSet(tuple(p for p, _, _ in pairs))
    return SliceObj(total, FinMap(total, C.C0, tuple((p, o) for p, o, _ in pairs)), C.C0)


def blob_unit(C: Multicat, p: Callable, x):
    return (C.monad.unit(x), C.ids[p(x)])


def blob_mult(C: Multicat, e):
    """Multiply an element of the doubly-applied blob; None if unrepresented."""
    M = C.monad
    Xi, a = e
    shape, inner = M.decompose(Xi)
    xi = M.mult(M.fill(shape, [q[0] for q in inner]))
    r = C.comp.get((a, M.fill(shape, [q[1] for q in inner])))
    return None if r is None else (xi, r)


def blob_fmap(C: Multicat, g: Callable, e):
    xi, a = e
    return (C.monad.fmap(g, xi), a)


def _max_dom_size(C: Multicat) -> int:
    return max((C.monad.size(C.d(a)) for a in C.C1), default=0)


def _blob_tower(C: Multicat, X: SliceObj, depth: int):
    """Levels X., X.., X... restricted to elements whose composites fit."""
    budget = max(1, _max_dom_size(C))
    level = [(x, X.proj(x), 1) for x in X.total]
    levels = []
    for i in range(depth):
        level = _blob_level(C, [(e, o, max(1, w)) for e, o, w in level], budget if i else None)
        levels.append(level)
    return levels


def check_blob_monad(C: Multicat, X: SliceObj, depth: int = 2) -> Report:
    if depth not in (1, 2):
        raise MulticatError("depth must be 1 or 2")
    M = C.monad
    rep = Report(f"blob monad, depth {depth}")
    levels = _blob_tower(C, X, depth + 1)
    for e, _, _ in levels[0]:
        rep.tick()
        xi, a = e
        u = blob_mult(C, (M.unit(e), C.ids[C.c(a)]))
        if u != e:
            rep.fail("blob-left-unit", e, f"got {u!r}")
        v = blob_mult(C, blob_fmap(C, lambda x: blob_unit(C, X.proj, x), e))
        if v != e:
            rep.fail("blob-right-unit", e, f"got {v!r}")
    if depth == 2:
        for e3, _, _ in levels[2]:
            inner_mult = blob_mult(C, blob_fmap(C, lambda q: blob_mult(C, q), e3)) \
                if all(blob_mult(C, q) is not None for q in M.atoms(e3[0])) else None
            outer = blob_mult(C, e3)
            if inner_mult is None or outer is None:
                continue
            lhs = blob_mult(C, outer)
            if lhs is None:
                continue
            rep.tick()
            if lhs != inner_mult:
                rep.fail("blob-associativity", e3, f"{lhs!r} != {inner_mult!r}")
    return rep


def check_algebra(C: Multicat, X: SliceObj, h: Mapping) -> Report:
    M = C.monad
    rep = Report("algebra laws")
    levels = _blob_tower(C, X, 2)
    for (xi, a), o, _ in levels[0]:
        rep.tick()
        if (xi, a) not in h:
            rep.fail("structure-total", (xi, a), "structure map undefined")
            return rep
        y = h[(xi, a)]
        if y not in X.total or X.proj(y) != C.c(a):
            rep.fail("structure-typing", (xi, a), f"{y!r} does not lie over c(a)")
    if not rep.passed:
        return rep
    for x in X.total:
        rep.tick()
        if h[blob_unit(C, X.proj, x)] != x:
            rep.fail("algebra-unit", x, "h(unit x, id) != x")
    for e2, _, _ in levels[1]:
        flat = blob_mult(C, e2)
        if flat is None:
            continue
        rep.tick()
        lhs = h[flat]
        rhs = h[blob_fmap(C, h.__getitem__, e2)]
        if lhs != rhs:
            rep.fail("algebra-associativity", e2, f"{lhs!r} != {rhs!r}")
    return rep


@dataclass(frozen=True, eq=False)
class AlgebraStr:
    """An algebra: a carrier over the objects and a structure map on its blob.

    The laws are checked on construction.
    """

    base: Multicat
    carrier: SliceObj
    h: Mapping

    def __post_init__(self):
        rep = check_algebra(self.base, self.carrier, self.h)
        if not rep:
            raise MulticatError(f"invalid algebra: {rep.violations[0]}")

    def act(self, xi, a):
        return self.h[(xi, a)]


def algebra_to_opfibration(C: Multicat, alg: AlgebraStr) -> tuple[Multicat, MultiMap]:
    M = C.monad
    X = alg.carrier
    blob = blob_apply(C, X)
    D1 = blob.total
    graph = MGraph(M, X.total, D1, {e: e[0] for e in D1}, {e: alg.h[e] for e in D1})
    ids = {x: blob_unit(C, X.proj, x) for x in X.total}

    def composer(outer, y):
        r = blob_mult(C, (y, outer[1]))
        return r if r is not None and r in D1 else None

    top = max((M.arity(C.d(a)) for a in C.C1), default=0)
    D = Multicat.build(graph, ids, composer, meta={"kind": "opfibration-domain"},
                       configs=lambda a: arity_bounded_configurations(graph, a, top))
    f = MultiMap(D, C, X.proj, FinMap(D1, C.C1, tuple((e, e[1]) for e in D1)))
    return D, f


def opfibration_to_algebra(C: Multicat, f: MultiMap) -> AlgebraStr:
    if f.cod is not C and (f.cod.C1 != C.C1 or f.cod.C0 != C.C0):
        raise MulticatError("map does not land in the given multicategory")
    if not is_discrete_opfibration(f):
        raise MulticatError("not a discrete opfibration")
    D = f.dom
    X = SliceObj(D.C0, f.f0, C.C0)
    lift = {(f.f1(b), D.d(b)): b for b in D.C1}
    h = {}
    for (xi, a) in blob_apply(C, X).total:
        h[(xi, a)] = D.c(lift[(a, xi)])
    return AlgebraStr(C, X, h)


def restrict_algebra(g: MultiMap, alg: AlgebraStr) -> AlgebraStr:
    """Pull an algebra over g.cod back along g to an algebra over g.dom."""
    C, Cp = g.dom, g.cod
    M = C.monad
    Xp = alg.carrier
    total = FinSet(tuple((s, x) for s in C.C0 for x in Xp.total if g.f0(s) == Xp.proj(x)))
    X = SliceObj(total, FinMap(total, C.C0, tuple((p, p[0]) for p in total)), C.C0)
    h = {}
    for (xi, a) in blob_apply(C, X).total:
        xi_p = M.fmap(lambda p: p[1], xi)
        h[(xi, a)] = (C.c(a), alg.h[(xi_p, g.f1(a))])
    return AlgebraStr(C, X, h)


def algebra_structures(C: Multicat, X: SliceObj) -> list[dict]:
    """Every structure map on the carrier satisfying the algebra laws (within
    the represented fragment), by backtracking with early law checks."""
    M = C.monad
    levels = _blob_tower(C, X, 2)
    entries = [e for e, _, _ in levels[0]]
    entries.sort(key=lambda e: (M.size(e[0]), atom_key(e)))
    forced = {blob_unit(C, X.proj, x): x for x in X.total}
    candidates = {e: [x for x in X.total if X.proj(x) == C.c(e[1])] for e in entries}
    constraints = [(e2, blob_mult(C, e2)) for e2, _, _ in levels[1]]
    constraints = [(e2, flat) for e2, flat in constraints if flat is not None]
    watch: dict = {}
    for idx, (e2, flat) in enumerate(constraints):
        keys = {flat} | set(M.atoms(e2[0]))
        for k in keys:
            watch.setdefault(k, []).append(idx)
        watch.setdefault(("outer", e2[1]), []).append(idx)

    h: dict = {}

    def ok(idx) -> bool:
        e2, flat = constraints[idx]
        if flat not in h:
            return True
        try:
            inner = blob_fmap(C, h.__getitem__, e2)
        except KeyError:
            return True
        if inner not in h:
            return True
        return h[flat] == h[inner]

    results = []

    def rec(i):
        if i == len(entries):
            results.append(dict(h))
            return
        e = entries[i]
        opts = [forced[e]] if e in forced else candidates[e]
        for x in opts:
            h[e] = x
            checks = watch.get(e, []) + watch.get(("outer", e[1]), [])
            if all(ok(j) for j in checks):
                rec(i + 1)
            del h[e]

    rec(0)
    return [r for r in results if check_algebra(C, X, r)]
