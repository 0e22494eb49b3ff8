"""Exhaustive category-law check for pd_n via precomputed composition tables."""

from itertools import product

from opetope_forge.opetopia.pd import pd_compose, pd_hom, pd_identity


class LawFailure(AssertionError):
    pass


def check_category_tables(n, objs):
    """Compose every composable pair once, then compare (h.g).f with h.(g.f)
    row by row.  Returns the number of composable triples checked."""
    homs = {(a, b): pd_hom(n, a, b) for a in objs for b in objs}
    index, cod = {}, {}
    for (a, b), fs in homs.items():
        for f in fs:
            cod[index.setdefault(f, len(index))] = b
    comp = {}
    for a, b, c in product(objs, repeat=3):
        for f in homs[(a, b)]:
            for g in homs[(b, c)]:
                gf = pd_compose(n, g, f)
                if gf.dom != a or gf.cod != c:
                    raise LawFailure(f"composite of {g} and {f} has the wrong ends")
                comp[(index[g], index[f])] = index[gf]
    for (a, b), fs in homs.items():
        ia, ib = index[pd_identity(n, a)], index[pd_identity(n, b)]
        for f in fs:
            if not comp[(index[f], ia)] == index[f] == comp[(ib, index[f])]:
                raise LawFailure(f"unit law fails at {f}")
    by_pair = {k: [index[f] for f in fs] for k, fs in homs.items()}
    # post[x][d] lists h.x over hom(cod x, d); pre[f] sends y to y.f
    post = {x: {d: [comp[(h, x)] for h in by_pair[(cod[x], d)]] for d in objs} for x in cod}
    pre: dict = {}
    for (x, f), y in comp.items():
        pre.setdefault(f, {})[x] = y
    triples = 0
    for (g, f), gf in comp.items():
        right = pre[f].__getitem__
        for d in objs:
            lhs = post[gf][d]
            triples += len(lhs)
            if lhs != list(map(right, post[g][d])):
                raise LawFailure(f"associativity fails after composing {g} with {f}")
    return triples
