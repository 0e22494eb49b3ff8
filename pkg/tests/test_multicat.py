from itertools import product

import pytest

from opetope_forge.finbase import FinMap, FinSet, SliceObj, all_maps
from opetope_forge.monadkit import CARTESIAN, FreeMonoid, get_instance
from opetope_forge.multicat import (AlgebraStr, MGraph, Multicat, MulticatError, MultiMap, algebra_structures,
                                    algebra_to_opfibration, category_multicat, check_blob_monad,
                                    check_multicategory, check_multimap, is_discrete_opfibration,
                                    opfibration_to_algebra, restrict_algebra, terminal_multicategory)


def cyclic(n):
    return category_multicat(["*"], {i: ("*", "*") for i in range(n)}, {"*": 0}, lambda g, f: (g + f) % n)


def arrow_category():
    arr = {"1a": ("a", "a"), "1b": ("b", "b"), "u": ("a", "b")}
    ids = {"1a", "1b"}
    return category_multicat(["a", "b"], arr, {"a": "1a", "b": "1b"},
                             lambda g, f: f if g in ids else g if f in ids else None)


def small_instances():
    out = []
    for name in CARTESIAN:
        M = get_instance(name)
        for b in range(1, 4):
            if len(set(M.enumerate(FinSet(("*",)), b)) | {M.unit("*")}) <= 6:
                out.append((f"terminal-{name}-{b}", terminal_multicategory(M, b)))
    out += [("z2", cyclic(2)), ("z3", cyclic(3)), ("z6", cyclic(6)), ("arrow", arrow_category())]
    return out


def carriers(C, max_size=3):
    for k in range(max_size + 1):
        X0 = FinSet.range(k)
        for p in all_maps(X0, C.C0):
            yield SliceObj(X0, p, C.C0)


def functor_count(C, X):
    """Brute force: actions of a small category on the fibres of X (oracle)."""
    fibres = {s: X.fibre(s) for s in C.C0}
    arrows = list(C.C1)
    choices = []
    for a in arrows:
        src, tgt = C.d(a), C.c(a)
        choices.append(list(product(fibres[tgt], repeat=len(fibres[src]))))
    count = 0
    for pick in product(*choices):
        act = {a: dict(zip(fibres[C.d(a)], imgs)) for a, imgs in zip(arrows, pick)}
        if any(act[C.ids[s]][x] != x for s in C.C0 for x in fibres[s]):
            continue
        ok = True
        for (g, f), r in C.comp.items():
            for x in fibres[C.d(f)]:
                if act[r][x] != act[g][act[f][x]]:
                    ok = False
        count += ok
    return count


@pytest.mark.parametrize("name", CARTESIAN)
def test_terminal_multicategories_satisfy_laws(name):
    assert check_multicategory(terminal_multicategory(get_instance(name), 3))


def test_json_round_trip():
    C = terminal_multicategory(FreeMonoid(), 2)
    back = Multicat.from_json(C.to_json())
    assert len(back.C1) == len(C.C1) and len(back.comp) == len(C.comp)
    assert check_multicategory(back)


def test_broken_composition_is_reported():
    C = cyclic(2)
    bad = dict(C.comp)
    bad[(1, 0)] = 0
    rep = check_multicategory(Multicat(C.graph, C.ids, bad))
    assert not rep


def test_identity_map_and_discrete_opfibration():
    C = cyclic(3)
    f = MultiMap.identity(C)
    assert check_multimap(f)
    assert is_discrete_opfibration(f)


def test_map_to_a_point_is_not_an_opfibration():
    C = cyclic(2)
    one = cyclic(1)
    f = MultiMap.from_functions(C, one, lambda s: s, lambda a: 0)
    assert check_multimap(f)
    assert not is_discrete_opfibration(f)


@pytest.mark.parametrize("C", [cyclic(2), cyclic(3), arrow_category()], ids=["z2", "z3", "arrow"])
def test_algebras_of_categories_are_functors(C):
    for X in carriers(C):
        assert len(algebra_structures(C, X)) == functor_count(C, X)


def test_monoid_algebras_of_terminal_plain_multicategory():
    # on two points, within arity 3, the unital associative structures found
    T = terminal_multicategory(FreeMonoid(), 3)
    X = SliceObj.from_function(FinSet.range(2), T.C0, lambda _: "*")
    hs = algebra_structures(T, X)
    for h in hs:
        AlgebraStr(T, X, h)
    xor = {(xi, a): sum(xi) % 2 for (xi, a) in hs[0]}
    assert xor in hs


@pytest.mark.parametrize("name,C", small_instances(), ids=[n for n, _ in small_instances()])
def test_algebra_opfibration_round_trip(name, C):
    for X in carriers(C):
        for h in algebra_structures(C, X):
            D, f = algebra_to_opfibration(C, AlgebraStr(C, X, h))
            assert is_discrete_opfibration(f)
            assert opfibration_to_algebra(C, f).h == h


@pytest.mark.parametrize("k", [1, 2, 3])
def test_blob_monad_laws_depth_two(k):
    T = terminal_multicategory(FreeMonoid(), 3)
    X = SliceObj.from_function(FinSet.range(k), T.C0, lambda _: "*")
    assert check_blob_monad(T, X, 2)


def test_restriction_along_identity_keeps_the_action():
    C = cyclic(2)
    X = SliceObj.from_function(FinSet.range(2), C.C0, lambda _: "*")
    h = algebra_structures(C, X)[-1]
    r = restrict_algebra(MultiMap.identity(C), AlgebraStr(C, X, h))
    assert len(r.h) == len(h)


def test_invalid_algebra_raises():
    C = cyclic(2)
    X = SliceObj.from_function(FinSet.range(2), C.C0, lambda _: "*")
    h = dict(algebra_structures(C, X)[0])
    key = next(k for k in h if k[1] == 0)
    h[key] = 1 - h[key]
    with pytest.raises(MulticatError):
        AlgebraStr(C, X, h)


def test_law_checker_agrees_with_direct_category_check():
    from opetope_forge.multicat import check_category_laws
    C = cyclic(3)
    arrows = {a: ("*", "*") for a in C.C1}
    verdicts = set()
    for key in C.comp:
        for v in C.C1:
            bad = dict(C.comp)
            bad[key] = v
            direct = check_category_laws(C.C0, arrows, C.ids, bad)
            assert bool(check_multicategory(Multicat(C.graph, C.ids, bad))) == direct
            verdicts.add(direct)
    assert verdicts == {True, False}
