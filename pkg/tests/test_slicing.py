from functools import lru_cache
from itertools import product

import pytest

from opetope_forge.finbase import FinMap, FinSet, SliceObj
from opetope_forge.monadkit import FreeMonoid
from opetope_forge.multicat import (AlgebraStr, MulticatError, MultiMap, algebra_structures,
                                    algebra_to_opfibration, category_multicat, check_multicategory,
                                    terminal_multicategory)
from opetope_forge.opetopia.slicing import slice_by_algebra, slice_plus


def z2():
    return category_multicat(["*"], {0: ("*", "*"), 1: ("*", "*")}, {"*": 0}, lambda g, f: (g + f) % 2)


@lru_cache(maxsize=None)
def z2_plus():
    return slice_plus(z2(), 3).as_multicat()


def monoids_over_z2(n, phi):
    """Multiplication tables on n points that are monoids with phi a monoid
    map to Z/2 (brute force oracle)."""
    X = range(n)
    out = set()
    for tab in product(X, repeat=n * n):
        m = lambda a, b: tab[a * n + b]  # noqa: E731
        if any(m(m(a, b), c) != m(a, m(b, c)) for a in X for b in X for c in X):
            continue
        units = [e for e in X if all(m(e, a) == a == m(a, e) for a in X)]
        if not units or phi[units[0]] != 0:
            continue
        if any(phi[m(a, b)] != (phi[a] + phi[b]) % 2 for a in X for b in X):
            continue
        out.add(tab)
    return out


def test_slice_plus_of_z2_is_a_multicategory():
    S = slice_plus(z2(), 3)
    assert len(S.arrows) == 15
    assert check_multicategory(z2_plus())
    assert S.inputs(S.arrows[-1]) and S.hom([1, 1], 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_slice_algebras_are_monoids_over_z2(n):
    P = z2_plus()
    X = FinSet.range(n)
    for phi in product((0, 1), repeat=n):
        Xs = SliceObj(X, FinMap(X, P.C0, tuple(zip(X, phi))), P.C0)
        algs = algebra_structures(P, Xs)
        tables = {tuple(h[((x, y), ((phi[x], phi[y]), (phi[x] + phi[y]) % 2))] for x in X for y in X)
                  for h in algs}
        assert len(tables) == len(algs)
        assert tables == monoids_over_z2(n, phi)


def test_slicing_by_an_algebra_returns_its_opfibration_domain():
    C = z2()
    X = SliceObj.from_function(FinSet.range(2), C.C0, lambda _: "*")
    for h in algebra_structures(C, X):
        E, f = algebra_to_opfibration(C, AlgebraStr(C, X, h))
        D = slice_by_algebra(C, f)
        assert D.graph is E.graph and D.comp == E.comp
        assert D.meta["sliced_over"] is C


def test_slicing_rejects_non_opfibrations():
    C = z2()
    one = category_multicat(["*"], {0: ("*", "*")}, {"*": 0}, lambda g, f: 0)
    f = MultiMap.from_functions(one, C, lambda s: s, lambda a: 0)
    with pytest.raises(MulticatError):
        slice_by_algebra(C, f)


def test_slice_plus_needs_a_category_to_materialise():
    S = slice_plus(terminal_multicategory(FreeMonoid(), 2), 1)
    assert S.arrows
    with pytest.raises(MulticatError):
        S.as_multicat()
