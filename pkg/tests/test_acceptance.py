"""The ten acceptance criteria, each timed against its budget.  A summary line
per criterion is printed at the end of the run."""

from collections import Counter
from itertools import product
from math import comb

from lawcheck import check_category_tables
from test_kgen import INTERCHANGE_TREES, _instance, _interchange, binary_only, bracketings, path
from test_monadkit import ReversingMonoid
from test_multicat import carriers, small_instances
from test_opetopes import grammar_trees
from test_slicing import monoids_over_z2, z2_plus

from opetope_forge.batanin import (TerminalOperad, contractions, count_contractions, from_delta, generate_K,
                                   generate_K_n, to_delta, trees)
from opetope_forge.batanin.kgen import shape, src, tgt
from opetope_forge.cli import z2
from opetope_forge.finbase import FinMap, FinSet, SliceObj, all_maps
from opetope_forge.monadkit import (CARTESIAN, FreeCommMonoid, FreeMonoid, check_cartesian, check_monad_laws,
                                    get_instance)
from opetope_forge.multicat import (AlgebraStr, algebra_structures, algebra_to_opfibration, check_blob_monad,
                                    is_discrete_opfibration, opfibration_to_algebra, terminal_multicategory)
from opetope_forge.opetopia.pd import pd_hom, pd_objects
from opetope_forge.opetopia.slicing import slice_by_algebra
from opetope_forge.opetopia.tower import opetopes, size


def test_criterion_01_monad_laws(criterion):
    with criterion(1, "monad laws on sets <= 3, elements <= 4; corrupted instance caught", 5):
        for name in CARTESIAN:
            for n in range(4):
                rep = check_monad_laws(get_instance(name), FinSet.range(n), 4)
                assert rep.passed, (name, n, rep.summary())
        bad = check_monad_laws(ReversingMonoid(), FinSet.range(2), 4)
        assert not bad.passed
        assert bad.violations[0].witness is not None


def test_criterion_02_cartesian(criterion):
    with criterion(2, "four instances cartesian; free commutative monoid fails at 2 -> 1", 5):
        for name in CARTESIAN:
            M = get_instance(name)
            for a, b in product(range(4), range(1, 3)):
                for f in all_maps(FinSet.range(a), FinSet.range(b)):
                    assert check_cartesian(M, f, 3).passed, (name, f)
        f = FinMap.from_function(FinSet.range(2), FinSet.range(1), lambda _: 0)
        rep = check_cartesian(FreeCommMonoid(), f, 3)
        assert not rep.passed and rep.first_law() == "mu-naturality"


def test_criterion_03_opetope_tower(criterion):
    with criterion(3, "opetopes: 1, 1, one per arity 0..8, then 2, 2, 6 against the grammar oracle", 5):
        assert len(opetopes(0, 8)) == 1 and len(opetopes(1, 8)) == 1
        arities = Counter(o.payload for o in opetopes(2, 8))
        assert arities == Counter(range(9))
        by_size = Counter(size(3, o.payload) for o in opetopes(3, 3))
        oracle = grammar_trees(3)
        assert [by_size[k] for k in (1, 2, 3)] == [oracle[k] for k in (1, 2, 3)] == [2, 2, 6]


def test_criterion_04_pd1_is_delta(criterion):
    with criterion(4, "pd_1 hom counts C(m+n-1, n-1) for m, n <= 5; laws exhaustive on 0..5", 10):
        for m, n in product(range(6), repeat=2):
            expected = comb(m + n - 1, n - 1) if n else int(m == 0)
            assert len(pd_hom(1, m, n)) == expected
        assert check_category_tables(1, list(range(6))) == 12153378


def test_criterion_05_category_of_trees(criterion):
    with criterion(5, "pd_2 laws exhaustive on trees of size <= 4; Hom(leaf, edge) has one element", 30):
        objs = pd_objects(2, 4)
        assert len(objs) == 32
        assert check_category_tables(2, objs) > 100000
        assert len(pd_hom(2, "*", ("*",))) == 1


def test_criterion_06_batanin_layer(criterion):
    with criterion(6, "tree <-> Delta round trip for size <= 6; associativity instance in Tr and K", 10):
        for n in range(7):
            for t in trees(n, 6):
                assert from_delta(to_delta(t)) == t
        op = TerminalOperad(1, 5)
        lhs, rhs = _instance(TerminalView(op))
        assert lhs == rhs == path(4)
        keep = lambda g: g.tree in (path(1), path(2), path(3))  # noqa: E731
        contained = 0
        for sb, gb in ((3, 6), (4, 4), (4, 6)):
            lhs, rhs = _instance(generate_K(1, sb, gb, gen_filter=keep))
            if lhs is not None and rhs is not None:
                contained += 1
                assert lhs == rhs
        assert contained >= 1


class TerminalView:
    """The terminal operad with every K generator sent to its tree."""

    def __init__(self, op):
        self.op = op

    def compose(self, x, labels):
        return self.op.compose(_tree(x), {c: _tree(v) for c, v in labels.items()})

    def identity(self, n):
        return self.op.identity(n)


def _tree(x):
    return x if hasattr(x, "stage") else shape(x)


def test_criterion_07_k_generation(criterion):
    with criterion(7, "Catalan 1,1,2,5; contraction laws; interchange joined in K, identified in K_2", 60):
        K = generate_K(1, 4, 3, gen_filter=binary_only)
        counts = [len(K.cells(path(k))) for k in range(1, 5)]
        assert counts == [len(set(bracketings(k))) for k in range(1, 5)] == [1, 1, 2, 5]
        assert K.check_contraction_laws() == []
        K3 = generate_K(3, (0, 2, 6, 6), (0, 1, 3, 1), gen_filter=lambda g: g.tree in INTERCHANGE_TREES)
        assert K3.check_contraction_laws() == []
        for g in K3.generators:
            c = K3.contraction(g.tree, g.src, g.tgt)
            assert src(c) == g.src and tgt(c) == g.tgt
        g1, g2 = _interchange(K3)
        assert g1 in K3 and g2 in K3 and g1 != g2
        assert any(src(x) == g1 and tgt(x) == g2 for x in K3.all_cells(3))
        K2 = generate_K_n(2, (0, 2, 6), (0, 1, 3), gen_filter=lambda g: g.tree in INTERCHANGE_TREES)
        h1, h2 = _interchange(K2.base)
        assert K2.classify(h1) == K2.classify(h2)


def test_criterion_08_terminal_contraction(criterion):
    with criterion(8, "terminal operad has exactly one contraction (stage <= 3, size <= 4)"):
        op = TerminalOperad(3, 4)
        assert count_contractions(op) == 1
        assert len(list(contractions(op))) == 1


def test_criterion_09_algebras_and_opfibrations(criterion):
    with criterion(9, "algebra <-> opfibration round trip for |C1| <= 6, |X| <= 3; blob laws depth 2"):
        instances = small_instances()
        assert all(len(C.C1) <= 6 for _, C in instances)
        trips = 0
        for _, C in instances:
            for X in carriers(C, 3):
                for h in algebra_structures(C, X):
                    _, f = algebra_to_opfibration(C, AlgebraStr(C, X, h))
                    assert is_discrete_opfibration(f)
                    assert opfibration_to_algebra(C, f).h == h
                    trips += 1
        assert trips > 0
        T = terminal_multicategory(FreeMonoid(), 3)
        for k in (1, 2, 3):
            X = SliceObj.from_function(FinSet.range(k), T.C0, lambda _: "*")
            assert check_blob_monad(T, X, 2).passed


def test_criterion_10_slicing(criterion):
    with criterion(10, "algebras of Z/2+ are monoids over Z/2 (order <= 3); slicing by E -> D gives E"):
        P = z2_plus()
        for n in (1, 2, 3):
            X = FinSet.range(n)
            for phi in product((0, 1), repeat=n):
                Xs = SliceObj(X, FinMap(X, P.C0, tuple(zip(X, phi))), P.C0)
                algs = algebra_structures(P, Xs)
                tables = {tuple(h[((x, y), ((phi[x], phi[y]), (phi[x] + phi[y]) % 2))] for x in X for y in X)
                          for h in algs}
                assert len(tables) == len(algs)
                assert tables == monoids_over_z2(n, phi)
        C = z2()
        X = SliceObj.from_function(FinSet.range(2), C.C0, lambda _: "*")
        for h in algebra_structures(C, X):
            E, f = algebra_to_opfibration(C, AlgebraStr(C, X, h))
            D = slice_by_algebra(C, f)
            assert D.graph is E.graph and D.comp == E.comp
