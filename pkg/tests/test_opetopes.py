from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from opetope_forge.opetopia import ptree
from opetope_forge.opetopia.tower import (Opetope, OpetopeError, boundary, check, eta, frame, nodes, opetopes,
                                          size, subst)


def grammar_trees(max_size: int) -> Counter:
    """Parse every string over {*, (, )} with the grammar T ::= * | ( T* )
    and count the distinct trees by weight (oracle)."""
    def parse(s, i):
        if i < len(s) and s[i] == "*":
            return "*", i + 1
        if i < len(s) and s[i] == "(":
            kids, i = [], i + 1
            while i < len(s) and s[i] != ")":
                k, i = parse(s, i)
                if k is None:
                    return None, i
                kids.append(k)
            if i == len(s):
                return None, i
            return tuple(kids), i + 1
        return None, i

    found = set()
    for n in range(1, 2 * max_size + 1):
        for chars in product("*()", repeat=n):
            s = "".join(chars)
            if s.count("*") + s.count("(") > max_size:
                continue
            t, end = parse(s, 0)
            if t is not None and end == len(s):
                found.add(t)
    return Counter(ptree.size(t) for t in found)


trees = st.integers(1, 5).flatmap(lambda n: st.sampled_from(ptree.trees_of_size(n)))


def test_low_dimensions():
    assert [o.payload for o in opetopes(0, 6)] == ["*"]
    assert [o.payload for o in opetopes(1, 6)] == ["*"]
    assert [o.payload for o in opetopes(2, 8)] == list(range(9))


def test_dimension_three_matches_grammar():
    by_size = Counter(size(3, o.payload) for o in opetopes(3, 4))
    oracle = grammar_trees(4)
    assert [by_size[k] for k in (1, 2, 3, 4)] == [oracle[k] for k in (1, 2, 3, 4)] == [2, 2, 6, 22]


def brute_dim4(bound):
    """4-opetopes by generate-and-check over raw nested terms (oracle)."""
    ks = range(bound + 1)
    trees3 = ptree.trees_up_to(bound)
    out = set()

    def terms(budget):
        if budget < 1:
            return
        for k in ks:
            if 1 + k <= budget:
                yield ("u", k)
        for w in trees3:
            rest = budget - 1 - ptree.size(w)
            if rest < 0:
                continue
            n = ptree.node_count(w)
            for ch in _tuples(n, rest):
                yield ("n", w, ch)

    def _tuples(n, budget):
        if n == 0:
            yield ()
            return
        for b in range(1, budget + 1):
            for c in terms(b):
                if size(4, c) != b:
                    continue
                for rest in _tuples(n - 1, budget - b):
                    yield (c,) + rest

    for t in terms(bound):
        try:
            check(4, t)
        except OpetopeError:
            continue
        out.add(t)
    return out


@pytest.mark.parametrize("bound", [1, 2, 3, 4])
def test_dimension_four_matches_generate_and_check(bound):
    assert {o.payload for o in opetopes(4, bound)} == brute_dim4(bound)


def test_opetopes_are_canonical_and_valid():
    for d in range(6):
        os_ = opetopes(d, 4)
        assert os_ == sorted(os_, key=Opetope.sort_key)
        for o in os_:
            check(d, o.payload)
            assert Opetope.from_json(o.to_json()) == o


@settings(max_examples=60)
@given(trees)
def test_unit_law_and_frame_in_dimension_three(t):
    assert subst(3, t, tuple(eta(3, v) for v in nodes(3, t)))[0] == t
    assert boundary(3, t) == ptree.leaves(t)
    assert frame(3, t) == boundary(2, boundary(3, t))


@pytest.mark.parametrize("d", [4, 5])
def test_unit_law_and_frame_higher(d):
    for o in opetopes(d, 4):
        p = o.payload
        assert subst(d, p, tuple(eta(d, v) for v in nodes(d, p)))[0] == p
        assert frame(d, p) == boundary(d - 1, boundary(d, p))


@settings(max_examples=60)
@given(trees, st.data())
def test_substitution_preserves_boundary_and_reports_provenance(t, data):
    parts = []
    for k in nodes(3, t):
        candidates = [u for u in ptree.trees_up_to(5) if ptree.leaves(u) == k]
        parts.append(data.draw(st.sampled_from(candidates)))
    r, prov = subst(3, t, tuple(parts))
    assert boundary(3, r) == boundary(3, t)
    assert len(prov) == len(nodes(3, r)) == sum(len(nodes(3, q)) for q in parts)
    for (i, j), v in zip(prov, nodes(3, r)):
        assert nodes(3, parts[i])[j] == v
    assert r == ptree.substitute(t, parts)


def test_boundary_mismatch_raises():
    with pytest.raises(OpetopeError):
        subst(3, ("*",), (("*", "*"),))
    with pytest.raises(OpetopeError):
        check(2, -1)


@settings(max_examples=40)
@given(trees)
def test_tree_json_and_prefixes(t):
    assert ptree.from_json(ptree.to_json(t)) == t
    for p, rest in ptree.prefixes(t):
        assert ptree.graft(p, rest) == t
