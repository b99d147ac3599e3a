"""Sumset engines, graph-restricted sums, direct powers, instance JSON."""

import itertools
import random

import pytest

from sumsetlab import (
    AdditionGraph,
    DirectPower,
    FiniteSet,
    Integers,
    IntersectionSemigroup,
    Lattice,
    Permutations,
    Residues,
    StructureMismatchError,
    direct_power,
    graph_triple_sumset,
    instance_from_json,
    instance_to_json,
    iterated_sum,
    leave_one_out,
    restricted_pair_sumset,
    sumset,
)
from sumsetlab.sumsets import _pair_sumset_bitset, _pair_sumset_generic

from conftest import brute_sumset, int_set, random_int_set


def test_finite_set_normalizes():
    s = int_set(3, 1, 2, 2, 3)
    assert s.elements == (1, 2, 3)
    assert len(s) == 3 and 2 in s and 5 not in s
    assert list(s) == [1, 2, 3]


def test_finite_set_validates_payloads():
    with pytest.raises(StructureMismatchError):
        FiniteSet(Integers(), (1, (2, 3)))
    with pytest.raises(StructureMismatchError):
        FiniteSet(Residues(5), (0, 5))
    FiniteSet(Integers(), ())  # empty sets are representable


def test_sumset_examples():
    z = Integers()
    assert sumset(z, [int_set(0, 2), int_set(0, 1), int_set(0, 3)]).elements == (0, 1, 2, 3, 4, 5, 6)
    assert sumset(z, [int_set(0), int_set(0)]).elements == (0,)
    zmod = Residues(5)
    a = FiniteSet(zmod, (0, 1, 2))
    assert sumset(zmod, [a, a]).elements == (0, 1, 2, 3, 4)


def test_sumset_errors():
    z = Integers()
    with pytest.raises(ValueError, match="nonempty sets required"):
        sumset(z, [])
    with pytest.raises(ValueError, match="nonempty sets required"):
        sumset(z, [int_set(1), FiniteSet(z, ())])
    with pytest.raises(StructureMismatchError):
        sumset(z, [int_set(1), FiniteSet(Residues(5), (1,))])


def test_sumset_respects_list_order_for_noncommutative():
    sym = Permutations(3)
    x = FiniteSet(sym, ((2, 1, 3),))
    y = FiniteSet(sym, ((2, 3, 1),))
    assert sumset(sym, [x, y]).elements == (sym.compose((2, 1, 3), (2, 3, 1)),)
    assert sumset(sym, [x, y]) != sumset(sym, [y, x])


def test_leave_one_out_examples():
    z = Integers()
    triple = [int_set(0, 2), int_set(0, 1), int_set(0, 3)]
    assert leave_one_out(z, triple, 1).elements == (0, 1, 3, 4)
    assert leave_one_out(z, triple, 3).elements == (0, 1, 2, 3)
    assert leave_one_out(z, [int_set(0), int_set(5)], 1).elements == (5,)
    with pytest.raises(ValueError, match="need at least two summands"):
        leave_one_out(z, [int_set(0)], 1)
    with pytest.raises(ValueError, match="out of range"):
        leave_one_out(z, triple, 4)


def test_iterated_sum_examples():
    z = Integers()
    a = int_set(0, 1, 3)
    assert iterated_sum(z, a, 1) == a
    assert iterated_sum(z, a, 2).elements == (0, 1, 2, 3, 4, 6)
    assert iterated_sum(z, a, 3).elements == (0, 1, 2, 3, 4, 5, 6, 7, 9)
    assert iterated_sum(z, int_set(7), 5).elements == (35,)
    with pytest.raises(ValueError, match="k must be positive"):
        iterated_sum(z, a, 0)


def test_sumset_matches_bruteforce_across_structures(rng):
    cases = []
    z = Integers()
    for _ in range(60):
        k = rng.randrange(2, 5)
        cases.append((z, [random_int_set(rng, max_size=5, lo=-20, hi=20) for _ in range(k)]))
    zmod = Residues(13)
    for _ in range(40):
        sets = [
            FiniteSet(zmod, tuple(rng.sample(range(13), rng.randrange(1, 5))))
            for _ in range(rng.randrange(2, 4))
        ]
        cases.append((zmod, sets))
    lat = Lattice(2)
    for _ in range(40):
        sets = [
            FiniteSet(lat, tuple((rng.randrange(-5, 6), rng.randrange(-5, 6)) for _ in range(rng.randrange(1, 5))))
            for _ in range(rng.randrange(2, 4))
        ]
        cases.append((lat, sets))
    sym = Permutations(4)
    perms = list(sym.elements())
    for _ in range(30):
        sets = [
            FiniteSet(sym, tuple(rng.sample(perms, rng.randrange(1, 4))))
            for _ in range(rng.randrange(2, 4))
        ]
        cases.append((sym, sets))
    semi = IntersectionSemigroup(5)
    for _ in range(30):
        sets = [
            FiniteSet(semi, tuple(rng.sample(range(32), rng.randrange(1, 5))))
            for _ in range(rng.randrange(2, 4))
        ]
        cases.append((semi, sets))
    for structure, sets in cases:
        assert set(sumset(structure, sets)) == brute_sumset(structure, sets)


def test_bitset_engine_agrees_with_generic_on_1000_instances(rng):
    z = Integers()
    for _ in range(1000):
        xs = set(random_int_set(rng, max_size=8, lo=-200, hi=200))
        ys = set(random_int_set(rng, max_size=8, lo=-200, hi=200))
        assert _pair_sumset_bitset(xs, ys) == _pair_sumset_generic(z, xs, ys)


def test_integer_cardinality_bounds_on_1000_instances(rng):
    z = Integers()
    for _ in range(1000):
        a = random_int_set(rng, max_size=7, lo=0, hi=60)
        b = random_int_set(rng, max_size=7, lo=0, hi=60)
        total = sumset(z, [a, b])
        assert len(total) >= len(a) + len(b) - 1
        assert len(total) >= max(len(a), len(b))
        assert len(total) <= len(a) * len(b)


def test_product_cardinality_upper_bound(rng):
    zmod = Residues(9)
    for _ in range(100):
        sets = [
            FiniteSet(zmod, tuple(rng.sample(range(9), rng.randrange(1, 5))))
            for _ in range(3)
        ]
        prod = 1
        for s in sets:
            prod *= len(s)
        assert len(sumset(zmod, sets)) <= prod


def test_restricted_pair_examples():
    z = Integers()
    a = int_set(1, 2)
    g = AdditionGraph(2, 2, frozenset({(0, 1)}), symmetric=True, loops_allowed=False)
    assert restricted_pair_sumset(z, a, a, g).elements == (3,)
    complete = AdditionGraph.complete(2, 2)
    assert restricted_pair_sumset(z, a, a, complete).elements == (2, 3, 4)
    empty = AdditionGraph(2, 2, frozenset(), symmetric=True)
    assert len(restricted_pair_sumset(z, a, a, empty)) == 0


def test_restricted_pair_sum_in_target_set():
    # connect a, a' in [1, 120] exactly when a + a' lies in a fixed 6-element set
    z = Integers()
    target = {82, 84, 88, 96, 112, 144}
    a = FiniteSet(z, tuple(range(1, 121)))
    edges = {
        (i, j)
        for i in range(120)
        for j in range(120)
        if (i + 1) + (j + 1) in target
    }
    g = AdditionGraph(120, 120, frozenset(edges), symmetric=True)
    assert set(restricted_pair_sumset(z, a, a, g)) == target


def test_restricted_pair_dimension_mismatch():
    z = Integers()
    g = AdditionGraph.complete(2, 2)
    with pytest.raises(ValueError, match="dimension mismatch"):
        restricted_pair_sumset(z, int_set(1, 2, 3), int_set(1, 2), g)


def test_complete_graph_restriction_equals_sumset(rng):
    z = Integers()
    for _ in range(50):
        a = random_int_set(rng, max_size=6, lo=0, hi=30)
        b = random_int_set(rng, max_size=6, lo=0, hi=30)
        g = AdditionGraph.complete(len(a), len(b))
        assert restricted_pair_sumset(z, a, b, g) == sumset(z, [a, b])


def test_graph_triple_examples():
    z = Integers()
    a = int_set(1, 2, 3)
    triangle = AdditionGraph(
        3, 3, frozenset({(0, 1), (0, 2), (1, 2)}), symmetric=True, loops_allowed=False
    )
    assert graph_triple_sumset(a, triangle).elements == (6,)
    empty = AdditionGraph(3, 3, frozenset(), symmetric=True)
    assert len(graph_triple_sumset(a, empty)) == 0
    directed = AdditionGraph(3, 3, frozenset({(0, 1)}), symmetric=False)
    with pytest.raises(ValueError, match="non-symmetric"):
        graph_triple_sumset(a, directed)


def test_graph_triple_with_loops_allows_repeats():
    z = Integers()
    a = int_set(1, 2)
    g = AdditionGraph(2, 2, frozenset({(0, 0), (0, 1)}), symmetric=True)
    # (1,1,1) needs (0,0) three times; (1,1,2) needs (0,0) and (0,1) twice
    assert graph_triple_sumset(a, g).elements == (3, 4)


def test_graph_triple_matches_bruteforce(rng):
    z = Integers()
    for _ in range(40):
        n = rng.randrange(2, 7)
        a = FiniteSet(z, tuple(rng.sample(range(0, 30), n)))
        edges = set()
        for i in range(n):
            for j in range(i, n):
                if rng.randrange(2):
                    edges.add((i, j))
        g = AdditionGraph(n, n, frozenset(edges), symmetric=True)
        expected = set()
        es = set(g.edges)
        xs = a.elements
        for i, j, k in itertools.combinations_with_replacement(range(n), 3):
            if (i, j) in es and (i, k) in es and (j, k) in es:
                expected.add(xs[i] + xs[j] + xs[k])
        assert set(graph_triple_sumset(a, g)) == expected


def test_addition_graph_validation():
    with pytest.raises(ValueError, match="out of range"):
        AdditionGraph(2, 2, frozenset({(0, 2)}))
    with pytest.raises(ValueError, match="loop edge"):
        AdditionGraph(2, 2, frozenset({(0, 0)}), loops_allowed=False)
    with pytest.raises(ValueError, match="equal side sizes"):
        AdditionGraph(2, 3, frozenset(), symmetric=True)
    g = AdditionGraph(3, 3, frozenset({(0, 1)}), symmetric=True)
    assert (1, 0) in g.edges  # symmetric closure


def test_direct_power_examples():
    z = Integers()
    p = direct_power(z, int_set(0, 1), 2)
    assert p.structure == DirectPower(z, 2)
    assert p.elements == ((0, 0), (0, 1), (1, 0), (1, 1))
    one = direct_power(z, int_set(4, 7), 1)
    assert one.elements == ((4,), (7,))
    assert len(direct_power(z, int_set(0, 1, 3), 2)) == 9
    with pytest.raises(ValueError):
        direct_power(z, int_set(0, 1), 0)


def test_power_sumset_identity_small(rng):
    z = Integers()
    for k in (2, 3):
        for _ in range(20):
            x = random_int_set(rng, max_size=4, lo=0, hi=12)
            y = random_int_set(rng, max_size=4, lo=0, hi=12)
            xp = direct_power(z, x, k)
            yp = direct_power(z, y, k)
            assert len(sumset(xp.structure, [xp, yp])) == len(sumset(z, [x, y])) ** k


def test_instance_json_roundtrip_with_one_based_graph():
    z = Integers()
    sets = [int_set(1, 2), int_set(1, 2)]
    g = AdditionGraph(2, 2, frozenset({(0, 1)}), symmetric=True, loops_allowed=False)
    obj = instance_to_json(z, sets, g, k=3)
    assert obj["graph"]["edges"] == [[1, 2], [2, 1]]
    structure, sets2, g2, extras = instance_from_json(obj)
    assert structure == z
    assert [s.elements for s in sets2] == [(1, 2), (1, 2)]
    assert g2 == g
    assert extras == {"k": 3}
