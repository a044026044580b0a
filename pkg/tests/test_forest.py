from itertools import product
from math import prod

import pytest

from forestcalc.combinatorics import NVector
from forestcalc.forest import (IndexedForest, binary_trees, canonical_flag, decreasing_labelings,
                               forests_in, is_decreasing, is_lbs, lbs_labelings, multinomial)
from forestcalc.combinatorics import catalan

T0 = IndexedForest.from_code([0, 2, 0, 1])


def small_forests(max_size):
    return [f for f in forests_in(1, 6, max_size=max_size)]


def test_t0_queries():
    assert T0.nodes == (2, 3, 4)
    assert T0.rho_values == (2, 2, 4)
    assert T0.terminal_nodes() == (2, 4)
    assert T0.lsupp() == (2, 4)
    assert T0.roots() == (3,)
    assert T0.int_set(3) == (2, 4)
    assert T0.code() == NVector([0, 2, 0, 1])


def test_binary_tree_counts():
    assert [len(binary_trees(k)) for k in range(6)] == [catalan(k) for k in range(6)]


def test_code_bijection():
    seen = set()
    for c in product(range(4), repeat=6):
        if sum(c) > 6:
            continue
        f = IndexedForest.from_code(c)
        assert f.code() == NVector(c)
        assert f.size == sum(c)
        seen.add(f)
    assert len(seen) == sum(1 for c in product(range(4), repeat=6) if sum(c) <= 6)


def test_negative_support_codes():
    f = IndexedForest.from_code(NVector({-1: 1, 1: 1}))
    assert not f.is_positive()
    assert f.code() == NVector({-1: 1, 1: 1})


@pytest.mark.parametrize("f", small_forests(5)[::7])
def test_rho_reproduces_code(f):
    counts = {}
    for r in f.rho_values:
        counts[r] = counts.get(r, 0) + 1
    assert NVector(counts) == f.code()
    assert canonical_flag(f) in lbs_labelings(f)


@pytest.mark.parametrize("f", [f for f in small_forests(5) if len(f.trees) > 1][::5])
def test_decreasing_labelings_shuffle(f):
    parts = [t.size for t in f.components()]
    expect = multinomial(f.size, parts) * prod(len(decreasing_labelings(t)) for t in f.components())
    labs = decreasing_labelings(f)
    assert len(labs) == expect
    assert labs == sorted(labs)
    assert all(is_decreasing(f, lab) for lab in labs)


def test_decreasing_labelings_of_t0():
    assert decreasing_labelings(T0) == [(1, 3, 2), (2, 3, 1)]
    assert len(decreasing_labelings(T0, 5)) == 10 * 2


def test_trim_and_shift():
    assert T0.trim(4) == IndexedForest.from_code([0, 2, 0])
    assert T0.trim(2) == IndexedForest.from_code([0, 1, 1])
    assert T0.shift(-1).code() == NVector([2, 0, 1])
    with pytest.raises(ValueError):
        T0.trim(3)
    f = IndexedForest.from_code([0, 1, 0, 1])
    assert f.trim(2) == IndexedForest.from_code([0, 0, 0, 1])
    assert f.trim(2, compress=True) == IndexedForest.from_code([0, 0, 1])


def test_lbs_labelings_with_letters():
    flag = canonical_flag(T0)
    labs = lbs_labelings(T0, flag)
    assert flag in labs
    assert all(is_lbs(T0, lab) for lab in labs)
    with pytest.raises(ValueError):
        lbs_labelings(T0, flag[:2])


def test_forests_with_adjacent_trees_rejected():
    with pytest.raises(ValueError):
        IndexedForest(((1, (None, None)), (2, (None, None))))


def test_mirror_involution():
    for f in small_forests(3):
        n = max(f.support(), default=0) + 1
        assert f.mirror(n).mirror(n) == f
