from itertools import permutations, product
from fractions import Fraction
from math import comb, factorial, prod

import pytest

from forestcalc.applications import (AwReport, a_w, a_w_table, bilabeled_to_lbs, bilabeled_trees,
                                     forest_structure_constants, grassmannian_check,
                                     letters_of_content, mixed_eulerian_lbs,
                                     mixed_eulerian_parking_count, multivariate_mixed_eulerian,
                                     partition_of, reduced_word_letters, schubert_forest_expansion,
                                     shifted_identity, syt, syt_descent_count, y_c)
from forestcalc.applications import _lbs_trees
from forestcalc.bases import forest_polynomial, schubert
from forestcalc.combinatorics import (Permutation, catalan, format_word, permutations_of_length,
                                      reduced_words, shift_permutation)
from forestcalc.correspondence import is_parking, park_cars
from forestcalc.forest import IndexedForest, decreasing_labelings, forests_in
from forestcalc.polynomial import ONE, Polynomial
from oracles import simple_parking

P = Polynomial.parse
A_0202 = (P("x1*x2*x3*x4") + P("2*x1*x2^2") * P("x3 + x4") + P("x1^2*x2") * P("x2 + x3 + x4")
          + P("x1*x2^3"))


def contents(n):
    return [c for c in product(range(n), repeat=n - 1) if sum(c) == n - 1]


def longest(n):
    return Permutation(range(n, 0, -1))


# -- a_w ---------------------------------------------------------------------

def test_aw_example():
    r = a_w(Permutation.parse("21543"))
    assert r.value == 4
    assert r.routes == {"parking": 4, "ds": 4, "forest": 4}
    assert [format_word(x) for x in r.witnesses] == ["1343", "3143", "3413", "3431"]
    assert AwReport.from_json(r.to_json()) == r


def test_aw_preconditions():
    with pytest.raises(ValueError, match="length must be n-1"):
        a_w(Permutation.parse("2143"), n=4)
    with pytest.raises(ValueError, match="length must be n-1"):
        a_w(Permutation.parse("2143"))
    with pytest.raises(ValueError, match="not in S_2"):
        a_w(Permutation.parse("1324"), n=2)
    with pytest.raises(ValueError, match="unknown route"):
        a_w(Permutation.parse("21"), "magic")


@pytest.mark.parametrize("n", range(2, 6))
def test_aw_routes_and_symmetries(n):
    w0 = longest(n)
    for r in a_w_table(n):
        assert r.value > 0
        assert a_w(r.w.inverse(), "parking", n).value == r.value
        assert a_w(w0 * r.w * w0, "parking", n).value == r.value


def test_aw_table_is_sorted_and_parallel_safe(monkeypatch):
    serial = a_w_table(5)
    assert [r.w.one_line(5) for r in serial] == sorted(r.w.one_line(5) for r in serial)
    assert len(serial) == 20
    monkeypatch.setenv("FORESTCALC_THREADS", "2")
    assert [r.tsv() for r in a_w_table(5)] == [r.tsv() for r in serial]


def test_aw_witnesses_by_car_rule():
    for r in a_w_table(4):
        words = reduced_words(r.w.inverse())
        assert r.witnesses == [x for x in words if park_cars(x) == frozenset({1, 2, 3})]
    # the plain take-the-next-free-spot rule is a different statistic
    assert simple_parking((1, 3, 4, 3)) != park_cars((1, 3, 4, 3))


# -- Schubert into forests ---------------------------------------------------

@pytest.mark.parametrize("n", range(1, 6))
def test_schubert_forest_expansion(n):
    for w in permutations(range(1, n + 1)):
        w = Permutation(w)
        e = schubert_forest_expansion(w)
        assert e.to_polynomial() == schubert(w)
        for cls, ws in e.classes.items():
            assert len(ws) == len(decreasing_labelings(cls.forest))


def test_identity_expansion():
    e = schubert_forest_expansion(Permutation.identity())
    assert e.expansion.coefficients == {IndexedForest(): 1}
    assert e.to_polynomial() == ONE


def test_example_classes_hold_the_witnesses():
    w = Permutation.parse("21543")
    e = schubert_forest_expansion(w)
    parking = [x for ws in e.classes.values() for x in ws if is_parking(x)]
    assert len(parking) == 4


# -- structure constants -----------------------------------------------------

def test_structure_constant_examples():
    x1 = IndexedForest.from_code([1])
    assert forest_structure_constants(x1, IndexedForest()) == {x1: 1}
    assert forest_structure_constants(x1, x1) == {IndexedForest.from_code([2]): 1}
    assert forest_polynomial(IndexedForest.from_code([2])) == Polynomial.parse("x1^2")
    g = IndexedForest.from_code([0, 1])
    assert all(c > 0 for c in forest_structure_constants(g, g).values())


def test_structure_constant_routes_agree_small():
    small = [f for f in forests_in(1, 3, max_size=2)][:8]
    for f1 in small:
        for f2 in small:
            a = forest_structure_constants(f1, f2, "expansion")
            assert a == forest_structure_constants(f1, f2, "shuffle"), (f1, f2)
            assert a == forest_structure_constants(f2, f1, "expansion")


def test_structure_constants_reject_nonpositive():
    f = IndexedForest.from_code([1]).shift(-1)
    with pytest.raises(ValueError):
        forest_structure_constants(f, f)
    with pytest.raises(ValueError):
        forest_structure_constants(IndexedForest(), IndexedForest(), "other")


# -- mixed Eulerian numbers --------------------------------------------------

def test_mixed_eulerian_example():
    m = multivariate_mixed_eulerian((0, 2, 0, 2))
    assert m.poly == A_0202
    assert m.value_at_ones() == 9
    assert len(_lbs_trees((0, 2, 0, 2))) == 5
    assert mixed_eulerian_lbs((0, 2, 0, 2)) == A_0202
    assert m.q_coefficients() == [0, 0, 1, 2, 3, 2, 1]
    assert m.at_q(1) == 9
    assert m.to_json()["at_ones"] == 9


@pytest.mark.parametrize("n", range(2, 6))
def test_first_content_is_a_power(n):
    c = (n - 1,) + (0,) * (n - 2)
    m = multivariate_mixed_eulerian(c)
    assert m.poly == Polynomial.variable(1) ** (n - 1)
    assert m.value_at_ones() == 1


@pytest.mark.parametrize("n", range(2, 6))
def test_mixed_eulerian_routes_and_parking(n):
    for c in contents(n):
        m = multivariate_mixed_eulerian(c)
        assert multivariate_mixed_eulerian(c, "linear") == m
        assert mixed_eulerian_lbs(c) == m.poly
        assert m.value_at_ones() == mixed_eulerian_parking_count(c)


@pytest.mark.parametrize("n", range(2, 6))
def test_mixed_eulerian_known_sums(n):
    # classical sums: total (n-1)! Cat(n-1), weighted n^(n-2), A_(1,...,1) = (n-1)!,
    # and the binomial values on the two-part contents
    values = {c: multivariate_mixed_eulerian(c).value_at_ones() for c in contents(n)}
    assert sum(values.values()) == factorial(n - 1) * catalan(n - 1)
    weighted = sum(Fraction(v, prod(factorial(x) for x in c)) for c, v in values.items())
    assert weighted == n ** (n - 2)
    assert values[(1,) * (n - 1)] == factorial(n - 1)
    if n > 2:
        for k in range(n):
            c = (k,) + (0,) * (n - 3) + (n - 1 - k,)
            assert values[c] == comb(n - 1, k)


def test_mixed_eulerian_errors():
    for bad in [(), (1, 1, 0), (-1, 2), (3, 0)]:
        with pytest.raises(ValueError):
            multivariate_mixed_eulerian(bad)


def test_y_c():
    assert y_c((0, 2)) == P("x1 + x2") ** 2
    assert letters_of_content((0, 2, 0, 2))[0].value == 2


# -- bilabeled trees ---------------------------------------------------------

def test_bilabeled_example():
    c = (0, 2, 0, 2)
    trees = bilabeled_trees(c)
    assert len(trees) == 5
    for t in trees:
        assert t.leaf_labels == (1, 2, 5, 6, 9)
        assert sorted(t.labels) == list(range(1, 10))
    images = [bilabeled_to_lbs(t, c) for t in trees]
    assert sorted(images, key=str) == sorted(_lbs_trees(c), key=str)


@pytest.mark.parametrize("n", range(2, 6))
def test_bilabeled_bijection(n):
    for c in contents(n):
        trees = bilabeled_trees(c)
        images = {bilabeled_to_lbs(t, c) for t in trees}
        assert len(images) == len(trees)
        assert images == set(_lbs_trees(c))


def test_bilabeled_first_content_leaves():
    for n in range(2, 6):
        c = (n - 1,) + (0,) * (n - 2)
        leaves = bilabeled_trees(c)[0].leaf_labels
        assert leaves == (1,) + tuple(range(n + 1, 2 * n))


# -- tableaux and shifted identities ----------------------------------------

def test_syt_counts():
    assert syt_descent_count((1,), 1) == 1
    assert len(syt((2, 1))) == 2
    assert [syt_descent_count((2, 1), m) for m in (1, 2, 3)] == [0, 2, 0]
    assert len(syt((3, 2))) == 5
    assert len(syt((2, 2, 1))) == 5


@pytest.mark.parametrize("n", range(2, 6))
def test_grassmannian(n):
    rows = grassmannian_check(n)
    assert rows
    for w, m, aw, count in rows:
        assert aw == count, (w, m)
        assert sum(partition_of(w)) == n - 1


def _initial_interval_perms(n):
    for w in permutations_of_length(n, n - 1):
        letters = reduced_word_letters(w)
        if letters and letters == tuple(range(1, max(letters) + 1)):
            yield w


@pytest.mark.parametrize("n", range(3, 6))
def test_shifted_identity_initial_interval(n):
    for w in _initial_interval_perms(n):
        for j in range(3):
            lhs, rhs = shifted_identity(w, j, n)
            assert lhs == rhs, (w, j)


def test_shifted_identity_rejects_gapped_letters():
    w = Permutation.parse("21543")
    assert reduced_word_letters(w) == (1, 3, 4)
    with pytest.raises(ValueError, match="initial interval"):
        shifted_identity(w, 0)
    # with the hypothesis dropped the two sides separate
    assert shifted_identity(w, 0, check=False) == (14, 4)


def test_shift_lengths():
    w = Permutation.parse("21543")
    for j in range(3):
        assert shift_permutation(w, j).length() == w.length()
