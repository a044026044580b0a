from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from forestcalc.bases import (BASES, BasisExpansion, dual_forest_polynomial, expand_in_basis,
                              forest_polynomial, fundamental_qsym, monomial_qsym, schubert,
                              slide_from_code, slide_polynomial)
from forestcalc.combinatorics import NVector, Permutation, lehmer_code, parse_word, to_barred
from forestcalc.forest import (IndexedForest, canonical_flag, decreasing_labelings, forests_in,
                               lbs_labelings)
from forestcalc.polynomial import ONE, ZERO, Polynomial
from oracles import forest_poly_brute, schubert_by_divided_differences

T0 = IndexedForest.from_code([0, 2, 0, 1])
T0_POLY = Polynomial.parse("x2^2*x4 + x1*x2*x4 + x1^2*x4 + x2^2*x3 + x1*x2*x3 + x1^2*x3"
                           " + x1^2*x2 + x1*x2^2")
FORESTS_4 = forests_in(1, 4)


def test_slide_examples():
    assert slide_from_code([1, 0, 2]) == Polynomial.parse("x1*x3^2 + x1*x2^2 + x1*x2*x3")
    assert slide_polynomial([1, 2, 1]) == ZERO
    assert slide_polynomial([]) == ONE
    assert slide_polynomial([2]) == Polynomial.parse("x1 + x2")
    assert slide_polynomial(to_barred([4, 2, 2])) == slide_from_code([0, 2, 0, 1])


def test_fundamentals():
    assert fundamental_qsym((1, 1), 2) == Polynomial.parse("x1*x2")
    assert fundamental_qsym((2,), 2) == Polynomial.parse("x1^2 + x1*x2 + x2^2")
    assert fundamental_qsym((1, 1), 3) == Polynomial.parse("x1*x2 + x1*x3 + x2*x3")
    assert fundamental_qsym((1, 2), 1) == ZERO
    # F_alpha = M_alpha + finer monomial quasisymmetric terms
    f = fundamental_qsym((2, 1), 3)
    assert f == monomial_qsym((2, 1), 3) + monomial_qsym((1, 1, 1), 3)


def test_schubert_examples():
    assert schubert(Permutation.identity()) == ONE
    assert schubert(Permutation.parse("132")) == Polynomial.parse("x1 + x2")
    assert schubert(Permutation.parse("14253")) == T0_POLY
    with pytest.raises(ValueError, match="negative support"):
        schubert(Permutation([1, 0], start=0))


@pytest.mark.parametrize("n", range(1, 6))
def test_schubert_against_divided_differences(n):
    for w in permutations(range(1, n + 1)):
        assert schubert(Permutation(w)) == schubert_by_divided_differences(w)


def test_forest_t0():
    for route in ("definition", "slides", "recurrence"):
        assert forest_polynomial(T0, route) == T0_POLY
    assert forest_polynomial(T0.shift(-1)) == Polynomial.parse("x1^2*x2 + x1^2*x3")
    assert forest_polynomial(T0.shift(-2)) == ZERO


def test_linear_tree_examples():
    assert forest_polynomial(IndexedForest.from_code([0, 2])) == fundamental_qsym((2,), 2)
    assert forest_polynomial(IndexedForest.from_code([0, 1, 1])) == fundamental_qsym((1, 1), 3)
    assert forest_polynomial(IndexedForest.from_code([2, 2, 1])) == fundamental_qsym((2, 2, 1), 3)


@pytest.mark.parametrize("f", FORESTS_4)
def test_routes_agree_with_definition_oracle(f):
    p = forest_poly_brute(f)
    assert forest_polynomial(f, "definition") == p
    assert forest_polynomial(f, "slides") == p
    assert forest_polynomial(f, "recurrence") == p


def _recurrence(f, compress):
    out = forest_polynomial(f.shift(-1))
    for v in f.terminal_nodes():
        out = out + Polynomial.variable(f.rho(v)) * forest_polynomial(f.trim(v, compress=compress))
    return out


@pytest.mark.parametrize("f", FORESTS_4[1:])
def test_recurrence_identity(f):
    assert _recurrence(f, compress=True) == forest_polynomial(f)
    if len(f.trees) == 1:
        assert _recurrence(f, compress=False) == forest_polynomial(f)


def test_uncompressed_trim_overcounts_for_forests():
    # the node at 2 trimmed leaves the node at 4 unconstrained from below
    f = IndexedForest.from_code([0, 1, 0, 1])
    assert forest_polynomial(f) == Polynomial.parse("x1 + x2") * Polynomial.parse("x1+x2+x3+x4")
    assert _recurrence(f, compress=False) - forest_polynomial(f) == Polynomial.parse("x2*x4")


@pytest.mark.parametrize("f", [f for f in FORESTS_4 if f.size <= 4])
def test_flag_independence(f):
    p = forest_polynomial(f)
    for flag in lbs_labelings(f):
        assert forest_polynomial(f, "definition", flag) == p
    for flag in lbs_labelings(f)[:5]:
        assert forest_polynomial(f, "slides", flag) == p


def test_flag_validation():
    with pytest.raises(ValueError, match="not an LBS labeling"):
        forest_polynomial(T0, "definition", to_barred([4, 2, 2]))
    with pytest.raises(ValueError):
        forest_polynomial(T0, "recurrence", to_barred([2, 2, 4]))


def _trees_in(lo, hi):
    return [f for f in forests_in(lo, hi) if len(f.trees) == 1]


@pytest.mark.parametrize("t", _trees_in(1, 5))
def test_principal_specialization(t):
    # beta_T(1,...,1) = |dec(T, M)| = C(M, |T|) |dec(T)|
    M = max(t.support())
    value = forest_polynomial(t).ones(M)
    assert value == len(decreasing_labelings(t, M)) == comb(M, t.size) * len(decreasing_labelings(t))


@pytest.mark.parametrize("n", range(2, 6))
def test_code_formula_for_full_trees(n):
    for t in _trees_in(1, n - 1):
        if t.support() != tuple(range(1, n)):
            continue
        total = ZERO
        for lab in decreasing_labelings(t):
            ell = Permutation(lab)
            c = lehmer_code(ell.inverse()).as_tuple(n - 1)
            mono = ONE
            for ci in c:
                mono = mono * Polynomial.variable(ci + 1)
            total = total + mono
        assert total == forest_polynomial(t)


def _nonzero_extension_slides(f):
    flag = canonical_flag(f)
    out = []
    for lab in decreasing_labelings(f):
        order = sorted(range(len(lab)), key=lambda i: lab[i])
        p = slide_polynomial(tuple(flag[i] for i in order))
        if p:
            out.append(p)
    return out


@pytest.mark.parametrize("f", [f for f in forests_in(1, 5, max_size=5)][::3])
def test_slide_expansion_one_per_labeling(f):
    # each linear extension contributes one slide; some of those slides vanish,
    # the others are distinct basis elements with coefficient 1
    e = expand_in_basis(forest_polynomial(f), "slide")
    assert all(c == 1 for c in e.coefficients.values())
    slides = _nonzero_extension_slides(f)
    assert len(e.coefficients) == len(slides) == len(set(slides))


def test_vanishing_extension_slide():
    f = IndexedForest.from_code([0, 2, 0, 1, 1])
    assert len(decreasing_labelings(f)) == 3
    assert len(_nonzero_extension_slides(f)) == 2
    assert slide_polynomial(parse_word("2^1 5^1 4^1 2^2")) == ZERO


def test_dual_forest_examples():
    assert dual_forest_polynomial(IndexedForest(), 3) == ONE
    assert dual_forest_polynomial(IndexedForest.from_code([1]), 2) == Polynomial.variable(2)
    assert dual_forest_polynomial(T0, 4) == ZERO
    assert dual_forest_polynomial(T0, 5) != ZERO


def test_expansion_examples():
    e = expand_in_basis(schubert(Permutation.parse("14253")), "forest")
    assert e.coefficients == {T0: 1}
    s = expand_in_basis(T0_POLY, "slide")
    assert str(s) == "(0,2,0,1):1 (1,2):1"
    assert s.coefficients == {NVector([0, 2, 0, 1]): 1, NVector([1, 2]): 1}
    assert expand_in_basis(Polynomial.variable(1), "forest").coefficients == {
        IndexedForest.from_code([1]): 1}


small_polys = st.dictionaries(st.lists(st.integers(0, 2), min_size=1, max_size=3).map(tuple),
                              st.integers(-3, 3), max_size=4).map(Polynomial)


@settings(max_examples=25, deadline=None)
@given(small_polys, st.sampled_from(BASES))
def test_expansion_round_trip(f, basis):
    e = expand_in_basis(f, basis)
    assert e.to_polynomial() == f
    assert BasisExpansion.from_json(e.to_json()) == e
    assert 0 not in e.coefficients.values()


@pytest.mark.parametrize("n", range(1, 6))
def test_schubert_is_forest_positive(n):
    for w in permutations(range(1, n + 1)):
        e = expand_in_basis(schubert(Permutation(w)), "forest")
        assert all(c > 0 and c.denominator == 1 for c in e.coefficients.values())
