"""
Polynomial families: slide, fundamental quasisymmetric, Schubert, forest and
dual forest polynomials, plus triangular change of basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .combinatorics import (BarredLetter, NVector, Permutation, reduced_words, to_barred)
from .forest import (IndexedForest, canonical_flag, decreasing_labelings, is_lbs)
from .polynomial import ONE, ZERO, Polynomial, revlex_leading, trim

__all__ = [
    "slide_polynomial", "slide_from_code", "fundamental_qsym", "schubert",
    "forest_polynomial", "dual_forest_polynomial", "monomial_qsym",
    "BasisExpansion", "expand_in_basis", "basis_element", "BASES",
]

BASES = ("forest", "slide", "schubert", "monomial")


def _barred(word: Sequence) -> tuple[BarredLetter, ...]:
    word = tuple(word)
    if all(isinstance(x, BarredLetter) for x in word):
        return word
    return to_barred(word)


def slide_polynomial(word: Union[Sequence, NVector]) -> Polynomial:
    """
    Generating polynomial of compatible sequences of a word.

    Plain integer words are barred first, which leaves the strictness rule
    unchanged: equal values get increasing copies and force no strict drop.
    An N-vector c stands for its nonincreasing word W_c.
    """
    if isinstance(word, NVector):
        return slide_from_code(word)
    return _slide(_barred(word))


def slide_from_code(c: Union[NVector, Sequence[int]]) -> Polynomial:
    if not isinstance(c, NVector):
        c = NVector(c)
    word = [i for i, v in reversed(c.items()) for _ in range(v)]
    return _slide(to_barred(word))


@lru_cache(maxsize=None)
def _slide(letters: tuple[BarredLetter, ...]) -> Polynomial:
    k = len(letters)
    if k == 0:
        return ONE
    bound = [x.value for x in letters]
    strict = [letters[j] > letters[j + 1] for j in range(k - 1)] + [False]
    # floor[j]: smallest a_j leaving room for the strict drops after j
    floor = [1] * k
    for j in range(k - 2, -1, -1):
        floor[j] = floor[j + 1] + (1 if strict[j] else 0)
    top = max(bound)
    if top < 1:
        return ZERO
    counts = [0] * top
    terms: dict[tuple, int] = {}

    def rec(j: int, cap: int):
        if j == k:
            e = trim(counts)
            terms[e] = terms.get(e, 0) + 1
            return
        hi = min(cap, bound[j])
        for a in range(hi, floor[j] - 1, -1):
            counts[a - 1] += 1
            rec(j + 1, a - 1 if strict[j] else a)
            counts[a - 1] -= 1

    rec(0, top)
    return Polynomial(terms)


def _linear_tree(alpha: Sequence[int], n: int) -> IndexedForest:
    return IndexedForest.from_code([0] * (n - len(alpha)) + list(alpha))


def fundamental_qsym(alpha: Sequence[int], n: int) -> Polynomial:
    """F_alpha(x_1..x_n), realized as the forest polynomial of a linear tree."""
    alpha = tuple(alpha)
    if any(a < 1 for a in alpha):
        raise ValueError("composition parts must be positive")
    if n < len(alpha):
        return ZERO
    return forest_polynomial(_linear_tree(alpha, n))


def monomial_qsym(alpha: Sequence[int], n: int) -> Polynomial:
    """Monomial quasisymmetric polynomial M_alpha(x_1..x_n)."""
    from itertools import combinations
    alpha = tuple(alpha)
    terms = {}
    for pos in combinations(range(n), len(alpha)):
        e = [0] * n
        for p, a in zip(pos, alpha):
            e[p] = a
        terms[tuple(e)] = 1
    return Polynomial(terms)


@lru_cache(maxsize=None)
def schubert(w: Permutation) -> Polynomial:
    """Sum of slide polynomials over Red(w^-1)."""
    if not w.is_positive():
        raise ValueError("negative support")
    total = ZERO
    for r in reduced_words(w.inverse()):
        total = total + _slide(to_barred(r))
    return total


# -- forest polynomials ----------------------------------------------------

FOREST_ROUTES = ("definition", "slides", "recurrence")


def forest_polynomial(forest: IndexedForest, route: str = "recurrence",
                      flag: Sequence[BarredLetter] | None = None) -> Polynomial:
    """
    The forest polynomial, by one of three routes.

    ``flag`` replaces rho_F by another LBS labeling as the upper bound
    (definition route) or as the letters read along linear extensions
    (slides route).
    """
    if flag is not None:
        flag = tuple(flag)
        if not is_lbs(forest, flag):
            raise ValueError("not an LBS labeling")
    if route == "definition":
        bounds = forest.rho_values if flag is None else tuple(x.value for x in flag)
        return _forest_by_definition(forest, bounds)
    if route == "slides":
        return _forest_by_slides(forest, flag if flag is not None else canonical_flag(forest))
    if route == "recurrence":
        if flag is not None:
            raise ValueError("the recurrence route takes no flag")
        return _forest_by_recurrence(forest)
    raise ValueError(f"unknown route {route!r}")


def _forest_by_definition(forest: IndexedForest, bounds: Sequence[int]) -> Polynomial:
    # G[u][k]: sum over labelings of the subtree at u with kappa(u) = k
    bound = dict(zip(forest.nodes, bounds))
    x = {}

    def var(k):
        if k not in x:
            x[k] = Polynomial.variable(k)
        return x[k]

    def table(u) -> dict[int, Polynomial]:
        l, r = forest.left(u), forest.right(u)
        gl = table(l) if l is not None else None
        gr = table(r) if r is not None else None
        out = {}
        for k in range(1, bound[u] + 1):
            term = var(k)
            if gl is not None:
                s = ZERO
                for k2, p in gl.items():
                    if k2 >= k:
                        s = s + p
                term = term * s
            if gr is not None:
                s = ZERO
                for k2, p in gr.items():
                    if k2 > k:
                        s = s + p
                term = term * s
            if term:
                out[k] = term
        return out

    total = ONE
    for root in forest.roots():
        s = ZERO
        for p in table(root).values():
            s = s + p
        total = total * s
    return total


def _forest_by_slides(forest: IndexedForest, flag: Sequence[BarredLetter]) -> Polynomial:
    total = ZERO
    for lab in decreasing_labelings(forest):
        order = sorted(range(len(lab)), key=lambda i: lab[i])
        total = total + _slide(tuple(flag[i] for i in order))
    return total


@lru_cache(maxsize=None)
def _forest_by_recurrence(forest: IndexedForest) -> Polynomial:
    # a labeling either stays below rho at every terminal node (shift), or
    # has a last terminal node v with kappa(v) = rho(v); everything right of
    # v must then stay below its bound, hence the compressed trim
    if forest.size == 0:
        return ONE
    if not forest.is_positive():
        return ZERO
    total = _forest_by_recurrence(forest.shift(-1))
    for v in forest.terminal_nodes():
        total = total + Polynomial.variable(forest.rho(v)) * _forest_by_recurrence(forest.trim(v, compress=True))
    return total


def dual_forest_polynomial(forest: IndexedForest, n: int) -> Polynomial:
    """
    Sum over labelings into [n] with kappa(v) > rho_F(v), strictly
    decreasing down left edges and weakly decreasing down right edges.
    """
    x = {}

    def var(k):
        if k not in x:
            x[k] = Polynomial.variable(k)
        return x[k]

    def table(u) -> dict[int, Polynomial]:
        l, r = forest.left(u), forest.right(u)
        gl = table(l) if l is not None else None
        gr = table(r) if r is not None else None
        out = {}
        for k in range(max(forest.rho(u) + 1, 1), n + 1):
            term = var(k)
            if gl is not None:
                s = ZERO
                for k2, p in gl.items():
                    if k2 < k:
                        s = s + p
                term = term * s
            if gr is not None:
                s = ZERO
                for k2, p in gr.items():
                    if k2 <= k:
                        s = s + p
                term = term * s
            if term:
                out[k] = term
        return out

    total = ONE
    for root in forest.roots():
        s = ZERO
        for p in table(root).values():
            s = s + p
        total = total * s
    return total


# -- change of basis ---------------------------------------------------------

def basis_element(kind: str, c: tuple[int, ...]):
    """(id, polynomial) of the basis element with revlex leading exponent c."""
    if kind == "forest":
        f = IndexedForest.from_code(c)
        return f, _forest_by_recurrence(f)
    if kind == "slide":
        v = NVector(c)
        return v, slide_from_code(v)
    if kind == "schubert":
        w = Permutation.from_code(NVector(c))
        return w, schubert(w)
    if kind == "monomial":
        return tuple(c), Polynomial.monomial(c)
    raise ValueError(f"unknown basis {kind!r}")


@dataclass
class BasisExpansion:
    kind: str
    coefficients: dict = field(default_factory=dict)

    def to_polynomial(self) -> Polynomial:
        total = ZERO
        for key, c in self.coefficients.items():
            total = total + _element_of_id(self.kind, key).scale(c)
        return total

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: _id_sort_key(self.kind, kv[0]),
                      reverse=True)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " ".join(f"{format_id(self.kind, k)}:{c}" for k, c in self.items())

    def to_json(self) -> dict:
        return {"basis": self.kind,
                "terms": [{"id": format_id(self.kind, k), "num": c.numerator, "den": c.denominator}
                          for k, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> BasisExpansion:
        if isinstance(data, str):
            data = json.loads(data)
        kind = data["basis"]
        return cls(kind, {parse_id(kind, t["id"]): Fraction(t["num"], t["den"])
                          for t in data["terms"]})


def _element_of_id(kind: str, key) -> Polynomial:
    if kind == "forest":
        return _forest_by_recurrence(key)
    if kind == "slide":
        return slide_from_code(key)
    if kind == "schubert":
        return schubert(key)
    return Polynomial.monomial(key)


def _code_of_id(kind: str, key) -> tuple:
    if kind == "forest":
        return key.code().as_tuple()
    if kind == "slide":
        return key.as_tuple()
    if kind == "schubert":
        return key.code().as_tuple()
    return tuple(key)


def _id_sort_key(kind: str, key):
    from .polynomial import revlex_key
    return revlex_key(_code_of_id(kind, key), 64)


def format_id(kind: str, key) -> str:
    if kind == "schubert":
        return str(key)
    return "(" + ",".join(map(str, _code_of_id(kind, key))) + ")"


def parse_id(kind: str, text: str):
    if kind == "schubert":
        return Permutation.parse(text)
    vals = tuple(int(s) for s in text.strip("()").split(",") if s.strip())
    if kind == "forest":
        return IndexedForest.from_code(vals)
    if kind == "slide":
        return NVector(vals)
    return trim(vals)


def expand_in_basis(f: Polynomial, basis: str = "forest") -> BasisExpansion:
    """
    Greedy revlex-leading-term elimination. Each basis element is
    unitriangular to monomials, so every subtraction lowers the leading exponent.
    """
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    coeffs = {}
    rest = f
    while rest:
        c = revlex_leading(rest)
        a = rest.coefficient(c)
        key, elem = basis_element(basis, c)
        assert elem.coefficient(c) == 1 and revlex_leading(elem) == c
        coeffs[key] = coeffs.get(key, 0) + a
        rest = rest - elem.scale(a)
    return BasisExpansion(basis, {k: v for k, v in coeffs.items() if v})
