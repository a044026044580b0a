"""
Headline computations: the coefficients a_w, Schubert-to-forest expansion,
forest structure constants, multivariate mixed Eulerian numbers, bilabeled
trees, and the tableau and shifted-permutation checks on a_w.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .bases import BasisExpansion, expand_in_basis, forest_polynomial, schubert
from .combinatorics import (BarredLetter, Permutation, format_word, lehmer_code,
                            parse_word, permutations_of_length, reduced_words, shift_permutation)
from .correspondence import gamma_inverse, is_parking, omega_parking, partition_classes, p_symbol
from .forest import (IndexedForest, LabeledForest, binary_trees, canonical_flag,
                     decreasing_labelings, is_lbs, lbs_labelings)
from .polynomial import ONE, Polynomial
from .quotient import AbbRepresentative, divided_symmetrization, reduce_mod_qsym

__all__ = [
    "AwReport", "a_w", "a_w_table", "schubert_forest_expansion", "SchubertForestExpansion",
    "forest_structure_constants", "MixedEulerian", "multivariate_mixed_eulerian",
    "mixed_eulerian_lbs", "mixed_eulerian_parking_count", "letters_of_content",
    "BilabeledTree", "bilabeled_trees", "bilabeled_to_lbs", "syt", "syt_descent_count",
    "partition_of", "grassmannian_check", "shifted_identity", "reduced_word_letters",
]

AW_ROUTES = ("parking", "ds", "forest")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("FORESTCALC_THREADS", "1")))
    except ValueError:
        return 1


# -- a_w ---------------------------------------------------------------------

@dataclass
class AwReport:
    w: Permutation
    n: int
    value: int
    routes: dict
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.routes.values())) > 1:
            raise AssertionError(f"routes disagree for {self.w}: {self.routes}")

    def label(self) -> str:
        """w in one-line notation as an element of S_n."""
        vals = self.w.one_line(self.n)
        return ("" if self.n <= 9 else ",").join(map(str, vals))

    def to_json(self) -> dict:
        return {"w": self.label(), "n": self.n, "value": self.value,
                "routes": {k: int(v) for k, v in self.routes.items()},
                "witnesses": [format_word(x) for x in self.witnesses]}

    @classmethod
    def from_json(cls, data: dict) -> AwReport:
        return cls(Permutation.parse(data["w"]), data["n"], data["value"], dict(data["routes"]),
                   [parse_word(x) for x in data["witnesses"]])

    def tsv(self) -> str:
        cols = [self.label(), str(self.value)] + [str(self.routes.get(r, "")) for r in AW_ROUTES]
        return "\t".join(cols + [" ".join(format_word(x) for x in self.witnesses)])


def a_w(w: Permutation, route: str = "all", n: int | None = None) -> AwReport:
    ell = w.length()
    if n is None:
        n = max(w.max_support(), 1) if w.support() else ell + 1
    if ell != n - 1:
        raise ValueError(f"length must be n-1 (got length {ell} with n={n})")
    if w.support() and (min(w.support()) < 1 or w.max_support() > n):
        raise ValueError(f"{w} is not in S_{n}")
    routes = AW_ROUTES if route == "all" else (route,)
    if any(r not in AW_ROUTES for r in routes):
        raise ValueError(f"unknown route {route!r}")
    words = reduced_words(w.inverse())
    witnesses = [r for r in words if is_parking(r)]
    values = {}
    for r in routes:
        if r == "parking":
            values[r] = len(witnesses)
        elif r == "ds":
            values[r] = _as_int(divided_symmetrization(schubert(w), n))
        else:
            values[r] = _as_int(reduce_mod_qsym(schubert(w), n, "forest").ones())
    return AwReport(w, n, next(iter(values.values())), values, witnesses)


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _aw_all(args) -> AwReport:
    return a_w(*args)


def a_w_table(n: int) -> list[AwReport]:
    """All w in S_n of length n-1, sorted by one-line notation."""
    perms = sorted(permutations_of_length(n, n - 1), key=lambda u: u.one_line(n))
    k = _threads()
    if k > 1 and len(perms) > 8:
        with ProcessPoolExecutor(max_workers=k) as ex:
            return list(ex.map(_aw_all, [(u, "all", n) for u in perms]))
    return [a_w(u, "all", n) for u in perms]


# -- Schubert to forest ------------------------------------------------------

@dataclass
class SchubertForestExpansion:
    w: Permutation
    classes: dict          # P-symbol -> sorted list of barred words
    expansion: BasisExpansion

    def to_polynomial(self) -> Polynomial:
        return self.expansion.to_polynomial()


def schubert_forest_expansion(w: Permutation) -> SchubertForestExpansion:
    classes = partition_classes(reduced_words(w.inverse()))
    coeffs: dict = {}
    for P in classes:
        coeffs[P.forest] = coeffs.get(P.forest, 0) + 1
    exp = BasisExpansion("forest", {f: Fraction(c) for f, c in coeffs.items()})
    return SchubertForestExpansion(w, classes, exp)


# -- structure constants -----------------------------------------------------

def _class_words(P: LabeledForest) -> list[tuple]:
    return [gamma_inverse(P, LabeledForest(P.forest, q)) for q in decreasing_labelings(P.forest)]


def _shuffles(u: tuple, v: tuple):
    k = len(u) + len(v)
    for pos in combinations(range(k), len(u)):
        out, iu, iv = [], 0, 0
        ps = set(pos)
        for t in range(k):
            if t in ps:
                out.append(u[iu])
                iu += 1
            else:
                out.append(v[iv])
                iv += 1
        yield tuple(out)


def forest_structure_constants(F1: IndexedForest, F2: IndexedForest,
                               route: str = "expansion") -> dict:
    if not (F1.is_positive() and F2.is_positive()):
        raise ValueError("forests must have positive support")
    if route == "expansion":
        exp = expand_in_basis(forest_polynomial(F1) * forest_polynomial(F2), "forest")
        out = {}
        for G, c in exp.coefficients.items():
            if c.denominator != 1:
                raise AssertionError("non-integral structure constant")
            out[G] = int(c)
        return _sorted_constants(out)
    if route == "shuffle":
        P1 = LabeledForest(F1, canonical_flag(F1))
        offset = 1 + max((x.copy for x in P1.labels), default=0)
        P2 = LabeledForest(F2, tuple(BarredLetter(x.value, x.copy + offset)
                                     for x in canonical_flag(F2)))
        symbols = set()
        for u in _class_words(P1):
            for v in _class_words(P2):
                for w in _shuffles(u, v):
                    symbols.add(p_symbol(w))
        out = {}
        for P in symbols:
            # classes on forests reaching x_0 or below have zero polynomial
            if P.forest.is_positive():
                out[P.forest] = out.get(P.forest, 0) + 1
        return _sorted_constants(out)
    raise ValueError(f"unknown route {route!r}")


def _sorted_constants(d: dict) -> dict:
    return dict(sorted(d.items(), key=lambda kv: kv[0].code().items()))


# -- multivariate mixed Eulerian numbers -------------------------------------

def _check_content(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(int(x) for x in c)
    if not c or any(x < 0 for x in c) or sum(c) != len(c):
        raise ValueError("c must have n-1 nonnegative parts summing to n-1")
    return c


def letters_of_content(c: Sequence[int]) -> tuple[BarredLetter, ...]:
    """The alphabet with c_i copies of the value i, in increasing order."""
    c = _check_content(c)
    return tuple(BarredLetter(i, j) for i, ci in enumerate(c, start=1) for j in range(1, ci + 1))


@dataclass
class MixedEulerian:
    c: tuple
    rep: AbbRepresentative

    @property
    def n(self) -> int:
        return len(self.c) + 1

    @property
    def poly(self) -> Polynomial:
        return self.rep.poly

    def value_at_ones(self) -> int:
        return _as_int(self.rep.poly.ones(self.n - 1))

    def q_coefficients(self) -> list:
        """Coefficients of the substitution x_i = q^(i-1), by power of q."""
        out: dict[int, Fraction] = {}
        for e, a in self.poly.items():
            k = sum((i) * x for i, x in enumerate(e))
            out[k] = out.get(k, 0) + a
        top = max(out, default=-1)
        return [_as_int(Fraction(out.get(k, 0))) for k in range(top + 1)]

    def at_q(self, q) -> Fraction:
        q = Fraction(q)
        return sum((Fraction(a) * q ** k for k, a in enumerate(self.q_coefficients())), Fraction(0))

    def to_json(self) -> dict:
        return {"c": list(self.c), "n": self.n, **self.poly.to_json(),
                "at_ones": self.value_at_ones()}


def y_c(c: Sequence[int]) -> Polynomial:
    out = ONE
    partial = Polynomial()
    for i, ci in enumerate(c, start=1):
        partial = partial + Polynomial.variable(i)
        out = out * partial ** ci
    return out


def multivariate_mixed_eulerian(c: Sequence[int], route: str = "forest") -> MixedEulerian:
    c = _check_content(c)
    if route == "lbs":
        rep = AbbRepresentative(mixed_eulerian_lbs(c), len(c) + 1)
    else:
        rep = reduce_mod_qsym(y_c(c), len(c) + 1, route)
    return MixedEulerian(c, rep)


def _lbs_trees(c: tuple) -> list[LabeledForest]:
    letters = letters_of_content(c)
    out = []
    for shape in binary_trees(len(c)):
        f = IndexedForest(((1, shape),))
        out.extend(LabeledForest(f, lab) for lab in lbs_labelings(f, letters))
    return out


def mixed_eulerian_lbs(c: Sequence[int]) -> Polynomial:
    """Sum of beta(P) over LBS trees on [n-1] labeled by the content alphabet."""
    total = Polynomial()
    for P in _lbs_trees(_check_content(c)):
        total = total + forest_polynomial(P.forest, "definition", P.labels)
    return total


def mixed_eulerian_parking_count(c: Sequence[int]) -> int:
    letters = letters_of_content(c)
    return sum(1 for w in permutations(letters) if is_parking(w))


# -- bilabeled trees ---------------------------------------------------------

@dataclass(frozen=True)
class BilabeledTree:
    shape: tuple
    labels: tuple       # interleaved inorder: leaf, node, leaf, ..., leaf

    @property
    def node_labels(self) -> tuple:
        return self.labels[1::2]

    @property
    def leaf_labels(self) -> tuple:
        return self.labels[0::2]

    def __str__(self) -> str:
        # nested inorder: (left label right), leaves in brackets
        it = iter(self.labels)

        def show(t):
            if t is None:
                return f"[{next(it)}]"
            left = show(t[0])
            mid = next(it)
            return f"({left} {mid} {show(t[1])})"

        return show(self.shape)


def _leaf_labels(c: tuple) -> list[int]:
    out, s = [], 0
    for i in range(1, len(c) + 2):
        out.append(i + s)
        if i <= len(c):
            s += c[i - 1]
    return out


def bilabeled_trees(c: Sequence[int]) -> list[BilabeledTree]:
    """
    Trees of size n-1 with nodes and leaves labeled bijectively by [2n-1],
    leaf labels fixed by c, and each node between its two children.
    """
    c = _check_content(c)
    n = len(c) + 1
    leaves = _leaf_labels(c)
    free = sorted(set(range(1, 2 * n)) - set(leaves))
    out = []
    for shape in binary_trees(n - 1):
        f = IndexedForest(((1, shape),))
        nodes = f.nodes
        for perm in permutations(free):
            lab = dict(zip(nodes, perm))
            ok = True
            for u in nodes:
                # a leaf child of u is the leaf adjacent to u in inorder
                l, r = f.left(u), f.right(u)
                lv = lab[l] if l is not None else leaves[u - 1]
                rv = lab[r] if r is not None else leaves[u]
                if not lv < lab[u] < rv:
                    ok = False
                    break
            if ok:
                inter = []
                for k, u in enumerate(nodes):
                    inter += [leaves[k], lab[u]]
                inter.append(leaves[-1])
                out.append(BilabeledTree(shape, tuple(inter)))
    return sorted(out, key=lambda t: (str(t.shape), t.labels))


def bilabeled_to_lbs(t: BilabeledTree, c: Sequence[int]) -> LabeledForest:
    c = _check_content(c)
    n = len(c) + 1
    free = sorted(set(range(1, 2 * n)) - set(_leaf_labels(c)))
    letters = letters_of_content(c)
    rank = {x: letters[k] for k, x in enumerate(free)}
    f = IndexedForest(((1, t.shape),))
    P = LabeledForest(f, tuple(rank[x] for x in t.node_labels))
    if not is_lbs(f, P.labels):
        raise AssertionError("image is not an LBS labeling")
    return P


# -- tableaux and the Grassmannian check ------------------------------------

def syt(shape: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """All standard Young tableaux of a partition shape (English notation)."""
    shape = tuple(x for x in shape if x > 0)
    total = sum(shape)
    rows = [[] for _ in shape]
    out = []

    def rec(k):
        if k > total:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, r in enumerate(rows):
            if len(r) < shape[i] and (i == 0 or len(rows[i - 1]) > len(r)):
                r.append(k)
                rec(k + 1)
                r.pop()

    rec(1)
    return out


def descents(tableau) -> list[int]:
    """i is a descent when i+1 sits in a strictly lower row."""
    row = {x: k for k, r in enumerate(tableau) for x in r}
    return [i for i in range(1, len(row)) if row[i + 1] > row[i]]


def syt_descent_count(shape: Sequence[int], m: int) -> int:
    return sum(1 for t in syt(shape) if len(descents(t)) == m - 1)


def partition_of(w: Permutation) -> tuple[int, ...]:
    return tuple(sorted((v for _, v in lehmer_code(w).items()), reverse=True))


def grassmannian_check(n: int) -> list[tuple[Permutation, int, int, int]]:
    """(w, m, a_w, SYT count) for every Grassmannian w in S_n of length n-1."""
    out = []
    for w in sorted(permutations_of_length(n, n - 1), key=lambda u: u.one_line(n)):
        d = w.descents()
        if len(d) != 1:
            continue
        m = d[0]
        out.append((w, m, a_w(w, "parking", n).value, syt_descent_count(partition_of(w), m)))
    return out


# -- shifted permutations ----------------------------------------------------

def reduced_word_letters(w: Permutation) -> tuple[int, ...]:
    return tuple(sorted({x for r in reduced_words(w.inverse()) for x in r}))


def _parking_count(u: Permutation, n: int) -> int:
    return sum(1 for r in reduced_words(u.inverse()) if omega_parking(r) == frozenset(range(1, n)))


def shifted_identity(w: Permutation, j: int, n: int | None = None, check: bool = True):
    """
    Both sides of S_{1^j x w}(1,1,...) = sum_m a_{1^(j-m) x w} C(n+m-1, n-1),
    m from max(0, p+j-n) to j, where the letters of Red(w^-1) are [p-1].

    Returns (lhs, rhs). With ``check`` the initial-interval hypothesis is
    enforced; without it p is taken as 1 + the largest letter.
    """
    if n is None:
        n = w.length() + 1
    letters = reduced_word_letters(w)
    p = (max(letters) if letters else 0) + 1
    if check and letters != tuple(range(1, p)):
        raise ValueError(f"letters of Red(w^-1) are {set(letters)}, not an initial interval")
    u = shift_permutation(w, j)
    lhs = schubert(u).ones(u.max_support() + 1)
    rhs = sum(_parking_count(shift_permutation(w, j - m), n) * comb(n + m - 1, n - 1)
              for m in range(max(0, p + j - n), j + 1))
    return int(lhs), int(rhs)
