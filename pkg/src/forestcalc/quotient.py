"""
Reduction modulo the ideal generated by positive-degree quasisymmetric
polynomials in x_1..x_n, divided symmetrization, and the sign-reversing
involution on compatible pairs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Iterator, Sequence

from .bases import expand_in_basis, forest_polynomial, monomial_qsym
from .combinatorics import is_abb
from .forest import IndexedForest
from .polynomial import ZERO, Polynomial, revlex_key, trim

__all__ = [
    "AbbRepresentative", "reduce_mod_qsym", "divided_symmetrization", "ds_at_point",
    "linear_complement_dimension", "reflect", "CompatiblePair", "lower_ideals",
    "compatible_pairs", "is_compatible", "exchangeable_nodes", "is_good", "psi_involution",
    "signed_sum",
]


@dataclass(frozen=True)
class AbbRepresentative:
    """A polynomial whose exponents all lie in ABB_n."""
    poly: Polynomial
    n: int

    def __post_init__(self):
        for e, _ in self.poly.items():
            if len(e) > self.n or not is_abb(e + (0,) * (self.n - len(e)), self.n):
                raise ValueError(f"exponent {e} is not in ABB_{self.n}")

    def ones(self) -> Fraction:
        return self.poly.ones(self.n)

    def __str__(self) -> str:
        return str(self.poly)

    def to_json(self) -> dict:
        return {"n": self.n, **self.poly.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> AbbRepresentative:
        return cls(Polynomial.from_json(data), data["n"])


def _check_vars(f: Polynomial, n: int):
    if n < 1:
        raise ValueError("n must be positive")
    if f.nvars > n:
        raise ValueError(f"polynomial uses x{f.nvars}, beyond x{n}")


def reduce_mod_qsym(f: Polynomial, n: int, route: str = "forest") -> AbbRepresentative:
    """The representative of f in the span of ABB_n monomials."""
    _check_vars(f, n)
    if route == "forest":
        exp = expand_in_basis(f, "forest")
        out = ZERO
        for forest, c in exp.coefficients.items():
            if all(1 <= s <= n - 1 for s in forest.support()):
                out = out + forest_polynomial(forest).scale(c)
        return AbbRepresentative(out, n)
    if route == "linear":
        out = ZERO
        for d, comp in f.homogeneous_components().items():
            out = out + _LinearReducer.get(n, d).reduce(comp)
        return AbbRepresentative(out, n)
    raise ValueError(f"unknown route {route!r}")


def _monomials(n: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(trim(e))
    return out


def _compositions(k: int, max_len: int) -> Iterator[tuple]:
    if k == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(1, k + 1):
        for rest in _compositions(k - first, max_len - 1):
            yield (first,) + rest


class _LinearReducer:
    """
    Row echelon form of the degree-d part of the ideal, with columns ordered
    non-ABB monomials first (revlex descending), then ABB monomials.
    """
    _cache: dict = {}
    _lock = threading.Lock()

    @classmethod
    def get(cls, n: int, d: int) -> _LinearReducer:
        with cls._lock:
            if (n, d) not in cls._cache:
                cls._cache[(n, d)] = cls(n, d)
            return cls._cache[(n, d)]

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        monos = _monomials(n, d)
        pad = lambda e: e + (0,) * (n - len(e))
        non_abb = sorted((e for e in monos if not is_abb(pad(e), n)),
                         key=lambda e: revlex_key(e, n), reverse=True)
        abb = sorted((e for e in monos if is_abb(pad(e), n)),
                     key=lambda e: revlex_key(e, n), reverse=True)
        self.columns = non_abb + abb
        self.index = {e: k for k, e in enumerate(self.columns)}
        self.n_non_abb = len(non_abb)
        self.rows: dict[int, dict[int, Fraction]] = {}
        if d > 0:
            self._build()

    def _vector(self, p: Polynomial) -> dict[int, Fraction]:
        return {self.index[e]: c for e, c in p.items()}

    def _eliminate(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            k = min(hits)
            c = v[k]
            for j, r in self.rows[k].items():
                x = v.get(j, 0) - c * r
                if x:
                    v[j] = x
                else:
                    v.pop(j, None)

    def _build(self):
        n, d = self.n, self.d
        for k in range(1, d + 1):
            cofactors = _monomials(n, d - k)
            for alpha in _compositions(k, n):
                m = monomial_qsym(alpha, n)
                for b in cofactors:
                    v = self._eliminate(self._vector(m * Polynomial.monomial(b)))
                    if v:
                        p = min(v)
                        if p >= self.n_non_abb:
                            raise AssertionError("ideal meets the ABB span")
                        c = v[p]
                        self.rows[p] = {j: x / c for j, x in v.items()}
                        if len(self.rows) == self.n_non_abb:
                            return

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, p: Polynomial) -> Polynomial:
        if len(self.rows) < self.n_non_abb:
            raise AssertionError("ideal rows do not cover the non-ABB monomials")
        v = self._eliminate(self._vector(p))
        return Polynomial({self.columns[k]: c for k, c in v.items()})


def linear_complement_dimension(n: int, d: int) -> int:
    """Monomials of degree d minus the rank of the ideal in degree d."""
    r = _LinearReducer.get(n, d)
    return len(r.columns) - r.rank


# -- divided symmetrization -------------------------------------------------

def _check_ds(f: Polynomial, n: int):
    _check_vars(f, n)
    if f and (not f.is_homogeneous() or f.degree != n - 1):
        raise ValueError("degree must be n-1")


def ds_at_point(f: Polynomial, n: int, point: Sequence) -> Fraction:
    """Sum over w in S_n of w(f / prod (x_i - x_{i+1})) at a point."""
    _check_ds(f, n)
    pt = [Fraction(v) for v in point]
    if len(pt) != n or len(set(pt)) != n:
        raise ValueError("point needs n distinct coordinates")
    total = Fraction(0)
    for w in permutations(range(n)):
        q = [pt[w[i]] for i in range(n)]
        den = Fraction(1)
        for i in range(n - 1):
            den *= q[i] - q[i + 1]
        total += f.eval(q) / den
    return total


GENERIC_POINTS = (lambda n: [3 ** i for i in range(1, n + 1)],
                  lambda n: [3 ** i + 1 for i in range(1, n + 1)])


def divided_symmetrization(f: Polynomial, n: int, route: str = "direct") -> Fraction:
    if route == "direct":
        return ds_at_point(f, n, GENERIC_POINTS[0](n))
    if route == "quotient":
        _check_ds(f, n)
        return reduce_mod_qsym(f, n).ones()
    raise ValueError(f"unknown route {route!r}")


def reflect(f: Polynomial, n: int) -> Polynomial:
    """x_i -> -x_{n+1-i}."""
    _check_vars(f, n)
    images = [Polynomial.variable(n + 1 - i).scale(-1) for i in range(1, n + 1)]
    return f.substitute(images)


# -- compatible pairs and the involution ------------------------------------

@dataclass(frozen=True)
class CompatiblePair:
    forest: IndexedForest
    lower: frozenset        # the lower ideal L, as canonical labels
    kappa: tuple            # labels aligned with forest.nodes

    def label(self, u: int) -> int:
        return self.kappa[self.forest.nodes.index(u)]

    @property
    def sign(self) -> int:
        return -1 if len(self.lower) % 2 else 1

    def weight(self) -> Polynomial:
        e = [0] * max(self.kappa, default=0)
        for k in self.kappa:
            e[k - 1] += 1
        return Polynomial.monomial(e)


def _is_lower_ideal(forest: IndexedForest, L) -> bool:
    return all(c in L for u in L for c in forest.children(u))


def is_compatible(forest: IndexedForest, L, kappa: Sequence[int]) -> bool:
    if len(kappa) != forest.size or any(k < 1 for k in kappa):
        return False
    if not set(L) <= set(forest.nodes) or not _is_lower_ideal(forest, L):
        return False
    lab = dict(zip(forest.nodes, kappa))
    for u in forest.nodes:
        l, r = forest.left(u), forest.right(u)
        if u in L:
            if lab[u] <= forest.rho(u):
                return False
            if l is not None and not lab[l] < lab[u]:
                return False
            if r is not None and not lab[r] <= lab[u]:
                return False
        else:
            if l is not None and l not in L and not lab[l] >= lab[u]:
                return False
            if r is not None and r not in L and not lab[r] > lab[u]:
                return False
    return True


def lower_ideals(forest: IndexedForest) -> list[frozenset]:
    """Sets closed under taking children, sorted by size then content."""
    out: list[frozenset] = []

    def options(u) -> list[frozenset]:
        # lower ideals of the subtree at u
        subs = [frozenset()]
        for c in forest.children(u):
            subs = [a | b for a in subs for b in options(c)]
        full = frozenset(forest.descendants(u)) | {u}
        return subs + [full]

    acc = [frozenset()]
    for r in forest.roots():
        acc = [a | b for a in acc for b in options(r)]
    out = sorted(set(acc), key=lambda s: (len(s), sorted(s)))
    return out


def compatible_pairs(forest: IndexedForest, n: int) -> list[CompatiblePair]:
    """All (kappa, L) with kappa values in [n], by constrained search."""
    nodes = forest.nodes
    index = {u: i for i, u in enumerate(nodes)}
    order = []

    def preorder(u):
        order.append(u)
        for c in forest.children(u):
            preorder(c)

    for r in forest.roots():
        preorder(r)
    out = []
    for L in lower_ideals(forest):
        lab = [0] * len(nodes)

        def rec(k):
            if k == len(order):
                out.append(CompatiblePair(forest, L, tuple(lab)))
                return
            u = order[k]
            p = forest.parent(u)
            lo, hi = 1, n
            if u in L:
                lo = max(lo, forest.rho(u) + 1)
            if p is not None and (u in L) == (p in L):
                pk = lab[index[p]]
                is_left = forest.left(p) == u
                if u in L:
                    hi = min(hi, pk - 1 if is_left else pk)
                else:
                    lo = max(lo, pk if is_left else pk + 1)
            for x in range(lo, hi + 1):
                lab[index[u]] = x
                rec(k + 1)
            lab[index[u]] = 0

        rec(0)
    return out


def _validate(y: CompatiblePair):
    if not is_compatible(y.forest, y.lower, y.kappa):
        raise ValueError("not a compatible pair")


def is_good(y: CompatiblePair) -> bool:
    return not y.lower and all(k <= r for k, r in zip(y.kappa, y.forest.rho_values))


def exchangeable_nodes(y: CompatiblePair) -> list[int]:
    _validate(y)
    f, L = y.forest, y.lower
    lab = dict(zip(f.nodes, y.kappa))
    out = []
    for v in f.nodes:
        p = f.parent(v)
        if v in L:
            if p is not None and p in L:
                continue
            if (p is None or (f.left(p) == v and lab[v] >= lab[p])
                    or (f.right(p) == v and lab[v] > lab[p])):
                out.append(v)
        else:
            if any(c not in L for c in f.children(v)):
                continue
            l, r = f.left(v), f.right(v)
            if (lab[v] > f.rho(v) and (l is None or lab[v] > lab[l])
                    and (r is None or lab[v] >= lab[r])):
                out.append(v)
    return out


def psi_involution(y: CompatiblePair) -> CompatiblePair:
    _validate(y)
    if is_good(y):
        return y
    ex = exchangeable_nodes(y)
    if not ex:
        raise AssertionError("no exchangeable node outside Good")
    v = ex[0]
    L = y.lower - {v} if v in y.lower else y.lower | {v}
    return CompatiblePair(y.forest, frozenset(L), y.kappa)


def signed_sum(forest: IndexedForest, n: int) -> Polynomial:
    total = ZERO
    for y in compatible_pairs(forest, n):
        total = total + y.weight().scale(y.sign)
    return total
