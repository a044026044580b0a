"""
Independent reference computations for the test-suite.

Nothing here imports the algorithms under test; only the data types
(Polynomial, Permutation, IndexedForest) are shared.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import prod

from forestcalc.polynomial import Polynomial


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    # d_i x_i^a x_{i+1}^b = sum of x_i^p x_{i+1}^q over p+q = a+b-1 between the exponents
    terms = {}
    for e, c in f.items():
        e = list(e) + [0] * max(0, i + 1 - len(e))
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, hi = min(a, b), max(a, b)
        for p in range(lo, hi):
            g = list(e)
            g[i - 1], g[i] = p, a + b - 1 - p
            key = tuple(g)
            terms[key] = terms.get(key, 0) + sign * c
    return Polynomial(terms)


@lru_cache(maxsize=None)
def schubert_by_divided_differences(one_line) -> Polynomial:
    """S_w0 = x^delta, and S_w = d_i S_{w s_i} at any ascent w(i) < w(i+1)."""
    w = tuple(one_line)
    n = len(w)
    for i in range(n - 1):
        if w[i] < w[i + 1]:
            u = list(w)
            u[i], u[i + 1] = u[i + 1], u[i]
            return divided_difference(schubert_by_divided_differences(tuple(u)), i + 1)
    return Polynomial.monomial(tuple(range(n - 1, -1, -1)))


def forest_poly_brute(forest) -> Polynomial:
    """Enumerate every kappa with 1 <= kappa <= rho, weak on left edges, strict on right."""
    nodes = forest.nodes
    top = max(forest.rho_values, default=0)
    terms = {}
    for kappa in product(range(1, top + 1), repeat=len(nodes)):
        k = dict(zip(nodes, kappa))
        if any(k[u] > forest.rho(u) for u in nodes):
            continue
        ok = True
        for u in nodes:
            l, r = forest.left(u), forest.right(u)
            if l is not None and not k[l] >= k[u]:
                ok = False
            if r is not None and not k[r] > k[u]:
                ok = False
        if ok:
            e = [0] * top
            for v in kappa:
                e[v - 1] += 1
            t = tuple(e)
            terms[t] = terms.get(t, 0) + 1
    return Polynomial(terms)


def lehmer(one_line):
    w = list(one_line)
    return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))


def inversions(one_line) -> int:
    w = list(one_line)
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def ds_definition(f: Polynomial, n: int, point) -> Fraction:
    """Sum over S_n of sigma(f / prod (x_i - x_{i+1})) at a point."""
    total = Fraction(0)
    x = [Fraction(p) for p in point]
    for sigma in permutations(range(n)):
        y = [x[s] for s in sigma]
        den = prod(y[i] - y[i + 1] for i in range(n - 1))
        total += f.eval(y) / den
    return total


def simple_parking(prefs) -> frozenset:
    """A car preferring an occupied spot takes the next free spot to the right."""
    taken = set()
    for p in prefs:
        while p in taken:
            p += 1
        taken.add(p)
    return frozenset(taken)
