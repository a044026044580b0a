"""
Invariant suites bundled with the package, each capped by a maximum n.

Run via ``forestcalc selftest --max-n N``; every suite prints one line.
"""

from __future__ import annotations

import random
from itertools import permutations
from typing import Callable

from .applications import a_w, schubert_forest_expansion
from .bases import expand_in_basis, forest_polynomial, schubert, slide_from_code
from .combinatorics import (Permutation, abb_sets, catalan, lehmer_code, permutation_from_code,
                            permutations_of_length, to_barred)
from .correspondence import gamma_inverse, wf_correspondence
from .forest import forests_in, lbs_labelings
from .polynomial import Polynomial
from .quotient import (compatible_pairs, divided_symmetrization, is_good, psi_involution,
                       reduce_mod_qsym, signed_sum)


def _all_perms(n: int):
    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def suite_codes(max_n: int) -> str:
    count = 0
    for n in range(1, max_n + 1):
        for w in _all_perms(n):
            assert permutation_from_code(lehmer_code(w)) == w
            count += 1
        abb = abb_sets(n)[0]
        assert len(abb) == catalan(n), (n, len(abb))
    return f"{count} permutations"


def suite_forest_routes(max_n: int) -> str:
    fs = forests_in(1, max_n - 1, max_size=max_n)
    for f in fs:
        p = forest_polynomial(f, "recurrence")
        assert p == forest_polynomial(f, "definition") == forest_polynomial(f, "slides"), f
        for flag in lbs_labelings(f)[:3]:
            assert forest_polynomial(f, "definition", flag) == p, (f, flag)
    return f"{len(fs)} forests"


def suite_schubert(max_n: int) -> str:
    count = 0
    for n in range(1, max_n + 1):
        for w in _all_perms(n):
            s = schubert(w)
            assert schubert_forest_expansion(w).to_polynomial() == s, w
            assert expand_in_basis(s, "slide").to_polynomial() == s, w
            count += 1
    return f"{count} permutations"


def suite_insertion(max_n: int) -> str:
    count = 0
    for k in range(1, max_n + 1):
        for word in permutations(range(1, k + 1)):
            for w in (word, word[::-1] + word[:1]):
                bw = to_barred(w)
                P, Q = wf_correspondence(bw)
                assert gamma_inverse(P, Q) == bw, w
                count += 1
    return f"{count} words"


def suite_quotient(max_n: int) -> str:
    rng = random.Random(7)
    count = 0
    for n in range(2, max_n + 1):
        for _ in range(5):
            terms = {}
            for _ in range(4):
                e = [0] * n
                for _ in range(n - 1):
                    e[rng.randrange(n)] += 1
                terms[tuple(e)] = rng.randint(-3, 3)
            f = Polynomial(terms)
            a = reduce_mod_qsym(f, n, "forest")
            assert a == reduce_mod_qsym(f, n, "linear"), f
            assert divided_symmetrization(f, n, "direct") == divided_symmetrization(f, n, "quotient"), f
            count += 1
    return f"{count} polynomials"


def suite_aw(max_n: int) -> str:
    count = 0
    for n in range(2, max_n + 1):
        w0 = Permutation(range(n, 0, -1))
        for w in permutations_of_length(n, n - 1):
            r = a_w(w, "all", n)
            assert r.value > 0, w
            assert a_w(w.inverse(), "parking", n).value == r.value, w
            assert a_w(w0 * w * w0, "parking", n).value == r.value, w
            count += 1
    return f"{count} permutations"


def suite_psi(max_n: int) -> str:
    count = 0
    for f in forests_in(1, max_n - 1, max_size=min(max_n - 1, 3)):
        for y in compatible_pairs(f, max_n):
            z = psi_involution(y)
            assert psi_involution(z) == y and z.weight() == y.weight()
            assert (z == y) == is_good(y)
            if z != y:
                assert z.sign == -y.sign
            count += 1
        assert signed_sum(f, max_n) == forest_polynomial(f).truncate(max_n), f
    return f"{count} pairs"


def suite_slides(max_n: int) -> str:
    count = 0
    for n in range(1, max_n):
        for c in _codes(n, max_n - 1):
            p = slide_from_code(c)
            assert expand_in_basis(p, "slide").coefficients == {c: 1}, c
            count += 1
    return f"{count} slides"


def _codes(n: int, total: int):
    from .combinatorics import NVector

    def rec(prefix, left):
        if len(prefix) == n:
            if any(prefix):
                yield NVector(prefix)
            return
        for v in range(left + 1):
            yield from rec(prefix + [v], left - v)

    yield from rec([], total)


SUITES: list[tuple[str, Callable[[int], str]]] = [
    ("codes", suite_codes),
    ("forest-routes", suite_forest_routes),
    ("slides", suite_slides),
    ("schubert", suite_schubert),
    ("insertion", suite_insertion),
    ("quotient", suite_quotient),
    ("a_w", suite_aw),
    ("psi", suite_psi),
]


def run(max_n: int = 4, out=print) -> bool:
    if max_n < 2:
        raise ValueError("max-n must be at least 2")
    ok = True
    for name, fn in SUITES:
        try:
            detail = fn(max_n)
            status = "PASS"
        except AssertionError as exc:
            detail, status, ok = f"counterexample {exc}", "FAIL", False
        out(f"{status}\t{name}\t{detail}")
    return ok
