"""Forest polynomials next to Schubert and slide polynomials, and their image mod QSym+."""
from forestcalc.bases import expand_in_basis, forest_polynomial, schubert
from forestcalc.combinatorics import Permutation
from forestcalc.forest import IndexedForest, decreasing_labelings
from forestcalc.quotient import reduce_mod_qsym

t0 = IndexedForest.from_code([0, 2, 0, 1])
print("forest with code", t0.code(), "nodes", t0.nodes, "rho", t0.rho_values)
print("decreasing labelings:", decreasing_labelings(t0))

beta = forest_polynomial(t0)
print("\nbeta =", beta)
print("S_14253 equal:", beta == schubert(Permutation.parse("14253")))
print("slide expansion:", expand_in_basis(beta, "slide"))

# the three routes give the same polynomial
for route in ("definition", "slides", "recurrence"):
    print(f"    {route:<10} {forest_polynomial(t0, route) == beta}")

# support {2,3,4} fits in [n-1] only from n = 5 on
for n in (4, 5):
    r = reduce_mod_qsym(beta.truncate(n), n)
    print(f"\nmod QSym+_{n}: {r.poly}")

print("\nSchubert polynomials of S_4 in the forest basis:")
for w in ["1342", "1432", "2413", "3142", "4321"]:
    print(f"    {w}: {expand_in_basis(schubert(Permutation.parse(w)), 'forest')}")
