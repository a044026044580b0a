"""Multivariate mixed Eulerian numbers, their LBS trees and bilabeled trees."""
from forestcalc.applications import (_lbs_trees, bilabeled_to_lbs, bilabeled_trees,
                                     mixed_eulerian_parking_count, multivariate_mixed_eulerian)

c = (0, 2, 0, 2)
m = multivariate_mixed_eulerian(c)
print(f"A_{c} = {m.poly}")
print("at ones:", m.value_at_ones(), " parking words:", mixed_eulerian_parking_count(c))
print("q-coefficients:", m.q_coefficients())

print("\nLBS trees:")
for P in _lbs_trees(c):
    print("   ", P)

print("\nbilabeled trees and their images:")
for t in bilabeled_trees(c):
    print(f"    {t}  ->  {bilabeled_to_lbs(t, c)}")

print("\nall contents for n = 4:")
for d in [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1), (1, 0, 2), (0, 3, 0),
          (0, 2, 1), (0, 1, 2), (0, 0, 3)]:
    print(f"    {d}: {multivariate_mixed_eulerian(d).value_at_ones()}")
