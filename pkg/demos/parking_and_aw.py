"""Walk through the Omega-parking rule and the coefficients a_w for small n."""
from forestcalc import a_w
from forestcalc.applications import a_w_table, schubert_forest_expansion
from forestcalc.combinatorics import Permutation, format_word
from forestcalc.correspondence import format_trace, insertion_trace, is_parking


def show_trace(word):
    print(f"inserting {format_word(word)}:")
    for line in format_trace(insertion_trace(word)):
        print("   ", line)
    print("    parking" if is_parking(word) else "    not parking")


show_trace((4, 3, 4, 1))
show_trace((1, 3, 4, 3))

w = Permutation.parse("21543")
report = a_w(w)
print(f"\na_{w} = {report.value}, routes {report.routes}")
print("witnesses:", " ".join(format_word(x) for x in report.witnesses))

# each insertion class is one forest polynomial in the Schubert polynomial
print(f"\nclasses of Red({w}^-1):")
for P, words in schubert_forest_expansion(w).classes.items():
    marks = ["*" if is_parking(x) else " " for x in words]
    shown = " ".join(m + format_word(x) for m, x in zip(marks, words))
    print(f"    forest {P.forest.code()}: {shown}")

print("\nall of S'_4:")
for r in a_w_table(4):
    print("   ", r.tsv())
