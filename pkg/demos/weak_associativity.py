"""Associative triples in loops and alternative quasigroups, and what minimality forces."""
from minspec.search import scan_latin_squares, triple_bounds, weak_assoc_suite
from minspec.spectrum import count_associative_triples

for n in range(2, 6):
    for v in triple_bounds(n):
        print(f"n={n} {v.check:<26} {v.subject:<40} {v.detail}")

# which minimal quasigroups of order 5 are forced to be groups
report = scan_latin_squares(5)
for v in weak_assoc_suite(report):
    if v.check != "loop triple bound" and v.check != "alternative triple bound":
        print(f"{v.check}: {v.subject} [{v.detail}] -> {'ok' if v.passed else 'VIOLATED'}")
print("associative triples per order-5 survivor:",
      sorted(count_associative_triples(G) for G in report.tables))
