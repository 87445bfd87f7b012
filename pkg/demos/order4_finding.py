"""Order 4: the Latin square census turns up more than the Klein group.

All 576 Latin squares of order 4 are checked. Besides (Z2)^2 four further
quasigroups pass. All five are affine maps x*y = ax + by over the field
GF(4), and every term over such an operation is a linear form a1 x1 + ... + ak xk.
An equation between two linear forms either holds identically or cuts out a
hyperplane, so its probability is 1 or 1/4 at every size.
"""
from minspec import algebra as alg
from minspec.families import gf4_affine
from minspec.search import scan_latin_squares
from minspec.spectrum import Bounds, is_d_minimal, spectrum

report = scan_latin_squares(4)
print(report.to_human())

klein = alg.power(alg.zmod(2), 2)
for s in report.survivors:
    G = s.algebra
    coeffs = [(a, b) for a in range(1, 4) for b in range(1, 4)
              if alg.are_isomorphic(G, gf4_affine(a, b)) is not None]
    tag = "Klein" if alg.are_isomorphic(G, klein) is not None else "extra"
    print(tag, G.rows(), "GF(4) coefficients", coeffs)
    print("   spectrum at size<=4:", spectrum(G, Bounds(4, 3)), "|", is_d_minimal(G, Bounds(4, 4)))
