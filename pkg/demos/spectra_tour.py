"""A short tour of equational probabilities on small algebras."""
from fractions import Fraction

import numpy as np

from minspec import algebra as alg
from minspec.parse import parse_algebra, parse_equation, render
from minspec.spectrum import Bounds, is_d_minimal, probability, spectrum

# the commuting probability of the dihedral group of order 8
D4 = alg.dihedral4()
print("Pr(xy = yx | D4) =", probability(parse_equation("x*y = y*x"), D4))

# prime cyclic groups only ever show 1/p and 1
for n in (2, 3, 5, 7):
    print(f"Z{n}:", spectrum(alg.zmod(n)))

# Z4 is not minimal; the engine gives the first witness it meets
Z4 = alg.zmod(4)
print("Z4:", spectrum(Z4))
print("Z4 verdict:", is_d_minimal(Z4))

# products multiply probabilities, one equation at a time
e = parse_equation("x*x = y*y")
Z2, Z3 = alg.zmod(2), alg.zmod(3)
print(probability(e, alg.direct_product(Z2, Z3)), "=", probability(e, Z2), "*", probability(e, Z3))

# the meet semilattice and the Sheffer stroke have richer spectra
print("and2   :", spectrum(alg.and2(), Bounds(4, 3)))
print("sheffer:", spectrum(alg.sheffer()))

# tables are plain numpy arrays underneath
G = parse_algebra("Zab 3 2 2")
print(render(G))
print("diagonal:", np.diag(G.array))
assoc = parse_equation("(x*y)*z = x*(y*z)")
print("Pr(associativity | Zab 3 2 2) =", probability(assoc, G), "; minimal?", bool(is_d_minimal(G)))
