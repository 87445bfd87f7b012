"""Exact equational probabilities and minimal-spectrum censuses of small algebras."""

from .algebra import (Algebra, Signature, and2, are_isomorphic, arg_left_isocyclic,
                      arg_right_isocyclic, build_named, canonical_form, classify_structure,
                      constant, cycle_type, dihedral4, direct_product, power, projection,
                      sheffer, structure_profile, zab, zmod)
from .parse import ParseError, parse_algebra, parse_equation, render
from .spectrum import (Bounds, Minimal, NotMinimal, check_dichotomy, count_associative_triples,
                       is_d_minimal, probability, solution_set_relation, spectrum)
from .term import Equation, enumerate_equations, mirror, specialize

__version__ = "0.1.0"
