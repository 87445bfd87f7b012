"""Independent pure-Python oracles shared by the test modules."""

import itertools
from fractions import Fraction

import pytest

from minspec.algebra import Algebra
from minspec.term import Ap, Equation, Op, Var


def naive_eval(t, xs, G):
    if isinstance(t, Var):
        return xs[t.index]
    if isinstance(t, Ap):
        return G.table[naive_eval(t.child, xs, G)]
    return G.table[naive_eval(t.left, xs, G) * G.order + naive_eval(t.right, xs, G)]


def _max_index(t):
    if isinstance(t, Var):
        return t.index
    if isinstance(t, Ap):
        return _max_index(t.child)
    return max(_max_index(t.left), _max_index(t.right))


def naive_probability(e, G):
    """Count solutions by looping over every assignment."""
    k = max(_max_index(e.lhs), _max_index(e.rhs)) + 1
    hits = sum(naive_eval(e.lhs, xs, G) == naive_eval(e.rhs, xs, G)
               for xs in itertools.product(range(G.order), repeat=k))
    return Fraction(hits, G.order ** k)


def all_binary_tables(n):
    for cells in itertools.product(range(n), repeat=n * n):
        yield Algebra.groupoid([cells[i * n:(i + 1) * n] for i in range(n)])


@pytest.fixture
def oracle():
    return naive_probability
