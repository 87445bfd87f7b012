import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from minspec import algebra as alg
from minspec.algebra import Signature
from minspec.parse import parse_equation, render
from minspec.spectrum import probability
from minspec.term import (Ap, Equation, Op, Var, canonical, encode, enumerate_equations, eval_term,
                          is_canonical, mirror, rename, size, specialize, variables)

from conftest import naive_probability

P = parse_equation


def raw_terms(s, k, unary=False):
    """Every term with exactly s operation nodes over variables 0..k-1."""
    if s == 0:
        return [Var(i) for i in range(k)]
    if unary:
        return [Ap(t) for t in raw_terms(s - 1, k, True)]
    out = []
    for a in range(s):
        for l in raw_terms(a, k):
            for r in raw_terms(s - 1 - a, k):
                out.append(Op(l, r))
    return out


def brute_force_classes(max_size, k, unary=False):
    """Raw equations up to renaming and side swap, identical sides dropped."""
    terms = [t for s in range(max_size + 1) for t in raw_terms(s, k, unary)]
    classes = set()
    for l, r in itertools.product(terms, repeat=2):
        if l == r or size(l) + size(r) > max_size:
            continue
        orbit = []
        for perm in itertools.permutations(range(k)):
            a, b = rename(l, perm), rename(r, perm)
            orbit += [(encode(a), encode(b)), (encode(b), encode(a))]
        classes.add(min(orbit))
    return classes


@pytest.mark.parametrize("max_size,k", [(0, 2), (1, 2), (2, 2), (2, 3), (3, 3)])
def test_enumeration_matches_brute_force(max_size, k):
    eqs = enumerate_equations(Signature.BINARY, max_size, k)
    assert len(eqs) == len(set(eqs))
    assert len(eqs) == len(brute_force_classes(max_size, k))
    assert all(is_canonical(e) and e.lhs != e.rhs for e in eqs)
    assert all(e.size <= max_size and e.num_vars <= k for e in eqs)


def test_enumeration_counts_frozen():
    # derived by the brute-force class count above
    counts = {(1, 2): 5, (2, 3): 42, (3, 3): 329}
    for (d, k), c in counts.items():
        assert len(enumerate_equations(Signature.BINARY, d, k)) == c


def test_enumeration_examples():
    assert [render(e) for e in enumerate_equations(Signature.BINARY, 0, 2)] == ["x = y"]
    got = {render(e) for e in enumerate_equations(Signature.BINARY, 1, 2)}
    assert {"x = x*x", "x = x*y", "x = y*x", "x = y*y"} <= got
    unary = {render(e) for e in enumerate_equations(Signature.UNARY, 2, 1)}
    assert unary == {"x = f(x)", "x = f(f(x))"}
    unary3 = {render(e) for e in enumerate_equations(Signature.UNARY, 3, 1)}
    assert "f(x) = f(f(x))" in unary3
    assert len(unary3) == len(brute_force_classes(3, 1, unary=True))


def test_enumeration_is_deterministic_and_checked():
    a = enumerate_equations(Signature.BINARY, 3, 3)
    enumerate_equations.cache_clear()
    assert a == enumerate_equations(Signature.BINARY, 3, 3)
    with pytest.raises(ValueError):
        enumerate_equations(Signature.BINARY, 2, 5)
    with pytest.raises(ValueError):
        enumerate_equations(Signature.BINARY, -1, 2)


def test_eval_examples():
    assert eval_term(Var(0), [2], alg.zmod(3)) == 2
    assert eval_term(Op(Var(0), Var(1)), [1, 2], alg.zmod(3)) == 0
    assert eval_term(Op(Op(Var(0), Var(0)), Var(1)), [1, 1], alg.zab(3, 2, 2)) == 1
    with pytest.raises(IndexError):
        eval_term(Var(2), [0, 1], alg.zmod(3))


def test_specialize_examples():
    assert specialize(P("x*y = z*y"), 0, 1) == P("x*x = z*x")
    assert specialize(P("x*y = y*x"), 0, 1) == canonical(Equation(Op(Var(0), Var(0)), Op(Var(0), Var(0))))
    assert specialize(P("(x*y)*z = x*(y*z)"), 1, 2) == P("(x*y)*y = x*(y*y)")
    with pytest.raises(ValueError):
        specialize(P("x*y = y*x"), 0, 0)
    with pytest.raises(IndexError):
        specialize(P("x*y = y*x"), 0, 2)


def test_mirror_examples():
    assert mirror(P("x*y = y*x")) == P("x*y = y*x")
    assert mirror(P("x*(y*z) = (x*y)*z")) == P("x*(y*z) = (x*y)*z")
    assert mirror(P("x*(x*y) = (x*x)*y")) == P("(y*x)*x = y*(x*x)")


equations3 = st.sampled_from(enumerate_equations(Signature.BINARY, 3, 3))


@settings(max_examples=100, deadline=None)
@given(equations3, st.permutations(range(3)))
def test_canonical_renaming_and_idempotence(e, perm):
    assert canonical(canonical(e)) == canonical(e) == e
    renamed = Equation(rename(e.lhs, perm), rename(e.rhs, perm))
    assert canonical(renamed) == e
    assert canonical(Equation(renamed.rhs, renamed.lhs)) == e


@settings(max_examples=100, deadline=None)
@given(equations3)
def test_mirror_involution(e):
    assert mirror(mirror(e)) == e


@settings(max_examples=60, deadline=None)
@given(equations3, st.integers(2, 4), st.randoms(use_true_random=False))
def test_mirror_duality(e, n, rnd):
    G = alg.Algebra(Signature.BINARY, n, tuple(rnd.randrange(n) for _ in range(n * n)))
    assert probability(e, G) == probability(mirror(e), G.transpose())
    assert probability(e, G) == naive_probability(e, G)


def test_specialize_drops_one_variable():
    for e in enumerate_equations(Signature.BINARY, 3, 3):
        for i, j in itertools.permutations(range(e.num_vars), 2):
            s = specialize(e, i, j)
            assert is_canonical(s)
            assert s.num_vars == e.num_vars - 1


def test_variables_and_size():
    t = Op(Op(Var(0), Var(1)), Var(0))
    assert size(t) == 2 and variables(t) == [0, 1, 0]
    assert size(Ap(Ap(Var(0)))) == 2
