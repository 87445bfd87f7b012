import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minspec import algebra as alg
from minspec.algebra import Algebra, Signature
from minspec.parse import parse_equation as P
from minspec.spectrum import (Bounds, DichotomyBranch, Minimal, NotMinimal, Relation,
                              check_dichotomy, count_associative_triples,
                              count_associative_triples_many, first_witnesses, is_d_minimal,
                              probabilities, probability, solution_count, solution_set_relation,
                              spectrum, unary_bounds)
from minspec.term import enumerate_equations

from conftest import naive_probability

EQS3 = enumerate_equations(Signature.BINARY, 3, 3)


def random_table(rng, n):
    return Algebra(Signature.BINARY, n, tuple(rng.randrange(n) for _ in range(n * n)))


def test_probability_examples():
    assert probability(P("x*y = y*x"), alg.dihedral4()) == F(5, 8)
    assert probability(P("x = y"), alg.zmod(3)) == F(1, 3)
    assert probability(P("x*x = y*y"), alg.zmod(4)) == F(1, 2)
    assert probability(P("(x*y)*z = x*(y*z)"), alg.zab(3, 2, 2)) == F(1, 3)
    assert solution_count(P("x*y = y*x"), alg.dihedral4()) == 40


def test_dihedral_survives_relabeling_and_transpose():
    D = alg.dihedral4()
    e = P("x*y = y*x")
    assert probability(e, D.transpose()) == F(5, 8)
    assert probability(e, D.relabel([3, 1, 0, 2, 7, 6, 5, 4])) == F(5, 8)
    # conjugacy-class oracle: Pr(commute) = k(G)/|G| with 5 classes
    assert probability(e, D) == F(5, 8)


def test_spectrum_examples():
    assert spectrum(alg.zmod(5)).values == [F(1, 5), F(1)]
    assert spectrum(alg.zmod(4)).values == [F(1, 4), F(1, 2), F(1)]
    assert spectrum(alg.projection(3)).values == [F(1, 3), F(1)]
    s = spectrum(alg.zmod(4))
    w = s.witness(F(1, 2))
    assert probability(w, alg.zmod(4)) == F(1, 2)
    assert F(1, 2) in s


def test_minimality_examples():
    v = is_d_minimal(alg.zmod(5))
    assert isinstance(v, Minimal) and v
    v = is_d_minimal(alg.zmod(4))
    assert isinstance(v, NotMinimal) and not v and v.probability == F(1, 2)
    v = is_d_minimal(alg.and2())
    assert v.probability == F(3, 4)
    v = is_d_minimal(alg.direct_product(alg.zmod(2), alg.zmod(3)))
    assert v.probability == F(1, 3)


def test_minimal_witness_is_enumeration_first():
    for G in (alg.zmod(4), alg.and2(), alg.sheffer(), alg.dihedral4()):
        v = is_d_minimal(G)
        n = G.order
        first = next(e for e in EQS3 if probability(e, G) not in (1, F(1, n)))
        assert v.witness == first


def test_unary_minimality():
    iso = Algebra.unary([0, 2, 1])
    assert is_d_minimal(iso, unary_bounds(3))
    # a fixed-point-free cycle fails at x = f(x)
    v = is_d_minimal(Algebra.unary([1, 2, 0]), unary_bounds(3))
    assert v.probability == 0
    assert spectrum(iso, unary_bounds(3)).values == [F(1, 3), F(1)]


def test_engine_matches_naive_oracle_random():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 4)
        G = random_table(rng, n)
        for e in rng.sample(EQS3, 15):
            assert probability(e, G) == naive_probability(e, G)


def test_batch_matches_single():
    rng = random.Random(5)
    Gs = [random_table(rng, 3) for _ in range(40)]
    tables = np.array([G.table for G in Gs], dtype=np.int64)
    for e in EQS3[::17]:
        got = probabilities(e, tables, 3)
        assert list(got) == [probability(e, G) for G in Gs]
    idx = first_witnesses(tables, 3)
    for G, i in zip(Gs, idx):
        v = is_d_minimal(G)
        assert (i == -1) == bool(v)
        if i >= 0:
            assert EQS3[i] == v.witness


def test_signature_mismatch():
    with pytest.raises(ValueError):
        probability(P("f(x) = x"), alg.zmod(2))
    with pytest.raises(ValueError):
        probability(P("x*y = y"), Algebra.unary([0, 1]))
    assert probability(P("x = y"), Algebra.unary([0, 1, 2])) == F(1, 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(EQS3), st.randoms(use_true_random=False))
def test_product_law(e, rnd):
    A = random_table(rnd, rnd.randint(2, 3))
    B = random_table(rnd, rnd.randint(2, 3))
    assert probability(e, alg.direct_product(A, B)) == probability(e, A) * probability(e, B)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(EQS3), st.randoms(use_true_random=False), st.sampled_from([2, 3]))
def test_power_law(e, rnd, m):
    A = random_table(rnd, 2)
    assert probability(e, alg.power(A, m)) == probability(e, A) ** m


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(2, 4))
def test_transpose_spectrum(rnd, n):
    G = random_table(rnd, n)
    assert spectrum(G).values == spectrum(G.transpose()).values


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(2, 3))
def test_isomorphic_tables_have_equal_spectra(rnd, n):
    G = random_table(rnd, n)
    H = G.relabel(rnd.sample(range(n), n))
    assert spectrum(G).values == spectrum(H).values


def test_dichotomy_examples():
    e = P("x*y = x*z")
    assert check_dichotomy(alg.zmod(3), e, 1, 2) is DichotomyBranch.QUASI_IDENTITY
    assert check_dichotomy(alg.constant(3), e, 1, 2) is DichotomyBranch.IDENTITY
    assert check_dichotomy(alg.and2(), e, 1, 2) is DichotomyBranch.NEITHER
    with pytest.raises(ValueError):
        check_dichotomy(alg.zmod(3), P("x*y = y"), 0, 1)


def test_associative_triples():
    assert count_associative_triples(alg.zmod(2)) == 8
    G = alg.zab(3, 2, 2)
    brute = sum(G(G(x, y), z) == G(x, G(y, z)) for x, y, z in itertools.product(range(3), repeat=3))
    assert count_associative_triples(G) == brute == 9
    tables = np.array([alg.zmod(3).table, G.table])
    assert list(count_associative_triples_many(tables, 3)) == [27, 9]


def test_solution_set_relations():
    medial = P("(x*y)*(z*w) = (x*z)*(y*w)")
    from minspec.term import specialize
    specs = [specialize(medial, i, j) for i, j in [(0, 1), (1, 2), (2, 3)]]
    for a, b in itertools.combinations(specs, 2):
        assert solution_set_relation(a, b, alg.zmod(3)) is Relation.EQUAL
    # in Z2, x = x+y holds iff y = 0, which is not the diagonal
    assert solution_set_relation(P("x = y"), P("x = x*y"), alg.zmod(2)) is Relation.INCOMPARABLE
    assert solution_set_relation(P("x = y"), P("x*y = x*x"), alg.zmod(2)) is Relation.EQUAL
    assert solution_set_relation(P("x*y = x*z"), P("y*x = z*x"), alg.and2()) is Relation.INCOMPARABLE
    assert solution_set_relation(P("x*y = y*x"), P("x = y"), alg.zmod(2)) is Relation.RIGHT_IN_LEFT


def test_probability_budget():
    with pytest.raises(ValueError):
        probability(P("(x*y)*(z*w) = x"), alg.zmod(64))
