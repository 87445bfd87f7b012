import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minspec import algebra as alg
from minspec.algebra import (Algebra, Signature, are_isomorphic, canonical_form, classify_structure,
                             cycle_type, direct_product, power, structure_profile)

from conftest import all_binary_tables


def test_zab_constant_and_addition():
    assert alg.zab(3, 0, 0).table == (0,) * 9
    assert alg.zab(3, 1, 1).rows() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    with pytest.raises(ValueError):
        alg.zab(3, 3, 0)


def test_dihedral_is_nonabelian_group():
    D = alg.dihedral4()
    p = structure_profile(D)
    assert p.associative and p.latin and p.neutral_element == 0
    assert not p.commutative


def test_products():
    klein = direct_product(alg.zmod(2), alg.zmod(2))
    assert structure_profile(klein).latin
    assert klein == power(alg.zmod(2), 2)
    assert direct_product(alg.constant(2), alg.constant(2)).table == (0,) * 16
    assert are_isomorphic(direct_product(alg.zmod(2), alg.zmod(3)), alg.zmod(6)) is not None
    with pytest.raises(ValueError):
        direct_product(alg.zmod(2), Algebra.unary([0, 1]))


def test_product_pair_encoding():
    A, B = alg.zab(3, 2, 1), alg.and2()
    P = direct_product(A, B)
    for (a1, b1), (a2, b2) in itertools.product(itertools.product(range(3), range(2)), repeat=2):
        assert P(a1 * 2 + b1, a2 * 2 + b2) == A(a1, a2) * 2 + B(b1, b2)


def test_structure_profiles():
    p = structure_profile(alg.zmod(4))
    assert p.commutative and p.latin and p.associative and p.neutral_element == 0
    p = structure_profile(alg.and2())
    assert p.commutative and not p.latin and p.associative
    assert p.neutral_element == 1 and p.idempotents == frozenset({0, 1})
    p = structure_profile(alg.zab(3, 2, 2))
    assert p.commutative and p.flexible and p.latin
    assert not (p.left_alternative or p.right_alternative or p.associative)
    G = alg.zab(3, 2, 2)
    assert G(G(0, 1), 1) == 0 and G(0, G(1, 1)) == 2


def test_classify_examples():
    assert classify_structure(alg.constant(3)).kind == "Constant"
    G = Algebra.groupoid([[f] * 3 for f in (0, 2, 1)])
    assert str(classify_structure(G)) == "ArgLeftIsocyclic(2)"
    assert str(classify_structure(G.transpose())) == "ArgRightIsocyclic(2)"
    assert classify_structure(alg.and2()).kind == "Other"
    assert classify_structure(alg.zmod(5)).kind == "Quasigroup"
    assert classify_structure(alg.constant(1)).kind == "Constant"


@pytest.mark.parametrize("n", range(2, 9))
def test_classify_every_isocyclic(n):
    for a in range(1, n):
        if (n - 1) % a == 0:
            assert classify_structure(alg.build_named("argleftiso", n, a)) == \
                alg.StructureClass("ArgLeftIsocyclic", a)
            assert classify_structure(alg.build_named("argrightiso", n, a)) == \
                alg.StructureClass("ArgRightIsocyclic", a)


def test_cycle_types():
    ct = cycle_type([0, 1, 2, 3])
    assert ct.lengths == (1, 1, 1, 1) and ct.isocyclic and ct.block_length == 1
    ct = cycle_type([0, 2, 3, 1, 5, 6, 4])
    assert ct.lengths == (3, 3, 1) and ct.isocyclic and ct.block_length == 3
    ct = cycle_type([1, 0, 3, 4, 2])
    assert ct.lengths == (3, 2) and not ct.isocyclic
    with pytest.raises(ValueError):
        cycle_type([0, 0, 1])


def test_isomorphism_examples():
    assert are_isomorphic(alg.zmod(3), alg.zmod(3)) == (0, 1, 2)
    assert are_isomorphic(alg.zab(3, 1, 2), alg.zab(3, 2, 1), allow_anti=True) is not None
    assert are_isomorphic(alg.constant(2), alg.zmod(2)) is None
    with pytest.raises(ValueError):
        are_isomorphic(alg.zmod(2), alg.zmod(3))


def test_witness_is_homomorphism():
    A = alg.zmod(4)
    B = A.relabel([2, 0, 3, 1])
    h = are_isomorphic(A, B)
    assert all(h[A(x, y)] == B(h[x], h[y]) for x in range(4) for y in range(4))


def test_canonical_forms():
    assert canonical_form(alg.constant(3)).table == alg.constant(3).table
    Z = alg.zmod(3)
    forms = {canonical_form(Z.relabel(p)).table for p in itertools.permutations(range(3))}
    assert len(forms) == 1


def test_order2_orbit_count_matches_brute_force():
    tables = list(all_binary_tables(2))
    assert len(tables) == 16
    # orbit oracle: swap the two labels by hand
    swap = lambda G: tuple(1 - G.table[(1 - x) * 2 + (1 - y)] for x in range(2) for y in range(2))
    orbits = {min(G.table, swap(G)) for G in tables}
    assert len(orbits) == 10
    assert len({canonical_form(G).table for G in tables}) == 10


@pytest.mark.parametrize("anti", [False, True])
def test_canonical_form_decides_isomorphism_order2(anti):
    tables = list(all_binary_tables(2))
    for A, B in itertools.product(tables, repeat=2):
        same = canonical_form(A, anti) == canonical_form(B, anti)
        assert same == (are_isomorphic(A, B, anti) is not None)


def test_canonical_form_decides_isomorphism_order3_sample():
    rng = random.Random(7)
    for _ in range(60):
        A = Algebra(Signature.BINARY, 3, tuple(rng.randrange(3) for _ in range(9)))
        B = A.relabel(rng.sample(range(3), 3)) if rng.random() < 0.5 else \
            Algebra(Signature.BINARY, 3, tuple(rng.randrange(3) for _ in range(9)))
        assert (canonical_form(A) == canonical_form(B)) == (are_isomorphic(A, B) is not None)


tables3 = st.lists(st.integers(0, 2), min_size=9, max_size=9).map(
    lambda c: Algebra(Signature.BINARY, 3, tuple(c)))


@settings(max_examples=60, deadline=None)
@given(tables3, st.permutations(range(3)))
def test_isomorphism_is_symmetric_and_canonical_idempotent(G, perm):
    H = G.relabel(perm)
    w = are_isomorphic(G, H)
    assert w is not None
    back = are_isomorphic(H, G)
    assert back is not None
    C = canonical_form(G)
    assert canonical_form(C) == C
    assert canonical_form(H) == C


@settings(max_examples=60, deadline=None)
@given(tables3)
def test_latin_iff_cancellative_iff_quasigroup(G):
    t = G.rows()
    left_cancel = all(len(set(r)) == 3 for r in t)
    right_cancel = all(len({t[x][y] for x in range(3)}) == 3 for y in range(3))
    p = structure_profile(G)
    assert p.latin == (left_cancel and right_cancel)
    assert p.latin == (classify_structure(G).kind == "Quasigroup")


def test_profile_matches_loops_for_flags():
    rng = random.Random(3)
    for _ in range(40):
        G = Algebra(Signature.BINARY, 3, tuple(rng.randrange(3) for _ in range(9)))
        p = structure_profile(G)
        r = range(3)
        assert p.associative == all(G(G(x, y), z) == G(x, G(y, z)) for x in r for y in r for z in r)
        assert p.flexible == all(G(G(x, y), x) == G(x, G(y, x)) for x in r for y in r)
        assert p.left_alternative == all(G(x, G(x, y)) == G(G(x, x), y) for x in r for y in r)
        assert p.idempotents == frozenset(x for x in r if G(x, x) == x)


def test_named_constructors_and_errors():
    assert alg.sheffer().rows() == [[1, 1], [1, 0]]
    assert alg.projection(3)(2, 0) == 2
    assert alg.build_named("unary", [1, 0]).signature is Signature.UNARY
    with pytest.raises(ValueError):
        alg.build_named("nosuch")
    with pytest.raises(ValueError):
        alg.arg_left_isocyclic(5, 3)
    with pytest.raises(ValueError):
        Algebra.groupoid([[0, 2], [0, 0]])
    assert isinstance(alg.zmod(4).array, np.ndarray)


def test_zab_a0_matches_isocyclic_only_for_primitive_a():
    # x*y = ax is ArgLeftIsocyclic(ord(a)), which equals n-1 only for primitive a
    assert are_isomorphic(alg.zab(5, 2, 0), alg.arg_left_isocyclic(5, 4)) is not None
    assert are_isomorphic(alg.zab(5, 4, 0), alg.arg_left_isocyclic(5, 4)) is None
    assert are_isomorphic(alg.zab(5, 4, 0), alg.arg_left_isocyclic(5, 2)) is not None
    assert are_isomorphic(alg.zab(7, 2, 0), alg.arg_left_isocyclic(7, 3)) is not None
