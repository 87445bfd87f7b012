from fractions import Fraction as F

import pytest

from minspec import algebra as alg
from minspec.families import (dyadic_membership, gf4_affine, gf4_mul, is_prime, linear_probability,
                              semilattice_membership, semilattice_value, zpr_spectrum)
from minspec.parse import parse_equation
from minspec.spectrum import Bounds, is_d_minimal, probability, spectrum


def test_zpr_examples():
    assert zpr_spectrum(2, 2) == {F(1, 4), F(1, 2), F(1)}
    assert zpr_spectrum(3, 1) == {F(1, 3), F(1)}
    assert zpr_spectrum(2, 3) == {F(1, 8), F(1, 4), F(1, 2), F(1)}
    with pytest.raises(ValueError):
        zpr_spectrum(4, 1)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_engine_within_closed_form(p, r):
    got = set(spectrum(alg.zmod(p ** r)).values)
    assert got <= zpr_spectrum(p, r)
    if p ** r <= 5:
        assert got == zpr_spectrum(p, r)


def test_linear_probability():
    assert linear_probability(2, 4) == F(1, 2)
    assert linear_probability(3, 9) == F(1, 3)
    assert linear_probability(3, 7) == F(1, 7)
    for n in range(2, 13):
        for a in range(n):
            count = sum(a * x % n == 0 for x in range(n))
            assert linear_probability(a, n) == F(count, n)


def test_semilattice_membership():
    # (0, 1, 1) is lexicographically before (1, 1, 1); both give 3/4
    assert semilattice_membership(F(3, 4)) == (0, 1, 1)
    assert semilattice_value(0, 1, 1) == semilattice_value(1, 1, 1) == F(3, 4)
    assert semilattice_membership(F(1)) == (0, 0, 0)
    assert semilattice_membership(F(1, 3)) is None
    assert semilattice_value(1, 1, 1) == F(3, 4)


def test_dyadic_membership():
    assert dyadic_membership(F(5, 8))
    assert not dyadic_membership(F(1, 3))
    assert dyadic_membership(F(0))


def test_closed_form_conformance():
    assert all(semilattice_membership(v) for v in spectrum(alg.and2(), Bounds(4, 3)).values)
    sh = spectrum(alg.sheffer(), Bounds(3, 3)).values
    assert all(dyadic_membership(v) for v in sh) and F(0) in sh
    assert probability(parse_equation("x*x = x"), alg.sheffer()) == 0


def test_primes():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_gf4_field():
    els = range(4)
    for a in els:
        for b in els:
            for c in els:
                assert gf4_mul(a, gf4_mul(b, c)) == gf4_mul(gf4_mul(a, b), c)
                assert gf4_mul(a, b ^ c) == gf4_mul(a, b) ^ gf4_mul(a, c)
    assert all(any(gf4_mul(a, b) == 1 for b in els) for a in range(1, 4))


@pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 2), (2, 1)])
def test_gf4_affine_minimal(a, b):
    G = gf4_affine(a, b)
    assert alg.structure_profile(G).latin
    assert is_d_minimal(G, Bounds(4, 3))
