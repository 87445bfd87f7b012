"""Closed-form spectra of a few classical algebras, used as independent oracles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

# Exponent cap for the membership searches over infinite families.
MAX_EXPONENT = 12


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ClosedFormSpectrum:
    description: str
    contains: Callable[[Fraction], bool]
    listing: Optional[frozenset] = None


def zpr_spectrum(p: int, r: int) -> frozenset[Fraction]:
    """Spectrum of the cyclic group of order ``p**r``: the powers ``p^(s-r)``, ``0 <= s <= r``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1 or p ** r > 64:
        raise ValueError("need r >= 1 and p**r <= 64")
    return frozenset(Fraction(p ** s, p ** r) for s in range(r + 1))


def cyclic_prime_power(p: int, r: int) -> ClosedFormSpectrum:
    values = zpr_spectrum(p, r)
    return ClosedFormSpectrum(f"Z_{p}^{r}", values.__contains__, values)


def linear_probability(a: int, n: int) -> Fraction:
    """Probability that ``a*x = 0`` in Z_n, which is ``gcd(a, n)/n``.

    For ``0 < a < n`` sharing a factor with ``n`` the value lies strictly
    between ``1/n`` and ``1``; this is checked on the way out.
    """
    if n < 2 or not 0 <= a < n:
        raise ValueError("need n >= 2 and 0 <= a < n")
    q = Fraction(gcd(a, n), n)
    if 0 < a and gcd(a, n) != 1:
        assert Fraction(1, n) < q < 1
    return q


def semilattice_value(p: int, q: int, r: int) -> Fraction:
    return 1 - Fraction(2 ** p + 2 ** q - 2, 2 ** (p + q + r))


def semilattice_membership(value: Fraction) -> Optional[tuple[int, int, int]]:
    """Lexicographically smallest ``(p, q, r)`` giving ``value``, exponents up to MAX_EXPONENT."""
    value = Fraction(value)
    for p in range(MAX_EXPONENT + 1):
        for q in range(MAX_EXPONENT + 1):
            for r in range(MAX_EXPONENT + 1):
                if semilattice_value(p, q, r) == value:
                    return (p, q, r)
    return None


def dyadic_membership(value: Fraction) -> bool:
    """True iff ``value`` is ``s / 2^k`` with ``0 <= s <= 2^k``."""
    value = Fraction(value)
    d = value.denominator
    return 0 <= value <= 1 and d & (d - 1) == 0


def gf4_mul(a: int, b: int) -> int:
    """Multiplication in GF(4) with elements 0, 1, w, w^2 encoded as 0, 1, 2, 3."""
    if a == 0 or b == 0:
        return 0
    log = {1: 0, 2: 1, 3: 2}
    return (1, 2, 3)[(log[a] + log[b]) % 3]


def gf4_affine(alpha: int, beta: int):
    """The groupoid ``x*y = alpha*x + beta*y`` over GF(4) (addition is XOR).

    Every term is a linear form over the field, so each equation has
    probability 1 or 1/4; for nonzero coefficients this is a quasigroup.
    """
    from .algebra import Algebra
    if not (0 <= alpha < 4 and 0 <= beta < 4):
        raise ValueError("GF(4) coefficients must lie in 0..3")
    return Algebra.groupoid([[gf4_mul(alpha, x) ^ gf4_mul(beta, y) for y in range(4)]
                             for x in range(4)], f"GF4^{alpha},{beta}")


__all__ = [
    "gf4_mul", "gf4_affine",
    "MAX_EXPONENT", "ClosedFormSpectrum", "is_prime", "zpr_spectrum", "cyclic_prime_power",
    "linear_probability", "semilattice_value", "semilattice_membership", "dyadic_membership",
]
