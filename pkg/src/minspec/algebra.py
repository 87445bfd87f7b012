"""Finite algebras with a single binary or unary operation.

Tables are stored row-major with 0-based element indices. For a binary
algebra ``table[x][y]`` is ``x*y``, so a row is indexed by the left operand.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

# n! relabelings and n^k assignment grids stay desk-scale below this order.
MAX_ORDER = 8
# Products may be built larger than MAX_ORDER; only downstream searches cap.
MAX_CONSTRUCT_ORDER = 64


class Signature(enum.Enum):
    BINARY = "binary"
    UNARY = "unary"


@dataclass(frozen=True)
class Algebra:
    """An operation table on ``{0, ..., order-1}``.

    ``table`` is a flat tuple: ``order**2`` entries for a binary operation
    (row-major, row = left operand) and ``order`` entries for a unary one.
    """

    signature: Signature
    order: int
    table: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.order
        if not 1 <= n <= MAX_CONSTRUCT_ORDER:
            raise ValueError(f"order {n} outside 1..{MAX_CONSTRUCT_ORDER}")
        expected = n * n if self.signature is Signature.BINARY else n
        if len(self.table) != expected:
            raise ValueError(f"table has {len(self.table)} entries, expected {expected}")
        for pos, e in enumerate(self.table):
            if not 0 <= e < n:
                raise ValueError(f"entry {e} at position {pos} out of range for order {n}")

    @classmethod
    def groupoid(cls, rows: Sequence[Sequence[int]], name: str = "") -> "Algebra":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("groupoid table must be square")
        return cls(Signature.BINARY, n, tuple(int(e) for r in rows for e in r), name)

    @classmethod
    def unary(cls, f: Sequence[int], name: str = "") -> "Algebra":
        return cls(Signature.UNARY, len(f), tuple(int(e) for e in f), name)

    @property
    def is_binary(self) -> bool:
        return self.signature is Signature.BINARY

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64)
        a.setflags(write=False)
        return a.reshape(self.order, self.order) if self.is_binary else a

    def __call__(self, x: int, y: Optional[int] = None) -> int:
        if self.is_binary:
            return self.table[x * self.order + y]
        return self.table[x]

    def rows(self) -> list[list[int]]:
        n = self.order
        if not self.is_binary:
            return [list(self.table)]
        return [list(self.table[i * n:(i + 1) * n]) for i in range(n)]

    def transpose(self) -> "Algebra":
        """The opposite groupoid ``x o y = y * x``."""
        if not self.is_binary:
            raise ValueError("transpose needs a binary operation")
        return Algebra(Signature.BINARY, self.order, tuple(self.array.T.ravel().tolist()),
                       f"{self.name}^op" if self.name else "")

    def relabel(self, perm: Sequence[int]) -> "Algebra":
        """Image of the algebra under the bijection ``x -> perm[x]``."""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        if self.is_binary:
            t = p[self.array[np.ix_(inv, inv)]]
        else:
            t = p[self.array[inv]]
        return Algebra(self.signature, self.order, tuple(t.ravel().tolist()))

    def __str__(self):
        head = "groupoid" if self.is_binary else "unary"
        body = "\n".join(" ".join(map(str, r)) for r in self.rows())
        return f"{head} {self.order}\n{body}"


# ---------------------------------------------------------------------------
# Named constructors

def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_CONSTRUCT_ORDER:
        raise ValueError(f"order must be an integer in 1..{MAX_CONSTRUCT_ORDER}, got {n!r}")


def constant(n: int) -> Algebra:
    _check_order(n)
    return Algebra(Signature.BINARY, n, (0,) * (n * n), f"C{n}")


def isocyclic_permutation(n: int, a: int) -> tuple[int, ...]:
    """Permutation fixing 0 with cycles of length ``a`` on consecutive blocks of 1..n-1."""
    _check_order(n)
    if a < 1 or (n - 1) % a != 0 or (n == 1 and a != 1):
        raise ValueError(f"cycle length {a} does not divide {n - 1}")
    f = [0] * n
    for start in range(1, n, a):
        for i in range(a):
            f[start + i] = start + (i + 1) % a
    return tuple(f)


def arg_left_isocyclic(n: int, a: int) -> Algebra:
    """``x*y = f(x)`` with ``f`` isocyclic of cycle type (1, a, ..., a)."""
    f = isocyclic_permutation(n, a)
    return Algebra(Signature.BINARY, n, tuple(f[x] for x in range(n) for _ in range(n)),
                   f"ILeft{n},{a}")


def arg_right_isocyclic(n: int, a: int) -> Algebra:
    """``x*y = f(y)`` with ``f`` isocyclic of cycle type (1, a, ..., a)."""
    f = isocyclic_permutation(n, a)
    return Algebra(Signature.BINARY, n, tuple(f[y] for _ in range(n) for y in range(n)),
                   f"IRight{n},{a}")


def zab(n: int, a: int, b: int) -> Algebra:
    """The groupoid ``x*y = a*x + b*y (mod n)`` derived from Z_n."""
    _check_order(n)
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"coefficients must lie in 0..{n - 1}, got a={a}, b={b}")
    return Algebra(Signature.BINARY, n,
                   tuple((a * x + b * y) % n for x in range(n) for y in range(n)),
                   f"Z{n}^{a},{b}")


def zmod(n: int) -> Algebra:
    return Algebra(Signature.BINARY, n, zab(n, 1 % n, 1 % n).table, f"Z{n}")


def dihedral4() -> Algebra:
    """Dihedral group of order 8.

    Element ``i < 4`` is ``r^i`` and element ``4 + i`` is ``r^i s``, with
    ``s r = r^-1 s``.
    """
    def mul(u, v):
        a, e = u % 4, u // 4
        b, f = v % 4, v // 4
        return (a + (b if e == 0 else -b)) % 4 + 4 * ((e + f) % 2)

    return Algebra(Signature.BINARY, 8, tuple(mul(u, v) for u in range(8) for v in range(8)), "D4")


def sheffer() -> Algebra:
    """Two-element algebra of the Sheffer stroke (NAND)."""
    return Algebra.groupoid([[1, 1], [1, 0]], "Sheffer")


def and2() -> Algebra:
    """Two-element meet semilattice."""
    return Algebra.groupoid([[0, 0], [0, 1]], "And2")


def projection(n: int) -> Algebra:
    """Left projection ``x*y = x``."""
    _check_order(n)
    return Algebra(Signature.BINARY, n, tuple(x for x in range(n) for _ in range(n)), f"P{n}")


_CONSTRUCTORS = {
    "const": constant,
    "argleftiso": arg_left_isocyclic,
    "argrightiso": arg_right_isocyclic,
    "zmod": zmod,
    "zab": zab,
    "d4": dihedral4,
    "sheffer": sheffer,
    "and2": and2,
    "proj": projection,
    "unary": lambda f: Algebra.unary(f),
    "binary": lambda rows: Algebra.groupoid(rows),
}


def build_named(kind: str, *args) -> Algebra:
    """Build an algebra from a constructor name and its arguments.

    >>> build_named("Zab", 3, 1, 1).table
    (0, 1, 2, 1, 2, 0, 2, 0, 1)
    """
    try:
        ctor = _CONSTRUCTORS[kind.lower().replace("_", "")]
    except KeyError:
        raise ValueError(f"unknown constructor {kind!r}") from None
    return ctor(*args)


# ---------------------------------------------------------------------------
# Products

def direct_product(A: Algebra, B: Algebra) -> Algebra:
    """Componentwise product; the pair ``(i, j)`` is encoded as ``i*|B| + j``."""
    if A.signature is not B.signature:
        raise ValueError("direct product needs algebras of the same signature")
    n, m = A.order, B.order
    if n * m > MAX_CONSTRUCT_ORDER:
        raise ValueError(f"product order {n * m} exceeds {MAX_CONSTRUCT_ORDER}")
    if A.is_binary:
        t = (A.array[:, None, :, None] * m + B.array[None, :, None, :]).reshape(n * m, n * m)
    else:
        t = (A.array[:, None] * m + B.array[None, :]).ravel()
    name = f"{A.name}x{B.name}" if A.name and B.name else ""
    return Algebra(A.signature, n * m, tuple(t.ravel().tolist()), name)


def power(A: Algebra, m: int) -> Algebra:
    if m < 1:
        raise ValueError("power exponent must be >= 1")
    out = A
    for _ in range(m - 1):
        out = direct_product(out, A)
    return out


# ---------------------------------------------------------------------------
# Permutations

@dataclass(frozen=True)
class CycleType:
    lengths: tuple[int, ...]

    @property
    def isocyclic(self) -> bool:
        return self.block_length is not None

    @property
    def block_length(self) -> Optional[int]:
        """Common length ``a`` of the non-fixed cycles, or None if not isocyclic."""
        ls = list(self.lengths)
        if 1 not in ls:
            return None
        ls.remove(1)
        if not ls:
            return 1
        return ls[0] if all(x == ls[0] for x in ls) else None


def cycle_type(f: Sequence[int]) -> CycleType:
    n = len(f)
    if sorted(f) != list(range(n)):
        raise ValueError("not a bijection")
    seen = [False] * n
    lengths = []
    for s in range(n):
        if seen[s]:
            continue
        length, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = f[x]
            length += 1
        lengths.append(length)
    return CycleType(tuple(sorted(lengths, reverse=True)))


# ---------------------------------------------------------------------------
# Structure

@dataclass(frozen=True)
class StructureProfile:
    commutative: bool
    anticommutative: bool
    latin: bool
    associative: bool
    neutral_element: Optional[int]
    idempotents: frozenset
    diagonal_constant: bool
    left_alternative: bool
    right_alternative: bool
    flexible: bool
    left_moufang: bool

    @property
    def loop(self) -> bool:
        return self.latin and self.neutral_element is not None

    @property
    def alternative(self) -> bool:
        return self.left_alternative and self.right_alternative

    @property
    def semialternative(self) -> bool:
        return self.left_alternative or self.right_alternative

    @property
    def ditercitive(self) -> bool:
        return sum((self.left_alternative, self.right_alternative, self.flexible)) >= 2

    def as_dict(self) -> dict:
        return {
            "commutative": self.commutative,
            "anticommutative": self.anticommutative,
            "latin": self.latin,
            "associative": self.associative,
            "neutral_element": self.neutral_element,
            "idempotents": sorted(self.idempotents),
            "diagonal_constant": self.diagonal_constant,
            "left_alternative": self.left_alternative,
            "right_alternative": self.right_alternative,
            "flexible": self.flexible,
            "left_moufang": self.left_moufang,
        }


def _require_binary(G: Algebra) -> np.ndarray:
    if not G.is_binary:
        raise ValueError("a binary operation is required")
    return G.array


def is_latin(G: Algebra) -> bool:
    t = _require_binary(G)
    n = G.order
    full = np.arange(n)
    return bool((np.sort(t, axis=1) == full).all() and (np.sort(t, axis=0) == full[:, None]).all())


def structure_profile(G: Algebra) -> StructureProfile:
    t = _require_binary(G)
    n = G.order
    x, y, z = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    xy = t[x, y]
    diag = np.diagonal(t)
    xx = diag[:, None]
    off = ~np.eye(n, dtype=bool)
    neutral = None
    for e in range(n):
        if (t[e] == np.arange(n)).all() and (t[:, e] == np.arange(n)).all():
            neutral = e
            break
    return StructureProfile(
        commutative=bool((t == t.T).all()),
        anticommutative=bool((t != t.T)[off].all()),
        latin=is_latin(G),
        associative=bool((t[xy, z] == t[x, t[y, z]]).all()),
        neutral_element=neutral,
        idempotents=frozenset(int(i) for i in np.flatnonzero(diag == np.arange(n))),
        diagonal_constant=bool((diag == diag[0]).all()),
        # x(xy) = (xx)y
        left_alternative=bool((t[np.arange(n)[:, None], t] == t[xx, np.arange(n)[None, :]]).all()),
        # (yx)x = y(xx), indexed [y, x]
        right_alternative=bool((t[t, np.arange(n)[None, :]] == t[np.arange(n)[:, None], diag[None, :]]).all()),
        # x(yx) = (xy)x, indexed [x, y]
        flexible=bool((t[np.arange(n)[:, None], t.T] == t[t, np.arange(n)[:, None]]).all()),
        # x(y(xz)) = ((xy)x)z
        left_moufang=bool((t[x, t[y, t[x, z]]] == t[t[xy, x], z]).all()),
    )


@dataclass(frozen=True)
class StructureClass:
    kind: str  # Constant | ArgLeftIsocyclic | ArgRightIsocyclic | Quasigroup | Other
    block_length: Optional[int] = None

    def __str__(self):
        return f"{self.kind}({self.block_length})" if self.block_length is not None else self.kind


def classify_structure(G: Algebra) -> StructureClass:
    t = _require_binary(G)
    if (t == t.flat[0]).all():
        return StructureClass("Constant")
    if (t == t[:, :1]).all():
        ct = _perm_cycle_type(t[:, 0])
        if ct is not None and ct.isocyclic:
            return StructureClass("ArgLeftIsocyclic", ct.block_length)
    if (t == t[:1, :]).all():
        ct = _perm_cycle_type(t[0, :])
        if ct is not None and ct.isocyclic:
            return StructureClass("ArgRightIsocyclic", ct.block_length)
    if is_latin(G):
        return StructureClass("Quasigroup")
    return StructureClass("Other")


def _perm_cycle_type(f) -> Optional[CycleType]:
    f = [int(v) for v in f]
    if len(set(f)) != len(f):
        return None
    return cycle_type(f)


# ---------------------------------------------------------------------------
# Isomorphism

@lru_cache(maxsize=None)
def _all_perms(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    inv = np.argsort(perms, axis=1)
    perms.setflags(write=False)
    inv.setflags(write=False)
    return perms, inv


def _check_iso_inputs(A: Algebra, B: Algebra) -> None:
    if A.signature is not B.signature or A.order != B.order:
        raise ValueError("isomorphism test needs equal order and signature")
    if A.order > MAX_ORDER:
        raise ValueError(f"order {A.order} exceeds the search cap {MAX_ORDER}")


def are_isomorphic(A: Algebra, B: Algebra, allow_anti: bool = False) -> Optional[tuple[int, ...]]:
    """Return ``h`` with ``h(x*y) = h(x) o h(y)`` if one exists, else None.

    With ``allow_anti`` an anti-isomorphism ``h(x*y) = h(y) o h(x)`` is also
    accepted.
    """
    _check_iso_inputs(A, B)
    perms, _ = _all_perms(A.order)
    targets = [B]
    if allow_anti and A.is_binary:
        targets.append(B.transpose())
    a = A.array
    for T in targets:
        b = T.array
        if A.is_binary:
            lhs = perms[:, a]                                   # h(x*y)
            rhs = b[perms[:, :, None], perms[:, None, :]]       # h(x) o h(y)
            ok = (lhs == rhs).all(axis=(1, 2))
        else:
            ok = (perms[:, a] == b[perms]).all(axis=1)
        hit = np.flatnonzero(ok)
        if hit.size:
            return tuple(int(v) for v in perms[hit[0]])
    return None


def _lexmin_rows(cands: np.ndarray) -> np.ndarray:
    keep = np.arange(len(cands))
    for col in range(cands.shape[1]):
        vals = cands[keep, col]
        keep = keep[vals == vals.min()]
        if len(keep) == 1:
            break
    return cands[keep[0]]


def relabelings(G: Algebra) -> np.ndarray:
    """All ``n!`` relabeled tables of ``G`` as flat rows."""
    if G.order > MAX_ORDER:
        raise ValueError(f"order {G.order} exceeds the search cap {MAX_ORDER}")
    perms, inv = _all_perms(G.order)
    a = G.array
    if G.is_binary:
        t = a[inv[:, :, None], inv[:, None, :]]
        out = np.take_along_axis(perms, t.reshape(len(perms), -1), axis=1)
    else:
        out = np.take_along_axis(perms, a[inv], axis=1)
    return out


def canonical_form(G: Algebra, allow_anti: bool = False) -> Algebra:
    """Lexicographically least row-major table over all relabelings."""
    cands = relabelings(G)
    if allow_anti and G.is_binary:
        cands = np.concatenate([cands, relabelings(G.transpose())])
    best = _lexmin_rows(cands)
    return Algebra(G.signature, G.order, tuple(int(v) for v in best))


def count_tables(n: int, signature: Signature = Signature.BINARY) -> int:
    return n ** (n * n) if signature is Signature.BINARY else n ** n


__all__ = [
    "MAX_ORDER", "Signature", "Algebra", "CycleType", "StructureProfile", "StructureClass",
    "constant", "arg_left_isocyclic", "arg_right_isocyclic", "isocyclic_permutation", "zab",
    "zmod", "dihedral4", "sheffer", "and2", "projection", "build_named", "direct_product",
    "power", "cycle_type", "structure_profile", "classify_structure", "is_latin",
    "are_isomorphic", "canonical_form", "relabelings", "count_tables",
]
