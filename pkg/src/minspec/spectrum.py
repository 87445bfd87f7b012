"""Exact equational probabilities and bounded spectra.

Every probability is a :class:`fractions.Fraction` built from integer
solution counts; nothing here touches floating point.

Terms are evaluated on the full assignment grid ``[0, n)^k`` at once, and the
batch routines evaluate the same grid across a stack of tables so that a
census can check thousands of candidates per numpy call.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .algebra import Algebra, Signature
from .term import (Ap, Equation, Op, Term, Var, enumerate_equations, specialize,
                   term_signature, variables)

ExactProb = Fraction

# Upper bound on n^k for a single probability computation.
ASSIGNMENT_BUDGET = 1 << 22
CHUNK_ROWS = 4096


@dataclass(frozen=True)
class Bounds:
    max_size: int = 3
    max_vars: int = 3

    def __str__(self):
        return f"size<={self.max_size}, vars<={self.max_vars}"


DEFAULT_BOUNDS = Bounds()


def unary_bounds(n: int) -> Bounds:
    """Unary scans need ``f^a(x) = x`` for every ``a <= n``; ``2n`` leaves room for ``f^r(x) = f^s(y)``."""
    return Bounds(max_size=2 * n, max_vars=2)


# ---------------------------------------------------------------------------
# Grid evaluation

def _grid(n: int, k: int) -> list[np.ndarray]:
    """Coordinate columns of ``[0, n)^k`` in lexicographic order, each shaped (1, n^k)."""
    if k == 0:
        return []
    axes = np.indices((n,) * k).reshape(k, -1).astype(np.int64)
    return [axes[i][None, :] for i in range(k)]


class _GridEvaluator:
    """Memoised term values over a stack of tables of one order.

    ``tables`` is (N, n*n) for binary or (N, n) for unary operations. Values
    of a term are an (N, n^k) array, or (1, n^k) when the term is a variable.
    """

    def __init__(self, tables: np.ndarray, n: int, k: int, signature: Signature):
        self.tables = np.ascontiguousarray(tables, dtype=np.int64)
        self.n = n
        self.k = k
        self.signature = signature
        self.vars = _grid(n, k)
        self.memo: dict[Term, np.ndarray] = {}

    def __len__(self):
        return len(self.tables)

    def values(self, t: Term) -> np.ndarray:
        if isinstance(t, Var):
            return self.vars[t.index]
        hit = self.memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Op):
            idx = self.values(t.left) * self.n + self.values(t.right)
        else:
            idx = self.values(t.child)
        if idx.shape[0] != len(self.tables):
            idx = np.broadcast_to(idx, (len(self.tables), idx.shape[1]))
        out = np.take_along_axis(self.tables, idx, axis=1)
        self.memo[t] = out
        return out

    def counts(self, e: Equation) -> np.ndarray:
        eq = self.values(e.lhs) == self.values(e.rhs)
        c = eq.sum(axis=1)
        return np.broadcast_to(c, (len(self.tables),)) if c.shape[0] != len(self.tables) else c

    def restrict(self, keep: np.ndarray) -> None:
        self.tables = self.tables[keep]
        self.memo = {t: v[keep] for t, v in self.memo.items()}


def _check_signature(e: Equation, signature: Signature) -> None:
    kinds = {term_signature(e.lhs), term_signature(e.rhs)} - {None}
    if len(kinds) > 1:
        raise ValueError("equation mixes binary and unary symbols")
    if kinds and kinds.pop() is not signature:
        raise ValueError(f"equation signature does not match a {signature.value} algebra")


def _flat(G: Algebra) -> np.ndarray:
    return np.asarray(G.table, dtype=np.int64)[None, :]


def _budget(n: int, k: int) -> None:
    if n ** k > ASSIGNMENT_BUDGET:
        raise ValueError(f"{n}^{k} assignments exceed the budget of {ASSIGNMENT_BUDGET}")


def solution_count(e: Equation, G: Algebra) -> int:
    _check_signature(e, G.signature)
    k = e.num_vars
    _budget(G.order, k)
    ev = _GridEvaluator(_flat(G), G.order, k, G.signature)
    return int(ev.counts(e)[0])


def probability(e: Equation, G: Algebra) -> ExactProb:
    """``|{solutions}| / n^k`` with ``k`` the number of variables of ``e``."""
    return Fraction(solution_count(e, G), G.order ** e.num_vars)


def probabilities(e: Equation, tables: np.ndarray, n: int,
                  signature: Signature = Signature.BINARY) -> list[ExactProb]:
    """Probability of ``e`` in each table of a stack (rows are flat tables)."""
    _check_signature(e, signature)
    k = e.num_vars
    _budget(n, k)
    ev = _GridEvaluator(np.atleast_2d(tables), n, k, signature)
    total = n ** k
    return [Fraction(int(c), total) for c in ev.counts(e)]


def solution_mask(e: Equation, G: Algebra, k: Optional[int] = None) -> np.ndarray:
    """Boolean mask over ``[0, n)^k`` (lexicographic order) of solutions of ``e``."""
    _check_signature(e, G.signature)
    k = _max_var(e) + 1 if k is None else k
    if k <= _max_var(e):
        raise ValueError("frame smaller than the equation's variable count")
    _budget(G.order, k)
    ev = _GridEvaluator(_flat(G), G.order, k, G.signature)
    m = ev.values(e.lhs) == ev.values(e.rhs)
    return np.broadcast_to(m, (1, G.order ** k))[0]


# ---------------------------------------------------------------------------
# Spectra

@dataclass(frozen=True)
class Spectrum:
    bounds: Bounds
    order: int
    entries: tuple[tuple[ExactProb, Equation], ...]

    @property
    def values(self) -> list[ExactProb]:
        return [p for p, _ in self.entries]

    def witness(self, p: ExactProb) -> Equation:
        for q, e in self.entries:
            if q == p:
                return e
        raise KeyError(p)

    def __contains__(self, p):
        return any(q == p for q, _ in self.entries)

    def __str__(self):
        return ", ".join(str(p) for p in self.values)


_IDENTITY_SEED = Equation(Var(0), Var(0))
_DIAGONAL_SEED = Equation(Var(0), Var(1))


def _equations(signature: Signature, bounds: Bounds) -> tuple[Equation, ...]:
    return enumerate_equations(signature, bounds.max_size, bounds.max_vars)


def spectrum(G: Algebra, bounds: Bounds = DEFAULT_BOUNDS) -> Spectrum:
    n = G.order
    k = bounds.max_vars
    _budget(n, k)
    ev = _GridEvaluator(_flat(G), n, k, G.signature)
    total = n ** k
    found: dict[int, Equation] = {total: _IDENTITY_SEED}
    for e in _equations(G.signature, bounds):
        c = int(ev.counts(e)[0])
        if c not in found:
            found[c] = e
    found.setdefault(total // n, _DIAGONAL_SEED)
    entries = sorted((Fraction(c, total), e) for c, e in found.items())
    return Spectrum(bounds, n, tuple(entries))


@dataclass(frozen=True)
class Minimal:
    bounds: Bounds

    def __bool__(self):
        return True

    def __str__(self):
        return f"minimal ({self.bounds})"


@dataclass(frozen=True)
class NotMinimal:
    witness: Equation
    probability: ExactProb
    bounds: Bounds = field(default=DEFAULT_BOUNDS)

    def __bool__(self):
        return False

    def __str__(self):
        from .parse import render
        return f"not minimal: {render(self.witness)} has probability {self.probability}"


MinimalityVerdict = Union[Minimal, NotMinimal]


def first_witnesses(tables: np.ndarray, n: int, bounds: Bounds = DEFAULT_BOUNDS,
                    signature: Signature = Signature.BINARY,
                    equations: Optional[Sequence[Equation]] = None) -> np.ndarray:
    """Index (into the equation list) of each table's first non-minimal equation, or -1.

    Tables whose equations all have probability 1 or 1/n get -1. Rows are flat
    tables; work is chunked and finished rows drop out early.
    """
    tables = np.atleast_2d(np.asarray(tables, dtype=np.int64))
    eqs = _equations(signature, bounds) if equations is None else equations
    k = max((e.num_vars for e in eqs), default=1)
    _budget(n, k)
    total = n ** k
    ok_counts = (total, total // n)
    out = np.full(len(tables), -1, dtype=np.int64)
    for start in range(0, len(tables), CHUNK_ROWS):
        chunk = tables[start:start + CHUNK_ROWS]
        ev = _GridEvaluator(chunk, n, k, signature)
        alive = np.arange(len(chunk))
        for idx, e in enumerate(eqs):
            c = ev.counts(e)
            bad = (c != ok_counts[0]) & (c != ok_counts[1])
            if bad.any():
                out[start + alive[bad]] = idx
                keep = ~bad
                alive = alive[keep]
                if not len(alive):
                    break
                ev.restrict(keep)
    return out


def is_d_minimal(G: Algebra, bounds: Bounds = DEFAULT_BOUNDS) -> MinimalityVerdict:
    """Bounded minimality; stops at the first equation outside ``{1, 1/n}``."""
    n = G.order
    k = bounds.max_vars
    _budget(n, k)
    ev = _GridEvaluator(_flat(G), n, k, G.signature)
    total = n ** k
    for e in _equations(G.signature, bounds):
        c = int(ev.counts(e)[0])
        if c != total and c * n != total:
            return NotMinimal(e, Fraction(c, total), bounds)
    return Minimal(bounds)


def verdicts(tables: np.ndarray, n: int, bounds: Bounds = DEFAULT_BOUNDS,
             signature: Signature = Signature.BINARY) -> list[MinimalityVerdict]:
    """:func:`is_d_minimal` for every row of a table stack."""
    eqs = _equations(signature, bounds)
    idx = first_witnesses(tables, n, bounds, signature, eqs)
    out = []
    for row, i in zip(np.atleast_2d(tables), idx):
        if i < 0:
            out.append(Minimal(bounds))
        else:
            G = Algebra(signature, n, tuple(int(v) for v in row))
            out.append(NotMinimal(eqs[i], probability(eqs[i], G), bounds))
    return out


# ---------------------------------------------------------------------------
# Structural consequences

class DichotomyBranch(enum.Enum):
    IDENTITY = "Identity"
    QUASI_IDENTITY = "QuasiIdentity"
    NEITHER = "Neither"


def check_dichotomy(G: Algebra, e: Equation, i: int, j: int) -> DichotomyBranch:
    """Which of "identity" / "implies x_i = x_j" holds for ``e`` in ``G``.

    Requires the specialization identifying ``x_i`` and ``x_j`` to be an
    identity of ``G``.
    """
    spec = specialize(e, i, j)
    if probability(spec, G) != 1:
        raise ValueError("the specialization is not an identity of the algebra")
    k = e.num_vars
    sols = solution_mask(e, G, k)
    if sols.all():
        return DichotomyBranch.IDENTITY
    grid = np.indices((G.order,) * k).reshape(k, -1)
    if (grid[i][sols] == grid[j][sols]).all():
        return DichotomyBranch.QUASI_IDENTITY
    return DichotomyBranch.NEITHER


def count_associative_triples(G: Algebra) -> int:
    if not G.is_binary:
        raise ValueError("associativity needs a binary operation")
    t = G.array
    n = G.order
    x, y, z = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    return int((t[t[x, y], z] == t[x, t[y, z]]).sum())


def count_associative_triples_many(tables: np.ndarray, n: int) -> np.ndarray:
    """Associative-triple counts for a stack of flat binary tables."""
    t = np.atleast_2d(np.asarray(tables, dtype=np.int64)).reshape(-1, n, n)
    x, y, z = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    rows = np.arange(len(t))[:, None, None, None]
    xy = t[rows, x, y]
    yz = t[rows, y, z]
    return (t[rows, xy, z] == t[rows, x, yz]).sum(axis=(1, 2, 3))


class Relation(enum.Enum):
    EQUAL = "Equal"
    LEFT_IN_RIGHT = "LeftInRight"
    RIGHT_IN_LEFT = "RightInLeft"
    INCOMPARABLE = "Incomparable"


def solution_set_relation(e1: Equation, e2: Equation, G: Algebra) -> Relation:
    """Compare solution sets in a shared frame where variable ``i`` is the same in both."""
    k = max(e1.num_vars, e2.num_vars, _max_var(e1) + 1, _max_var(e2) + 1)
    a = solution_mask(e1, G, k)
    b = solution_mask(e2, G, k)
    a_in_b = not (a & ~b).any()
    b_in_a = not (b & ~a).any()
    if a_in_b and b_in_a:
        return Relation.EQUAL
    if a_in_b:
        return Relation.LEFT_IN_RIGHT
    if b_in_a:
        return Relation.RIGHT_IN_LEFT
    return Relation.INCOMPARABLE


def _max_var(e: Equation) -> int:
    return max(variables(e.lhs) + variables(e.rhs))


def identity_holds(e: Equation, G: Algebra) -> bool:
    return bool(solution_mask(e, G).all())


__all__ = [
    "ExactProb", "Bounds", "DEFAULT_BOUNDS", "unary_bounds", "Spectrum", "Minimal", "NotMinimal",
    "MinimalityVerdict", "DichotomyBranch", "Relation", "probability", "probabilities",
    "solution_count", "solution_mask", "spectrum", "is_d_minimal", "first_witnesses", "verdicts",
    "check_dichotomy", "count_associative_triples", "count_associative_triples_many",
    "solution_set_relation", "identity_holds",
]
