"""Terms and equations over one binary or one unary operation symbol."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .algebra import Algebra, Signature

MAX_VARS = 4


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Op:
    """Binary application ``left * right``."""
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Ap:
    """Unary application ``f(child)``."""
    child: "Term"


Term = Union[Var, Op, Ap]


def size(t: Term) -> int:
    """Number of operation nodes."""
    if isinstance(t, Var):
        return 0
    if isinstance(t, Op):
        return 1 + size(t.left) + size(t.right)
    return 1 + size(t.child)


def variables(t: Term) -> list[int]:
    """Variable indices in pre-order, with repeats."""
    if isinstance(t, Var):
        return [t.index]
    if isinstance(t, Op):
        return variables(t.left) + variables(t.right)
    return variables(t.child)


def term_signature(t: Term) -> Signature | None:
    if isinstance(t, Var):
        return None
    if isinstance(t, Op):
        kinds = {Signature.BINARY, term_signature(t.left), term_signature(t.right)} - {None}
    else:
        kinds = {Signature.UNARY, term_signature(t.child)} - {None}
    if len(kinds) > 1:
        raise ValueError("term mixes binary and unary symbols")
    return kinds.pop()


def rename(t: Term, mapping) -> Term:
    if isinstance(t, Var):
        return Var(mapping[t.index])
    if isinstance(t, Op):
        return Op(rename(t.left, mapping), rename(t.right, mapping))
    return Ap(rename(t.child, mapping))


def encode(t: Term) -> tuple:
    """Sort key: size first, then the pre-order token stream (-1 marks an operation)."""
    out: list[int] = []

    def walk(u):
        if isinstance(u, Var):
            out.append(u.index)
        elif isinstance(u, Op):
            out.append(-1)
            walk(u.left)
            walk(u.right)
        else:
            out.append(-1)
            walk(u.child)

    walk(t)
    return (size(t), tuple(out))


def eval_term(t: Term, assignment: Sequence[int], G: Algebra) -> int:
    if isinstance(t, Var):
        if not 0 <= t.index < len(assignment):
            raise IndexError(f"variable x{t.index} has no value in an assignment of length {len(assignment)}")
        return assignment[t.index]
    if isinstance(t, Op):
        if not G.is_binary:
            raise ValueError("binary term evaluated in a unary algebra")
        return G(eval_term(t.left, assignment, G), eval_term(t.right, assignment, G))
    if G.is_binary:
        raise ValueError("unary term evaluated in a binary algebra")
    return G(eval_term(t.child, assignment, G))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    @property
    def num_vars(self) -> int:
        return len(set(variables(self.lhs)) | set(variables(self.rhs)))

    @property
    def size(self) -> int:
        return size(self.lhs) + size(self.rhs)

    @property
    def signature(self) -> Signature:
        s = {term_signature(self.lhs), term_signature(self.rhs)} - {None}
        if len(s) > 1:
            raise ValueError("equation mixes binary and unary symbols")
        return s.pop() if s else Signature.BINARY

    def key(self) -> tuple:
        return (self.size, encode(self.lhs), encode(self.rhs))

    def __str__(self):
        from .parse import render
        return render(self)


def _first_occurrence(terms) -> dict[int, int]:
    mapping: dict[int, int] = {}
    for t in terms:
        for v in variables(t):
            if v not in mapping:
                mapping[v] = len(mapping)
    return mapping


def canonical(e: Equation) -> Equation:
    """Renumber variables by first occurrence and pick the smaller side order."""
    options = []
    for l, r in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
        m = _first_occurrence((l, r))
        options.append(Equation(rename(l, m), rename(r, m)))
    return min(options, key=Equation.key)


def is_canonical(e: Equation) -> bool:
    return canonical(e) == e


def substitute(t: Term, old: int, new: int) -> Term:
    return rename(t, _Replace(old, new))


class _Replace:
    def __init__(self, old, new):
        self.old, self.new = old, new

    def __getitem__(self, i):
        return self.new if i == self.old else i


def specialize(e: Equation, i: int, j: int) -> Equation:
    """Identify variable ``j`` with ``i`` and renumber canonically."""
    k = e.num_vars
    if i == j:
        raise ValueError("specialization needs two distinct variables")
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"variable index out of range for an equation in {k} variables")
    return canonical(Equation(substitute(e.lhs, j, i), substitute(e.rhs, j, i)))


def mirror_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, Op):
        return Op(mirror_term(t.right), mirror_term(t.left))
    raise ValueError("mirror needs a binary term")


def mirror(e: Equation) -> Equation:
    """The anti-equation, valid in the opposite groupoid."""
    return canonical(Equation(mirror_term(e.lhs), mirror_term(e.rhs)))


# ---------------------------------------------------------------------------
# Enumeration

@lru_cache(maxsize=None)
def _shapes(signature: Signature, s: int) -> tuple:
    """Term skeletons of size ``s``; leaves are ``None`` placeholders."""
    if s == 0:
        return (None,)
    if signature is Signature.UNARY:
        return tuple(("f", c) for c in _shapes(signature, s - 1))
    out = []
    for ls in range(s):
        for l in _shapes(signature, ls):
            for r in _shapes(signature, s - 1 - ls):
                out.append(("*", l, r))
    return tuple(out)


def _leaves(shape) -> int:
    if shape is None:
        return 1
    if shape[0] == "f":
        return _leaves(shape[1])
    return _leaves(shape[1]) + _leaves(shape[2])


def _fill(shape, labels: Iterator[int]) -> Term:
    if shape is None:
        return Var(next(labels))
    if shape[0] == "f":
        return Ap(_fill(shape[1], labels))
    left = _fill(shape[1], labels)
    return Op(left, _fill(shape[2], labels))


def restricted_growth(length: int, max_blocks: int) -> Iterator[tuple[int, ...]]:
    """Label sequences where each new label is one more than the largest so far."""
    def rec(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in range(min(top + 2, max_blocks)):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([], -1)


@lru_cache(maxsize=64)
def enumerate_equations(signature: Signature, max_size: int, max_vars: int) -> tuple[Equation, ...]:
    """Every canonical equation within the bounds, excluding ``t = t``.

    Ordered by total size, then left side, then right side.
    """
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    if not 1 <= max_vars <= MAX_VARS:
        raise ValueError(f"max_vars must lie in 1..{MAX_VARS}")
    out = []
    for total in range(max_size + 1):
        for ls in range(total + 1):
            for lshape in _shapes(signature, ls):
                for rshape in _shapes(signature, total - ls):
                    nl = _leaves(lshape)
                    for labels in restricted_growth(nl + _leaves(rshape), max_vars):
                        it = iter(labels)
                        e = Equation(_fill(lshape, it), _fill(rshape, it))
                        if e.lhs != e.rhs and is_canonical(e):
                            out.append(e)
    out.sort(key=Equation.key)
    return tuple(out)


__all__ = [
    "MAX_VARS", "Var", "Op", "Ap", "Term", "Equation", "size", "variables", "encode",
    "eval_term", "canonical", "is_canonical", "specialize", "substitute", "mirror",
    "mirror_term", "enumerate_equations", "restricted_growth", "term_signature", "rename",
]
