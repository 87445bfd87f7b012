"""Text formats for equations and algebras.

Equations::

    equation := term ('=' | '≈') term
    term     := factor { '*' factor }          (left-associative)
    factor   := variable | 'f' '(' term ')' | '(' term ')'
    variable := [a-z][a-z0-9]*                 ('f' is reserved)

Algebras are either a constructor expression (``Z 5``, ``Zab 4 1 3``,
``C 7``, ``ILeft 7 3``, ``IRight 7 3``, ``D4``, ``sheffer``, ``and2``,
``proj 3``, ``prod(A, B)``, ``pow(A, m)``) or an explicit block::

    groupoid 2
    0 0
    0 1

whose rows are indexed by the left operand, or ``unary n`` followed by one
row of ``n`` entries.
"""

from __future__ import annotations

import re
from typing import Union

from . import algebra as alg
from .algebra import Algebra
from .term import MAX_VARS, Ap, Equation, Op, Term, Var, canonical

VAR_NAMES = "xyzw"


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"at offset {offset}: {message}")
        self.message = message
        self.offset = offset


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {ch!r}, got {got}", self.pos)
        self.pos += 1

    def word(self, pattern=r"[A-Za-z][A-Za-z0-9]*"):
        self.skip_ws()
        m = re.compile(pattern).match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


# ---------------------------------------------------------------------------
# Equations

class _EquationParser:
    def __init__(self, text):
        self.s = _Scanner(text)
        self.names: dict[str, int] = {}
        self.kind: str | None = None
        self.kind_offset = 0

    def _signature(self, kind: str, offset: int):
        if self.kind is None:
            self.kind = kind
        elif self.kind != kind:
            raise ParseError("equation mixes '*' with 'f(...)'", offset)

    def term(self) -> Term:
        t = self.factor()
        while self.s.peek() == "*":
            self._signature("*", self.s.pos)
            self.s.pos += 1
            t = Op(t, self.factor())
        return t

    def factor(self) -> Term:
        s = self.s
        ch = s.peek()
        if ch == "(":
            s.pos += 1
            t = self.term()
            s.expect(")")
            return t
        start = s.pos
        name = s.word(r"[a-z][a-z0-9]*")
        if name is None:
            got = repr(ch) if ch else "end of input"
            raise ParseError(f"expected a variable, 'f(' or '(', got {got}", s.pos)
        if name == "f":
            self._signature("f", start)
            s.expect("(")
            t = self.term()
            s.expect(")")
            return Ap(t)
        if name not in self.names:
            if len(self.names) == MAX_VARS:
                raise ParseError(f"more than {MAX_VARS} distinct variables", s.pos)
            self.names[name] = len(self.names)
        return Var(self.names[name])

    def equation(self) -> Equation:
        lhs = self.term()
        s = self.s
        ch = s.peek()
        if ch not in ("=", "≈"):
            got = repr(ch) if ch else "end of input"
            raise ParseError(f"expected '=' or '≈', got {got}", s.pos)
        s.pos += 1
        rhs = self.term()
        if not s.at_end():
            raise ParseError(f"unexpected {s.peek()!r} after equation", s.pos)
        return Equation(lhs, rhs)


def parse_equation(text: str) -> Equation:
    """Parse an equation and return it in canonical form.

    >>> render(parse_equation("x*(y*z) = (x*y)*z"))
    '(x*y)*z = x*(y*z)'
    """
    return canonical(_EquationParser(text).equation())


def parse_term(text: str) -> Term:
    p = _EquationParser(text)
    t = p.term()
    if not p.s.at_end():
        raise ParseError(f"unexpected {p.s.peek()!r} after term", p.s.pos)
    return t


# ---------------------------------------------------------------------------
# Algebras

_ARITY = {
    "z": (1, lambda n: alg.zmod(n)),
    "zab": (3, alg.zab),
    "c": (1, alg.constant),
    "ileft": (2, alg.arg_left_isocyclic),
    "iright": (2, alg.arg_right_isocyclic),
    "d4": (0, alg.dihedral4),
    "sheffer": (0, alg.sheffer),
    "and2": (0, alg.and2),
    "proj": (1, alg.projection),
}


class _AlgebraParser:
    def __init__(self, text):
        self.s = _Scanner(text)

    def integer(self) -> tuple[int, int]:
        s = self.s
        s.skip_ws()
        start = s.pos
        tok = s.word(r"-?[0-9]+")
        if tok is None:
            got = repr(s.peek()) if s.peek() else "end of input"
            raise ParseError(f"expected an integer, got {got}", s.pos)
        return int(tok), start

    def expr(self) -> Algebra:
        s = self.s
        s.skip_ws()
        start = s.pos
        name = s.word()
        if name is None:
            got = repr(s.peek()) if s.peek() else "end of input"
            raise ParseError(f"expected a constructor name, got {got}", s.pos)
        key = name.lower()
        if key in ("prod", "pow"):
            s.expect("(")
            a = self.expr()
            s.expect(",")
            if key == "prod":
                b = self.expr()
                s.expect(")")
                return self._apply(alg.direct_product, (a, b), s.pos)
            m, at = self.integer()
            s.expect(")")
            return self._apply(alg.power, (a, m), at)
        if key in ("groupoid", "unary"):
            return self.block(key)
        if key not in _ARITY:
            raise ParseError(f"unknown constructor {name!r}", s.pos)
        arity, ctor = _ARITY[key]
        args = []
        for _ in range(arity):
            v, _ = self.integer()
            args.append(v)
        return self._apply(ctor, args, s.pos)

    @staticmethod
    def _apply(ctor, args, offset):
        try:
            return ctor(*args)
        except ValueError as exc:
            raise ParseError(str(exc), offset) from None

    def block(self, kind: str) -> Algebra:
        s = self.s
        n, at = self.integer()
        if not 1 <= n <= alg.MAX_CONSTRUCT_ORDER:
            raise ParseError(f"order {n} out of range", s.pos)
        rows_expected = n if kind == "groupoid" else 1
        rows = []
        for _ in range(rows_expected):
            # a row is the next line's worth of integers
            self._newline()
            row = []
            for _ in range(n):
                v, at = self._row_int()
                if not 0 <= v < n:
                    raise ParseError(f"entry {v} out of range 0..{n - 1}", s.pos)
                row.append(v)
            rows.append(row)
        if kind == "groupoid":
            return Algebra.groupoid(rows)
        return Algebra.unary(rows[0])

    def _newline(self):
        s = self.s
        while s.pos < len(s.text) and s.text[s.pos] in " \t\r":
            s.pos += 1
        if s.pos >= len(s.text):
            raise ParseError("missing table row", s.pos)
        if s.text[s.pos] != "\n":
            raise ParseError("expected a line break before the next row", s.pos)
        s.pos += 1

    def _row_int(self):
        s = self.s
        while s.pos < len(s.text) and s.text[s.pos] in " \t":
            s.pos += 1
        m = re.compile(r"-?[0-9]+").match(s.text, s.pos)
        if not m:
            got = repr(s.text[s.pos]) if s.pos < len(s.text) else "end of input"
            if got == "'\\n'":
                raise ParseError("row too short", s.pos)
            raise ParseError(f"expected a table entry, got {got}", s.pos)
        start = s.pos
        s.pos = m.end()
        return int(m.group()), start


def parse_algebra(text: str) -> Algebra:
    p = _AlgebraParser(text)
    G = p.expr()
    if not p.s.at_end():
        raise ParseError(f"unexpected {p.s.peek()!r} after algebra", p.s.pos)
    return G


# ---------------------------------------------------------------------------
# Rendering

def _var_name(i: int) -> str:
    return VAR_NAMES[i] if i < len(VAR_NAMES) else f"x{i}"


def render_term(t: Term, top: bool = True) -> str:
    if isinstance(t, Var):
        return _var_name(t.index)
    if isinstance(t, Ap):
        return f"f({render_term(t.child)})"
    body = f"{render_term(t.left, False)}*{render_term(t.right, False)}"
    return body if top else f"({body})"


def render(v: Union[Equation, Algebra]) -> str:
    """Render an equation (``'='`` form) or an algebra (explicit block)."""
    if isinstance(v, Equation):
        return f"{render_term(v.lhs)} = {render_term(v.rhs)}"
    return str(v)


__all__ = ["ParseError", "parse_equation", "parse_term", "parse_algebra", "render", "render_term"]
