"""Exhaustive censuses of small algebras with (bounded) minimal spectrum."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .algebra import (Algebra, CycleType, Signature, StructureClass, StructureProfile,
                      canonical_form, classify_structure, cycle_type, isocyclic_permutation,
                      structure_profile)
from .parse import parse_equation
from .spectrum import (DEFAULT_BOUNDS, Bounds, Relation, count_associative_triples_many,
                       first_witnesses, identity_holds, probability, solution_set_relation,
                       unary_bounds)
from .term import Equation, Var

REPORT_SCHEMA = "minspec.report/1"

RAW_MAX_ORDER = 4
PRUNED_MAX_ORDER = 5
LATIN_MAX_ORDER = 5
UNARY_MAX_ORDER = 6
SEMIGROUP_MAX_ORDER = 4


@dataclass(frozen=True)
class Survivor:
    algebra: Algebra
    structure: str
    profile: Optional[StructureProfile] = None
    cycle_type: Optional[CycleType] = None

    def as_dict(self) -> dict:
        d = {"table": self.algebra.rows() if self.algebra.is_binary else list(self.algebra.table),
             "class": self.structure}
        if self.profile is not None:
            d["flags"] = self.profile.as_dict()
        if self.cycle_type is not None:
            d["cycle_type"] = list(self.cycle_type.lengths)
        return d


@dataclass
class ClassificationReport:
    kind: str
    order: int
    bounds: Bounds
    mode: str
    allow_anti: bool
    survivors: list[Survivor]
    counts: dict[str, int]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def tables(self) -> list[Algebra]:
        return [s.algebra for s in self.survivors]

    def header(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "kind": self.kind,
            "order": self.order,
            "mode": self.mode,
            "bounds": {"max_size": self.bounds.max_size, "max_vars": self.bounds.max_vars},
            "allow_anti": self.allow_anti,
            "counts": dict(self.counts),
            "survivors": len(self.survivors),
        }

    def to_jsonl(self) -> str:
        """Header line, then one survivor per line. Wall time is left out so output is reproducible."""
        lines = [json.dumps(self.header(), sort_keys=True)]
        lines += [json.dumps(s.as_dict(), sort_keys=True) for s in self.survivors]
        return "\n".join(lines) + "\n"

    def to_human(self) -> str:
        out = [f"{self.kind} census, order {self.order}, mode {self.mode}, bounds {self.bounds}"
               f"{', anti-isomorphism merged' if self.allow_anti else ''}"]
        for k, v in self.counts.items():
            out.append(f"  {k.replace('_', ' ')}: {v}")
        out.append(f"  survivors up to isomorphism: {len(self.survivors)}")
        for i, s in enumerate(self.survivors):
            table = s.algebra.rows() if s.algebra.is_binary else [list(s.algebra.table)]
            cells = " / ".join(" ".join(map(str, r)) for r in table)
            extra = f" cycle type {s.cycle_type.lengths}" if s.cycle_type is not None else ""
            out.append(f"  [{i}] {s.structure:<22} {cells}{extra}")
        return "\n".join(out) + "\n"


def _check_order(n: int, cap: int, what: str) -> None:
    if not 1 <= n <= cap:
        raise ValueError(f"{what} supports orders 1..{cap}, got {n}")


def _dedupe(tables: Iterable[Sequence[int]], n: int, signature: Signature,
            allow_anti: bool) -> list[Algebra]:
    seen = {}
    for t in tables:
        c = canonical_form(Algebra(signature, n, tuple(int(v) for v in t)), allow_anti)
        seen.setdefault(c.table, c)
    return [seen[k] for k in sorted(seen)]


def _binary_survivors(tables, n, allow_anti) -> list[Survivor]:
    return [Survivor(G, str(classify_structure(G)), structure_profile(G))
            for G in _dedupe(tables, n, Signature.BINARY, allow_anti)]


def _full_check(cands: np.ndarray, n: int, bounds: Bounds,
                signature: Signature = Signature.BINARY) -> np.ndarray:
    if not len(cands):
        return cands
    w = first_witnesses(cands, n, bounds, signature)
    return cands[w < 0]


# ---------------------------------------------------------------------------
# Raw groupoid scan with row/column dichotomy pruning

class _RawSearch:
    """Backtracking over cells in row-major order.

    A minimal groupoid has Pr(x*y = x*z) in {1, 1/n}, which forces every row
    to be constant or every row to be a permutation; the same holds for
    columns with Pr(y*x = z*x). Partial tables violating either are cut.
    """

    def __init__(self, n: int):
        self.n = n
        self.cells = n * n
        self.t = [0] * self.cells
        self.found: list[tuple[int, ...]] = []
        self.pruned = 0

    def _line_ok(self, prefix_vals: list[int], v: int, kind: Optional[str]) -> Optional[str]:
        # Returns the line's kind after appending v ('c', 'i', or '' if undecided), None if invalid.
        if not prefix_vals:
            return ""
        if len(prefix_vals) == 1:
            k = "c" if v == prefix_vals[0] else "i"
        elif v == prefix_vals[0] and prefix_vals[1] == prefix_vals[0]:
            k = "c"
        elif v not in prefix_vals and prefix_vals[1] != prefix_vals[0]:
            k = "i"
        else:
            return None
        if kind and k != kind:
            return None
        return k

    def run(self, prefix: Sequence[int] = ()) -> None:
        n = self.n
        self.t[:len(prefix)] = list(prefix)
        self._rec(len(prefix))

    def _kinds(self, pos: int):
        n, t = self.n, self.t
        row_kind = col_kind = ""
        if pos >= 2 and n >= 2:
            row_kind = "c" if t[0] == t[1] else "i"
        if pos >= n + 1 and n >= 2:
            col_kind = "c" if t[0] == t[n] else "i"
        return row_kind, col_kind

    def _rec(self, pos: int) -> None:
        n, t = self.n, self.t
        if pos == self.cells:
            self.found.append(tuple(t))
            return
        r, c = divmod(pos, n)
        row_kind, col_kind = self._kinds(pos)
        row_prefix = t[r * n:pos]
        col_prefix = t[c:pos:n]
        remaining = n ** (self.cells - pos - 1)
        for v in range(n):
            if self._line_ok(row_prefix, v, row_kind) is None or \
                    self._line_ok(col_prefix, v, col_kind) is None:
                self.pruned += remaining
                continue
            t[pos] = v
            self._rec(pos + 1)


def _raw_branch(args) -> tuple[list[tuple[int, ...]], int]:
    n, first_row = args
    s = _RawSearch(n)
    s.run(first_row)
    return s.found, s.pruned


def _first_rows(n: int) -> tuple[list[tuple[int, ...]], int]:
    """Row-0 prefixes that pass the row test, and the table count they exclude."""
    s = _RawSearch(n)
    rows, pruned = [], 0
    for row in itertools.product(range(n), repeat=n):
        ok = n < 2 or len(set(row)) in (1, n)
        if ok:
            rows.append(row)
        else:
            pruned += n ** (n * n - n)
    return rows, pruned


def raw_candidates(n: int, workers: int = 1) -> tuple[np.ndarray, int]:
    """All order-``n`` tables passing the row/column dichotomy, and the count pruned."""
    rows, pruned = _first_rows(n)
    tasks = [(n, r) for r in rows]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_raw_branch, tasks))
    else:
        results = [_raw_branch(t) for t in tasks]
    found = [t for f, _ in results for t in f]
    pruned += sum(p for _, p in results)
    arr = np.array(found, dtype=np.int64).reshape(-1, n * n)
    return arr, pruned


# ---------------------------------------------------------------------------
# Candidate generators

def isocyclic_permutations(n: int) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(n)) if cycle_type(p).isocyclic]


def latin_squares(n: int) -> np.ndarray:
    """Every Latin square of order ``n`` as flat rows, in lexicographic order."""
    _check_order(n, LATIN_MAX_ORDER, "Latin square generation")
    return _latin_squares(n)


@lru_cache(maxsize=None)
def _latin_squares(n: int) -> np.ndarray:
    full = (1 << n) - 1
    t = [0] * (n * n)
    rows = [0] * n
    cols = [0] * n
    out: list[list[int]] = []

    def rec(pos):
        if pos == n * n:
            out.append(t[:])
            return
        r, c = divmod(pos, n)
        free = full & ~rows[r] & ~cols[c]
        while free:
            bit = free & -free
            free ^= bit
            v = bit.bit_length() - 1
            t[pos] = v
            rows[r] |= bit
            cols[c] |= bit
            rec(pos + 1)
            rows[r] ^= bit
            cols[c] ^= bit

    rec(0)
    arr = np.array(out, dtype=np.int64).reshape(-1, n * n)
    arr.setflags(write=False)
    return arr


def trichotomy_candidates(n: int) -> np.ndarray:
    """Constant tables, both isocyclic families, and all Latin squares of order ``n``."""
    cands = [tuple([v] * (n * n)) for v in range(n)]
    for f in isocyclic_permutations(n):
        cands.append(tuple(f[x] for x in range(n) for _ in range(n)))
        cands.append(tuple(f[y] for _ in range(n) for y in range(n)))
    cands.extend(map(tuple, latin_squares(n).tolist()))
    unique = sorted(set(cands))
    return np.array(unique, dtype=np.int64).reshape(-1, n * n)


# ---------------------------------------------------------------------------
# Scans

def scan_groupoids(n: int, bounds: Bounds = DEFAULT_BOUNDS, mode: str = "raw",
                   allow_anti: bool = False, workers: int = 1) -> ClassificationReport:
    """Census of order-``n`` groupoids with bounded minimal spectrum.

    ``raw`` walks all ``n^(n^2)`` tables with only the row/column dichotomy
    cut; ``pruned`` full-checks just the constant, isocyclic and Latin tables.
    """
    mode = mode.lower()
    start = time.perf_counter()
    if mode == "raw":
        _check_order(n, RAW_MAX_ORDER, "raw groupoid scan")
        cands, pruned = raw_candidates(n, workers)
        counts = {"tables_examined": n ** (n * n), "pruned_by_row_column": pruned}
    elif mode == "pruned":
        _check_order(n, PRUNED_MAX_ORDER, "pruned groupoid scan")
        cands = trichotomy_candidates(n)
        counts = {"tables_examined": len(cands), "pruned_by_row_column": 0}
    else:
        raise ValueError(f"unknown scan mode {mode!r}")
    minimal = _full_check(cands, n, bounds)
    counts["full_checks"] = len(cands)
    counts["pruned_by_witness"] = len(cands) - len(minimal)
    survivors = _binary_survivors(minimal, n, allow_anti)
    return ClassificationReport("groupoid", n, bounds, mode, allow_anti, survivors, counts,
                                time.perf_counter() - start)


def scan_latin_squares(n: int, bounds: Bounds = DEFAULT_BOUNDS,
                       allow_anti: bool = False) -> ClassificationReport:
    start = time.perf_counter()
    squares = latin_squares(n)
    minimal = _full_check(squares, n, bounds)
    counts = {"tables_examined": len(squares), "full_checks": len(squares),
              "pruned_by_witness": len(squares) - len(minimal)}
    survivors = _binary_survivors(minimal, n, allow_anti)
    return ClassificationReport("latin", n, bounds, "pruned", allow_anti, survivors, counts,
                                time.perf_counter() - start)


def minimal_maps(n: int, bounds: Optional[Bounds] = None) -> tuple[np.ndarray, np.ndarray]:
    """All ``n^n`` unary maps and the labeled subset passing the bounded check."""
    _check_order(n, UNARY_MAX_ORDER, "mono-unary scan")
    bounds = unary_bounds(n) if bounds is None else bounds
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)
    return maps, _full_check(maps, n, bounds, Signature.UNARY)


def scan_monounary(n: int, bounds: Optional[Bounds] = None) -> ClassificationReport:
    """All ``n^n`` unary maps; survivors are grouped into isomorphism classes."""
    _check_order(n, UNARY_MAX_ORDER, "mono-unary scan")
    bounds = unary_bounds(n) if bounds is None else bounds
    if bounds.max_size < n:
        raise ValueError("unary scans need max_size >= n to reach f^n(x) = x")
    start = time.perf_counter()
    maps, minimal = minimal_maps(n, bounds)
    survivors = []
    for G in _dedupe(minimal, n, Signature.UNARY, False):
        f = list(G.table)
        if len(set(f)) == 1:
            survivors.append(Survivor(G, "Constant"))
        elif len(set(f)) == n:
            ct = cycle_type(f)
            label = f"Isocyclic({ct.block_length})" if ct.isocyclic else "Permutation"
            survivors.append(Survivor(G, label, cycle_type=ct))
        else:
            survivors.append(Survivor(G, "Other"))
    counts = {"tables_examined": len(maps), "full_checks": len(maps),
              "pruned_by_witness": len(maps) - len(minimal), "minimal_tables": len(minimal)}
    return ClassificationReport("unary", n, bounds, "raw", False, survivors, counts,
                                time.perf_counter() - start)


class _SemigroupSearch:
    """Backtracking over cells with associativity checked as soon as a triple is fully defined."""

    def __init__(self, n: int):
        self.n = n
        self.t = [-1] * (n * n)
        self.found: list[tuple[int, ...]] = []
        self.nodes = 0

    def _assoc_ok(self, a: int, b: int) -> bool:
        # Only triples that read cell (a, b) can have become decidable.
        n, t = self.n, self.t
        v = t[a * n + b]
        R = range(n)
        # (a b) z = a (b z)
        for z in R:
            bz = t[b * n + z]
            if bz < 0:
                continue
            lhs = t[v * n + z]
            rhs = t[a * n + bz]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
        # (x a) b = x (a b)
        for x in R:
            xa = t[x * n + a]
            if xa < 0:
                continue
            lhs = t[xa * n + b]
            rhs = t[x * n + v]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
        # (x y) b = x (y b) with x y = a
        for x in R:
            for y in R:
                if t[x * n + y] != a:
                    continue
                yb = t[y * n + b]
                if yb < 0:
                    continue
                rhs = t[x * n + yb]
                if rhs >= 0 and rhs != v:
                    return False
        # (a y) z = a (y z) with y z = b
        for y in R:
            for z in R:
                if t[y * n + z] != b:
                    continue
                ay = t[a * n + y]
                if ay < 0:
                    continue
                lhs = t[ay * n + z]
                if lhs >= 0 and lhs != v:
                    return False
        return True

    def run(self) -> None:
        self._rec(0)

    def _rec(self, pos: int) -> None:
        n, t = self.n, self.t
        if pos == n * n:
            self.found.append(tuple(t))
            return
        a, b = divmod(pos, n)
        for v in range(n):
            self.nodes += 1
            t[pos] = v
            if self._assoc_ok(a, b):
                self._rec(pos + 1)
        t[pos] = -1


def semigroup_tables(n: int) -> tuple[np.ndarray, int]:
    """All associative tables of order ``n`` and the number of search nodes visited."""
    _check_order(n, SEMIGROUP_MAX_ORDER, "semigroup scan")
    s = _SemigroupSearch(n)
    s.run()
    return np.array(s.found, dtype=np.int64).reshape(-1, n * n), s.nodes


def scan_semigroups(n: int, bounds: Bounds = DEFAULT_BOUNDS,
                    allow_anti: bool = False) -> ClassificationReport:
    start = time.perf_counter()
    tables, nodes = semigroup_tables(n)
    minimal = _full_check(tables, n, bounds)
    counts = {"search_nodes": nodes, "semigroups": len(tables), "full_checks": len(tables),
              "pruned_by_witness": len(tables) - len(minimal)}
    survivors = _binary_survivors(minimal, n, allow_anti)
    return ClassificationReport("semigroup", n, bounds, "pruned", allow_anti, survivors, counts,
                                time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Weak associativity

LEFT_MOUFANG = parse_equation("x*(y*(x*z)) = ((x*y)*x)*z")
# Variable pairs identified by the three left Moufang specializations (x=0, y=1, z=2).
MOUFANG_PAIRS = ((0, 1), (1, 2), (0, 2))


@dataclass(frozen=True)
class Verdict:
    check: str
    subject: str
    passed: bool
    detail: str = ""


def _moufang_frame_equation(i: int, j: int) -> Equation:
    return Equation(Var(i), Var(j))


def moufang_specializations_holding(G: Algebra) -> list[tuple[int, int]]:
    """Left Moufang specializations (as identified variable pairs) that are identities of ``G``."""
    from .term import substitute
    out = []
    for i, j in MOUFANG_PAIRS:
        e = Equation(substitute(LEFT_MOUFANG.lhs, j, i), substitute(LEFT_MOUFANG.rhs, j, i))
        if identity_holds(e, G):
            out.append((i, j))
    return out


def weak_assoc_suite(report: ClassificationReport) -> list[Verdict]:
    """Weak-associativity consequences over a census containing quasigroups.

    * every minimal quasigroup survivor that is a loop, alternative,
      ditercitive, or commutative and semialternative is associative;
    * every loop of the scanned order has at least ``3n^2 - 3n + 1``
      associative triples, every alternative quasigroup at least ``2n^2 - n``;
    * a minimal survivor satisfying two incomparable left Moufang
      specializations satisfies the left Moufang identity.
    """
    n = report.order
    out: list[Verdict] = []
    for s in report.survivors:
        p = s.profile
        if p is None or not p.latin:
            continue
        name = " / ".join(" ".join(map(str, r)) for r in s.algebra.rows())
        reasons = [label for label, flag in (
            ("loop", p.loop), ("alternative", p.alternative), ("ditercitive", p.ditercitive),
            ("commutative semialternative", p.commutative and p.semialternative)) if flag]
        if reasons:
            out.append(Verdict("forced associativity", name, p.associative, ", ".join(reasons)))
        held = moufang_specializations_holding(s.algebra)
        incomparable = [
            (u, w) for u, w in itertools.combinations(held, 2)
            if solution_set_relation(_moufang_frame_equation(*u), _moufang_frame_equation(*w),
                                     s.algebra) is Relation.INCOMPARABLE
        ]
        if incomparable:
            out.append(Verdict("two Moufang specializations", name, p.left_moufang,
                               f"specializations {held}"))
    if n <= LATIN_MAX_ORDER:
        out.extend(triple_bounds(n))
    return out


def triple_bounds(n: int) -> list[Verdict]:
    """Associative-triple lower bounds for loops and alternative quasigroups of order ``n``."""
    squares = latin_squares(n)
    counts = count_associative_triples_many(squares, n)
    t = squares.reshape(-1, n, n)
    idx = np.arange(n)
    # neutral element e: row e and column e are the identity map
    row_id = (t == idx[None, None, :]).all(axis=2)
    col_id = (t.transpose(0, 2, 1) == idx[None, None, :]).all(axis=2)
    loops = (row_id & col_id).any(axis=1)
    diag = t[:, idx, idx]
    rows = np.arange(len(t))[:, None, None]
    x, y = idx[:, None], idx[None, :]
    left_alt = (t[rows, x, t] == t[rows, diag[:, :, None], y]).all(axis=(1, 2))
    right_alt = (t[rows, t, y] == t[rows, x, diag[:, None, :]]).all(axis=(1, 2))
    alternative = left_alt & right_alt
    loop_bound = 3 * n * n - 3 * n + 1
    alt_bound = 2 * n * n - n
    out = [
        Verdict("loop triple bound", f"{int(loops.sum())} loops of order {n}",
                bool((counts[loops] >= loop_bound).all()),
                f"min count {int(counts[loops].min()) if loops.any() else '-'} >= {loop_bound}"),
        Verdict("alternative triple bound", f"{int(alternative.sum())} alternative quasigroups of order {n}",
                bool((counts[alternative] >= alt_bound).all()),
                f"min count {int(counts[alternative].min()) if alternative.any() else '-'} >= {alt_bound}"),
    ]
    return out


__all__ = [
    "REPORT_SCHEMA", "Survivor", "ClassificationReport", "Verdict", "scan_groupoids",
    "scan_latin_squares", "scan_monounary", "scan_semigroups", "weak_assoc_suite",
    "triple_bounds", "latin_squares", "raw_candidates", "trichotomy_candidates",
    "isocyclic_permutations", "semigroup_tables", "minimal_maps", "moufang_specializations_holding",
    "LEFT_MOUFANG",
]
