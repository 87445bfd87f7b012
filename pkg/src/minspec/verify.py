"""Reproduction checks for the published results, one per acceptance criterion.

Each check returns a :class:`CheckResult` naming the result it reproduces,
what was expected and what the engine produced. ``verify_paper_suite`` runs
them all; the ``quick`` level skips the raw order-4 groupoid scan.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import algebra as alg
from .algebra import Algebra, Signature, are_isomorphic, canonical_form, cycle_type
from .families import (dyadic_membership, gf4_affine, semilattice_membership, zpr_spectrum)
from .parse import parse_equation, render
from .search import (isocyclic_permutations, minimal_maps, scan_groupoids, scan_latin_squares,
                     scan_monounary, scan_semigroups, triple_bounds, weak_assoc_suite)
from .spectrum import (DEFAULT_BOUNDS, Bounds, DichotomyBranch, check_dichotomy,
                       count_associative_triples, is_d_minimal, probability, spectrum,
                       unary_bounds)
from .term import enumerate_equations, specialize

SUITE_SCHEMA = "minspec.verify/1"

# The nine order-3 tables with minimal spectrum as published, keyed by (a, b) of x*y = ax + by.
ORDER3_TABLES = {
    (0, 0): [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    (1, 0): [[0, 0, 0], [1, 1, 1], [2, 2, 2]],
    (2, 0): [[0, 0, 0], [2, 2, 2], [1, 1, 1]],
    (0, 1): [[0, 1, 2], [0, 1, 2], [0, 1, 2]],
    (0, 2): [[0, 2, 1], [0, 2, 1], [0, 2, 1]],
    (2, 1): [[0, 1, 2], [2, 0, 1], [1, 2, 0]],
    (1, 2): [[0, 2, 1], [1, 0, 2], [2, 1, 0]],
    (2, 2): [[0, 2, 1], [2, 1, 0], [1, 0, 2]],
    (1, 1): [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
}


@dataclass
class CheckResult:
    number: int
    name: str
    reproduces: str
    expected: str
    got: str
    passed: bool
    seconds: float = 0.0
    time_limit: float = 0.0
    findings: list[str] = field(default_factory=list)

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.passed else "FAIL"
        clock = f" ({self.seconds:.2f}s / limit {self.time_limit:g}s)" if timing else ""
        return f"[{status}] {self.number:>2}. {self.name}{clock}: expected {self.expected}; got {self.got}"

    def as_dict(self, timing: bool = False) -> dict:
        d = {"number": self.number, "name": self.name, "reproduces": self.reproduces,
             "expected": self.expected, "got": self.got, "passed": self.passed,
             "findings": self.findings}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def _timed(number: int, name: str, reproduces: str, limit: float):
    def deco(fn: Callable[[], tuple[str, str, bool, list]]):
        def run() -> CheckResult:
            t0 = time.perf_counter()
            expected, got, ok, findings = fn()
            dt = time.perf_counter() - t0
            return CheckResult(number, name, reproduces, expected, got, ok and dt <= limit,
                               dt, limit, list(findings))
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


def _fracs(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


def _canon_set(algebras, allow_anti=False) -> set:
    return {canonical_form(G, allow_anti).table for G in algebras}


# ---------------------------------------------------------------------------
# Cached scans shared between checks

@lru_cache(maxsize=None)
def _groupoids(n: int, mode: str):
    return scan_groupoids(n, DEFAULT_BOUNDS, mode)


@lru_cache(maxsize=None)
def _semigroups(n: int):
    return scan_semigroups(n, DEFAULT_BOUNDS)


@lru_cache(maxsize=None)
def _monounary(n: int):
    return scan_monounary(n)


@lru_cache(maxsize=None)
def _latin(n: int):
    return scan_latin_squares(n, DEFAULT_BOUNDS)


# ---------------------------------------------------------------------------
# Checks

@_timed(1, "dihedral commuting probability", "commuting probability of the dihedral group of order 8", 1)
def check_dihedral():
    p = probability(parse_equation("x*y = y*x"), alg.dihedral4())
    return "5/8", str(p), p == Fraction(5, 8), []


@_timed(2, "prime cyclic minimality", "spectrum of Z_p is {1/p, 1}", 10)
def check_prime_cyclic():
    got = set(spectrum(alg.zmod(5)).values)
    want = {Fraction(1, 5), Fraction(1)}
    return _fracs(want), _fracs(got), got == want, []


@_timed(3, "prime-power spectrum", "spectrum of Z_{p^r} is {p^(s-r) : 0 <= s <= r}", 10)
def check_prime_power():
    got = set(spectrum(alg.zmod(4)).values)
    want = {Fraction(1, 4), Fraction(1, 2), Fraction(1)}
    return _fracs(want), _fracs(got), got == want == set(zpr_spectrum(2, 2)), []


def _order2_classes():
    return [alg.constant(2), alg.arg_left_isocyclic(2, 1), alg.arg_right_isocyclic(2, 1), alg.zmod(2)]


@_timed(4, "order-2 census", "exactly four order-2 groupoids up to isomorphism", 1)
def check_order2():
    r = _groupoids(2, "raw")
    got = _canon_set(r.tables)
    want = _canon_set(_order2_classes())
    labels = sorted(s.structure for s in r.survivors)
    return "C2, ArgLeftIsocyclic(1), ArgRightIsocyclic(1), Z2", \
        f"{len(got)} classes: {', '.join(labels)}", got == want and len(r.survivors) == 4, []


@_timed(5, "order-3 census", "the nine order-3 groupoids derived from Z_3", 300)
def check_order3():
    raw = _groupoids(3, "raw")
    pruned = _groupoids(3, "pruned")
    zabs = [alg.zab(3, a, b) for a in range(3) for b in range(3)]
    zab_forms = _canon_set(zabs)
    each_zab = all(G.table in zab_forms for G in raw.tables)
    listed = [Algebra.groupoid(rows) for rows in ORDER3_TABLES.values()]
    listed_match = all(Algebra.groupoid(rows).table == alg.zab(3, a, b).table
                      for (a, b), rows in ORDER3_TABLES.items())
    all_present = _canon_set(listed) <= set(G.table for G in raw.tables)
    agree = raw.tables == pruned.tables
    got = (f"{raw.counts['tables_examined']} tables, {len(raw.survivors)} classes, "
           f"all Zab: {each_zab}, nine present: {all_present}, raw == pruned: {agree}")
    return "every survivor some Zab 3 a b, nine tables present, modes agree", got, \
        each_zab and all_present and listed_match and agree and raw.counts["tables_examined"] == 19683, []


def _semigroup_expected(n: int) -> list[Algebra]:
    out = [alg.constant(n), alg.arg_left_isocyclic(n, 1), alg.arg_right_isocyclic(n, 1)]
    elementary = {1: None, 2: alg.zmod(2), 3: alg.zmod(3), 4: alg.power(alg.zmod(2), 2)}
    if elementary.get(n) is not None:
        out.append(elementary[n])
    return out


@_timed(6, "semigroup censuses", "minimal semigroups are C_n, I_n^{1+}, I_n^{1-}, (Z_p)^m", 1800)
def check_semigroups():
    parts, ok = [], True
    for n in (2, 3, 4):
        r = _semigroups(n)
        got = _canon_set(r.tables)
        want = _canon_set(_semigroup_expected(n))
        z4_absent = n != 4 or canonical_form(alg.zmod(4)).table not in got
        ok &= got == want and z4_absent
        parts.append(f"n={n}: {len(got)} classes of {r.counts['semigroups']} semigroups")
    return "{C_n, ArgLeftIso(1), ArgRightIso(1)} plus (Z_p)^m; Z4 absent", "; ".join(parts), ok, []


def _unary_expected(n: int) -> set:
    const = {tuple([v] * n) for v in range(n)}
    return const | set(isocyclic_permutations(n))


@_timed(7, "mono-unary theorem", "minimal mono-unary algebras are constant or isocyclic", 120)
def check_monounary():
    parts, ok = [], True
    for n in range(2, 6):
        _, minimal = minimal_maps(n)
        labeled = {tuple(int(v) for v in row) for row in minimal}
        exact = labeled == _unary_expected(n)
        r = _monounary(n)
        types = [s.cycle_type.lengths for s in r.survivors if s.cycle_type is not None]
        want_types = {cycle_type(p).lengths for p in isocyclic_permutations(n)}
        keyed = len(types) == len(set(types)) and set(types) == want_types
        consts = sum(s.structure == "Constant" for s in r.survivors)
        ok &= exact and keyed and consts == 1
        parts.append(f"n={n}: {len(labeled)} maps, types {sorted(types)}")
    return "constant maps and isocyclic permutations, one class per cycle type", "; ".join(parts), ok, []


@_timed(8, "order-4 Latin census", "order-4 list C4, I4^{1-}, I4^{3-}, I4^{1+}, I4^{3+}, (Z2)^2", 60)
def check_latin4():
    r = _latin(4)
    klein = alg.power(alg.zmod(2), 2)
    extra = [G for G in r.tables if are_isomorphic(G, klein) is None]
    findings = []
    for G in extra:
        coeffs = [(a, b) for a in range(1, 4) for b in range(1, 4)
                  if are_isomorphic(gf4_affine(a, b), G) is not None]
        findings.append(
            f"extra minimal quasigroup {' / '.join(' '.join(map(str, row)) for row in G.rows())}"
            f" is isomorphic to x*y = ax + by over GF(4) for (a, b) in {coeffs};"
            f" bounded check at size<=5: {is_d_minimal(G, Bounds(5, 3))}")
    census = _groupoids(4, "pruned")
    others = {s.structure for s in census.survivors if s.structure != "Quasigroup"}
    got = (f"{r.counts['tables_examined']} squares checked, {len(r.survivors)} survivor classes,"
           f" {len(extra)} not isomorphic to (Z2)^2; non-quasigroup classes {sorted(others)}")
    ok = r.counts["tables_examined"] == 576 and not extra
    return "576 squares, every survivor isomorphic to (Z2)^2", got, ok, findings


def _random_table(rng: random.Random, n: int) -> Algebra:
    return Algebra(Signature.BINARY, n, tuple(rng.randrange(n) for _ in range(n * n)))


@_timed(9, "product, power and anti-isomorphism laws", "Pr over products, powers and opposite groupoids", 120)
def check_laws(instances: int = 200, seed: int = 2026):
    rng = random.Random(seed)
    eqs = enumerate_equations(Signature.BINARY, 3, 3)
    bad = []
    for i in range(instances):
        A = _random_table(rng, rng.choice((2, 3)))
        B = _random_table(rng, rng.choice((2, 3)))
        e = rng.choice(eqs)
        pa, pb = probability(e, A), probability(e, B)
        if probability(e, alg.direct_product(A, B)) != pa * pb:
            bad.append(f"product law #{i}")
        for m in (2, 3):
            if probability(e, alg.power(A, m)) != pa ** m:
                bad.append(f"power law m={m} #{i}")
        G = _random_table(rng, rng.choice((2, 3, 4)))
        if spectrum(G).values != spectrum(G.transpose()).values:
            bad.append(f"transpose spectrum #{i}")
    return f"{instances} instances, no violations", \
        f"{instances} instances, {len(bad)} violations", not bad, bad[:10]


def _survivors_4_to_8():
    out = []
    for n in (2,):
        out += _groupoids(n, "raw").tables
    out += _groupoids(3, "raw").tables
    for n in (2, 3, 4):
        out += _semigroups(n).tables
    for n in range(2, 6):
        out += _monounary(n).tables
    out += _latin(4).tables
    return list(dict.fromkeys(out))


def dichotomy_violations(G: Algebra, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[int, list[str]]:
    """Count (e, i, j) with identically-satisfied specialization; list those landing in Neither."""
    if not G.is_binary:
        bounds = unary_bounds(G.order)
    checked, bad = 0, []
    for e in enumerate_equations(G.signature, bounds.max_size, bounds.max_vars):
        k = e.num_vars
        for i, j in itertools.combinations(range(k), 2):
            if probability(specialize(e, i, j), G) != 1:
                continue
            checked += 1
            if check_dichotomy(G, e, i, j) is DichotomyBranch.NEITHER:
                bad.append(f"{render(e)} with x{i}=x{j} in\n{G}")
    return checked, bad


@_timed(10, "dichotomy law", "identity or quasi-identity for identically satisfied specializations", 300)
def check_dichotomy_law():
    total, bad = 0, []
    survivors = _survivors_4_to_8()
    for G in survivors:
        c, b = dichotomy_violations(G)
        total += c
        bad += b
    return "no Neither verdicts", \
        f"{len(survivors)} survivors, {total} (equation, pair) cases, {len(bad)} Neither", not bad, bad[:10]


@_timed(11, "weak-associativity bounds", "loops, alternative and ditercitive minimal quasigroups are groups", 600)
def check_weak_assoc():
    verdicts = []
    for n in range(1, 6):
        r = _latin(n)
        verdicts += weak_assoc_suite(r)
    failed = [f"{v.check}: {v.subject} ({v.detail})" for v in verdicts if not v.passed]
    bounds = [f"{v.subject}: {v.detail}" for v in verdicts if "bound" in v.check]
    return "all verdicts hold", f"{len(verdicts)} verdicts, {len(failed)} violations", \
        not failed, failed[:10] + bounds


@_timed(12, "closed-form conformance", "spectra of the semilattice and the Sheffer stroke", 60)
def check_closed_forms():
    meet = spectrum(alg.and2(), Bounds(4, 3)).values
    meet_ok = all(semilattice_membership(v) is not None for v in meet)
    nand = spectrum(alg.sheffer(), Bounds(3, 3)).values
    nand_ok = all(dyadic_membership(v) for v in nand) and Fraction(0) in nand
    got = f"and2: {_fracs(meet)}; sheffer: {_fracs(nand)}"
    return "and2 values of the form 1-(2^p+2^q-2)/2^(p+q+r); sheffer values dyadic incl. 0", \
        got, meet_ok and nand_ok, []


@_timed(13, "raw order-4 groupoid scan", "order-4 census by exhaustive search", 1800)
def check_raw4():
    raw = _groupoids(4, "raw")
    pruned = _groupoids(4, "pruned")
    c = raw.counts
    got = (f"{c['tables_examined']} tables, {c['pruned_by_row_column']} pruned by row/column,"
           f" {c['full_checks']} full checks, {len(raw.survivors)} classes; raw == pruned: "
           f"{raw.tables == pruned.tables}")
    return "raw and pruned survivor sets agree", got, raw.tables == pruned.tables, []


QUICK_CHECKS = [check_dihedral, check_prime_cyclic, check_prime_power, check_order2, check_order3,
                check_semigroups, check_monounary, check_latin4, check_laws, check_dichotomy_law,
                check_weak_assoc, check_closed_forms]
FULL_CHECKS = QUICK_CHECKS + [check_raw4]


@dataclass
class SuiteReport:
    level: str
    results: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_human(self, timing: bool = True) -> str:
        lines = [f"verification suite ({self.level})"]
        for r in self.results:
            lines.append(r.line(timing))
            lines.extend(f"      finding: {f}" for f in r.findings)
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"

    def to_json(self, timing: bool = False) -> str:
        return json.dumps({"schema": SUITE_SCHEMA, "level": self.level, "passed": self.passed,
                           "checks": [r.as_dict(timing) for r in self.results]},
                          sort_keys=True, indent=1) + "\n"


def verify_paper_suite(level: str = "quick") -> SuiteReport:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    checks = QUICK_CHECKS if level == "quick" else FULL_CHECKS
    return SuiteReport(level, [c() for c in checks])


__all__ = ["CheckResult", "SuiteReport", "verify_paper_suite", "QUICK_CHECKS", "FULL_CHECKS",
           "ORDER3_TABLES", "dichotomy_violations"] + [c.__name__ for c in FULL_CHECKS]
